#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "qbs/statevector.hpp"

namespace qbs {

using QubitId = std::uint32_t;

/// Owns every quantum register of one simulation world. Qubits are addressed
/// by stable ids; entangled qubits share an underlying StateVector, and groups
/// merge lazily when a joint operation spans two of them. Measurement without
/// `keep` consumes the qubit, so a qubit id can never be read out twice --
/// the structural stand-in for no-cloning.
class Arena {
 public:
  std::vector<QubitId> add(const StateVector& state);
  QubitId add_single(const StateVector& state);

  bool alive(QubitId id) const { return where_.contains(id); }

  void apply(QubitId id, const Mat2& gate);
  void apply_pauli(QubitId id, PauliOp op);
  void apply_t(QubitId id);
  void apply_t_dag(QubitId id);

  int measure_computational(QubitId id, Rng& rng, bool keep = false);
  int measure_in_basis(QubitId id, const EncodingBasis& basis, Rng& rng,
                       bool keep = false);
  BellOutcome bell_measure(QubitId q1, QubitId q2, Rng& rng, bool keep = false);

  /// Forced-branch Bell projection (keep semantics); returns branch
  /// probability, or nullopt if the branch is impossible.
  std::optional<double> project_bell(QubitId q1, QubitId q2, BellOutcome outcome);

  /// State of the entanglement group containing `id`; test/inspection only.
  const StateVector& group_state(QubitId id) const;
  /// Position of `id` inside its group's tensor order.
  int position_in_group(QubitId id) const;

  double total_norm_error() const;

 private:
  struct Group {
    StateVector state;
    std::vector<QubitId> qubits;
  };

  Group& group_of(QubitId id);
  int locate(QubitId id) const;
  /// Ensure q1 and q2 live in the same group; returns that group's index.
  std::size_t merge_groups(QubitId q1, QubitId q2);
  void remove_qubit(std::size_t group_idx, QubitId id, StateVector post);

  std::vector<Group> groups_;
  std::unordered_map<QubitId, std::size_t> where_;
  QubitId next_id_ = 0;
};

}  // namespace qbs
