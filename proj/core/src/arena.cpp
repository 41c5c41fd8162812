#include "qbs/arena.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qbs {

std::vector<QubitId> Arena::add(const StateVector& state) {
  std::vector<QubitId> ids(state.num_qubits());
  for (auto& id : ids) id = next_id_++;
  const std::size_t g = groups_.size();
  groups_.push_back(Group{state, ids});
  for (auto id : ids) where_[id] = g;
  return ids;
}

QubitId Arena::add_single(const StateVector& state) {
  if (state.num_qubits() != 1) {
    throw std::invalid_argument("Arena::add_single: expected a 1-qubit state");
  }
  return add(state)[0];
}

Arena::Group& Arena::group_of(QubitId id) {
  auto it = where_.find(id);
  if (it == where_.end()) {
    throw std::invalid_argument("Arena: qubit id is not alive");
  }
  return groups_[it->second];
}

int Arena::locate(QubitId id) const {
  auto it = where_.find(id);
  if (it == where_.end()) {
    throw std::invalid_argument("Arena: qubit id is not alive");
  }
  const auto& qs = groups_[it->second].qubits;
  const auto pos = std::find(qs.begin(), qs.end(), id);
  return static_cast<int>(pos - qs.begin());
}

const StateVector& Arena::group_state(QubitId id) const {
  auto it = where_.find(id);
  if (it == where_.end()) {
    throw std::invalid_argument("Arena: qubit id is not alive");
  }
  return groups_[it->second].state;
}

int Arena::position_in_group(QubitId id) const { return locate(id); }

void Arena::apply(QubitId id, const Mat2& gate) {
  group_of(id).state.apply(locate(id), gate);
}

void Arena::apply_pauli(QubitId id, PauliOp op) {
  if (op == PauliOp::I) return;
  group_of(id).state.apply_pauli(locate(id), op);
}

void Arena::apply_t(QubitId id) { group_of(id).state.apply_t(locate(id)); }

void Arena::apply_t_dag(QubitId id) { group_of(id).state.apply_t_dag(locate(id)); }

std::size_t Arena::merge_groups(QubitId q1, QubitId q2) {
  const std::size_t g1 = where_.at(q1);
  const std::size_t g2 = where_.at(q2);
  if (g1 == g2) return g1;
  Group& a = groups_[g1];
  Group& b = groups_[g2];
  a.state = a.state.tensor(b.state);
  a.qubits.insert(a.qubits.end(), b.qubits.begin(), b.qubits.end());
  for (auto id : b.qubits) where_[id] = g1;
  b.state = StateVector();
  b.qubits.clear();
  return g1;
}

void Arena::remove_qubit(std::size_t group_idx, QubitId id, StateVector post) {
  Group& g = groups_[group_idx];
  g.qubits.erase(std::find(g.qubits.begin(), g.qubits.end(), id));
  g.state = std::move(post);
  where_.erase(id);
}

int Arena::measure_computational(QubitId id, Rng& rng, bool keep) {
  const std::size_t g = where_.at(id);
  auto [bit, post] = groups_[g].state.measure_computational(locate(id), rng, keep);
  if (keep) {
    groups_[g].state = std::move(post);
  } else {
    remove_qubit(g, id, std::move(post));
  }
  return bit;
}

int Arena::measure_in_basis(QubitId id, const EncodingBasis& basis, Rng& rng,
                            bool keep) {
  const std::size_t g = where_.at(id);
  auto [bit, post] = groups_[g].state.measure_in_basis(locate(id), basis, rng, keep);
  if (keep) {
    groups_[g].state = std::move(post);
  } else {
    remove_qubit(g, id, std::move(post));
  }
  return bit;
}

BellOutcome Arena::bell_measure(QubitId q1, QubitId q2, Rng& rng, bool keep) {
  const std::size_t g = merge_groups(q1, q2);
  auto [outcome, post] =
      groups_[g].state.bell_measure(locate(q1), locate(q2), rng, keep);
  if (keep) {
    groups_[g].state = std::move(post);
  } else {
    // Remove the higher tensor position first so the other index stays valid.
    const int p1 = locate(q1);
    const int p2 = locate(q2);
    Group& grp = groups_[g];
    const QubitId first = p1 < p2 ? q1 : q2;
    const QubitId second = p1 < p2 ? q2 : q1;
    grp.qubits.erase(std::find(grp.qubits.begin(), grp.qubits.end(), second));
    grp.qubits.erase(std::find(grp.qubits.begin(), grp.qubits.end(), first));
    grp.state = std::move(post);
    where_.erase(q1);
    where_.erase(q2);
  }
  return outcome;
}

std::optional<double> Arena::project_bell(QubitId q1, QubitId q2,
                                          BellOutcome outcome) {
  const std::size_t g = merge_groups(q1, q2);
  auto res = groups_[g].state.project_bell(locate(q1), locate(q2), outcome,
                                           /*keep=*/true);
  if (!res) return std::nullopt;
  groups_[g].state = std::move(res->second);
  return res->first;
}

double Arena::total_norm_error() const {
  double worst = 0.0;
  for (const auto& g : groups_) {
    if (g.qubits.empty()) continue;
    worst = std::max(worst, std::abs(g.state.norm_sq() - 1.0));
  }
  return worst;
}

}  // namespace qbs
