#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "qbs/bitstring.hpp"
#include "qbs/rng.hpp"

namespace qbs {

using Complex = std::complex<double>;

inline constexpr double kNormTolerance = 1e-9;
inline constexpr double kBasisTolerance = 1e-12;

enum class PauliOp : std::uint8_t { I, X, Y, Z };

const char* pauli_name(PauliOp op);

/// 2x2 complex matrix, row-major.
struct Mat2 {
  Complex a, b, c, d;

  Mat2 operator*(const Mat2& rhs) const;
  Mat2 adjoint() const;
  Mat2 scaled(Complex factor) const;
};

Mat2 pauli_matrix(PauliOp op);

/// T = (i/sqrt(3)) (X - Y + Z). Self-inverse up to sign: T^2 = -I.
Mat2 t_matrix();

/// Product of two Paulis as (phase, pauli), e.g. X*Z = -i Y.
std::pair<Complex, PauliOp> pauli_mul(PauliOp lhs, PauliOp rhs);

/// 2-bit Bell measurement outcome kl.
struct BellOutcome {
  std::uint8_t k = 0;
  std::uint8_t l = 0;

  bool operator==(const BellOutcome&) const = default;
  std::uint8_t code() const { return static_cast<std::uint8_t>(k * 2 + l); }
  static BellOutcome from_code(std::uint8_t c) {
    return BellOutcome{static_cast<std::uint8_t>((c >> 1) & 1),
                       static_cast<std::uint8_t>(c & 1)};
  }
};

/// Pauli the receiver applies to recover the teleported state:
/// 00 -> I, 01 -> X, 10 -> Z, 11 -> Y.
PauliOp teleport_correction(BellOutcome outcome);

/// Single-qubit encoding basis {b|0>+c|1>, c|0>-b|1>}. The balanced case
/// b = c = 1/sqrt(2) is the X basis of the original scheme; blinding in the
/// improved scheme additionally needs b != c with both nonzero.
struct EncodingBasis {
  double b = 0.0;
  double c = 0.0;

  static EncodingBasis from_b(double b_value);
  static EncodingBasis x_basis();

  bool normalized() const;
  /// b != c and both nonzero, on top of normalization.
  bool blinding() const;
};

/// Complex amplitude vector over a small number of qubits. Qubit 0 is the
/// leftmost tensor factor. Measurements return the collapsed state with the
/// measured qubit(s) factored out, so register size shrinks as the protocol
/// consumes qubits.
class StateVector {
 public:
  StateVector() : num_qubits_(0), amps_{Complex{1.0, 0.0}} {}
  StateVector(int num_qubits, std::vector<Complex> amplitudes);

  static StateVector single(Complex amp0, Complex amp1);
  /// |bits> in the computational basis.
  static StateVector computational(const Bitstring& bits);

  int num_qubits() const { return num_qubits_; }
  std::size_t dim() const { return amps_.size(); }
  const std::vector<Complex>& amplitudes() const { return amps_; }
  Complex amplitude(std::size_t index) const { return amps_.at(index); }

  double norm_sq() const;
  Complex inner(const StateVector& other) const;

  StateVector tensor(const StateVector& other) const;

  void apply(int qubit, const Mat2& gate);
  void apply_pauli(int qubit, PauliOp op);
  void apply_t(int qubit);
  void apply_t_dag(int qubit);

  /// Born-rule measurement in {|0>,|1>}; measured qubit removed unless
  /// keep is set, in which case the register keeps the collapsed qubit.
  std::pair<int, StateVector> measure_computational(int qubit, Rng& rng,
                                                    bool keep = false) const;

  /// Measurement in an EncodingBasis; returns 1 for the b|0>+c|1> branch.
  std::pair<int, StateVector> measure_in_basis(int qubit,
                                               const EncodingBasis& basis,
                                               Rng& rng,
                                               bool keep = false) const;

  /// Joint Bell-basis measurement of (q1, q2).
  std::pair<BellOutcome, StateVector> bell_measure(int q1, int q2, Rng& rng,
                                                   bool keep = false) const;

  /// Forced-branch projections. Return (branch probability, post-state), or
  /// nullopt when the branch has zero probability.
  std::optional<std::pair<double, StateVector>> project_computational(
      int qubit, int bit, bool keep = false) const;
  std::optional<std::pair<double, StateVector>> project_basis(
      int qubit, const EncodingBasis& basis, int bit, bool keep = false) const;
  std::optional<std::pair<double, StateVector>> project_bell(
      int q1, int q2, BellOutcome outcome, bool keep = false) const;

 private:
  void check_qubit(int qubit) const;

  int num_qubits_;
  std::vector<Complex> amps_;
};

/// (|00>+|11>)/sqrt(2), the EPR resource of both schemes.
StateVector prepare_epr();

/// One of the four Bell states, |beta_kl>.
StateVector bell_state(BellOutcome outcome);

/// (|0>+|1>)/sqrt(2) for bit 1, (|0>-|1>)/sqrt(2) for bit 0.
StateVector prepare_message_qubit_original(int bit);

/// b|0>+c|1> for bit 1, c|0>-b|1> for bit 0.
StateVector prepare_message_qubit_improved(int bit, const EncodingBasis& basis);

/// True iff |<a|b>| >= 1 - tol; states are assumed normalized.
bool states_equal_up_to_phase(const StateVector& a, const StateVector& b,
                              double tol = kNormTolerance);

}  // namespace qbs
