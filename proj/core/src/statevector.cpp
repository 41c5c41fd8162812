#include "qbs/statevector.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace qbs {
namespace {

constexpr double kZeroBranch = 1e-15;
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

// Amplitudes of |beta_kl> over |00>,|01>,|10>,|11>.
std::array<double, 4> bell_amps(BellOutcome o) {
  const double s = kInvSqrt2;
  const double sign = o.k ? -s : s;
  if (o.l == 0) return {s, 0.0, 0.0, o.k ? -s : s};
  return {0.0, s, sign, 0.0};
}

// Strip the bit at position `pos` (counting from the most significant qubit
// bit) out of index i.
std::size_t drop_bit(std::size_t i, int pos, int n) {
  const int shift = n - 1 - pos;
  const std::size_t low = i & ((std::size_t{1} << shift) - 1);
  const std::size_t high = i >> (shift + 1);
  return (high << shift) | low;
}

}  // namespace

const char* pauli_name(PauliOp op) {
  switch (op) {
    case PauliOp::I: return "I";
    case PauliOp::X: return "X";
    case PauliOp::Y: return "Y";
    case PauliOp::Z: return "Z";
  }
  return "?";
}

Mat2 Mat2::operator*(const Mat2& r) const {
  return Mat2{a * r.a + b * r.c, a * r.b + b * r.d,
              c * r.a + d * r.c, c * r.b + d * r.d};
}

Mat2 Mat2::adjoint() const {
  return Mat2{std::conj(a), std::conj(c), std::conj(b), std::conj(d)};
}

Mat2 Mat2::scaled(Complex factor) const {
  return Mat2{a * factor, b * factor, c * factor, d * factor};
}

Mat2 pauli_matrix(PauliOp op) {
  const Complex i{0.0, 1.0};
  switch (op) {
    case PauliOp::I: return Mat2{1, 0, 0, 1};
    case PauliOp::X: return Mat2{0, 1, 1, 0};
    case PauliOp::Y: return Mat2{0, -i, i, 0};
    case PauliOp::Z: return Mat2{1, 0, 0, -1};
  }
  throw std::invalid_argument("pauli_matrix: bad op");
}

Mat2 t_matrix() {
  const Complex f{0.0, 1.0 / std::sqrt(3.0)};
  // (i/sqrt(3)) * [[1, 1+i], [1-i, -1]]
  return Mat2{f, f * Complex{1.0, 1.0}, f * Complex{1.0, -1.0}, -f};
}

std::pair<Complex, PauliOp> pauli_mul(PauliOp lhs, PauliOp rhs) {
  if (lhs == PauliOp::I) return {Complex{1.0, 0.0}, rhs};
  if (rhs == PauliOp::I) return {Complex{1.0, 0.0}, lhs};
  if (lhs == rhs) return {Complex{1.0, 0.0}, PauliOp::I};
  const Complex i{0.0, 1.0};
  auto cyclic = [&](PauliOp a, PauliOp b, PauliOp c) {
    return std::pair<Complex, PauliOp>{i, c};
  };
  // XY = iZ, YZ = iX, ZX = iY; reversed order picks up a minus sign.
  if (lhs == PauliOp::X && rhs == PauliOp::Y) return cyclic(lhs, rhs, PauliOp::Z);
  if (lhs == PauliOp::Y && rhs == PauliOp::Z) return cyclic(lhs, rhs, PauliOp::X);
  if (lhs == PauliOp::Z && rhs == PauliOp::X) return cyclic(lhs, rhs, PauliOp::Y);
  auto [phase, op] = pauli_mul(rhs, lhs);
  return {-phase, op};
}

PauliOp teleport_correction(BellOutcome outcome) {
  switch (outcome.code()) {
    case 0: return PauliOp::I;
    case 1: return PauliOp::X;
    case 2: return PauliOp::Z;
    default: return PauliOp::Y;
  }
}

EncodingBasis EncodingBasis::from_b(double b_value) {
  if (!(b_value > 0.0 && b_value < 1.0)) {
    throw std::invalid_argument("EncodingBasis: b must be in (0, 1)");
  }
  return EncodingBasis{b_value, std::sqrt(1.0 - b_value * b_value)};
}

EncodingBasis EncodingBasis::x_basis() { return EncodingBasis{kInvSqrt2, kInvSqrt2}; }

bool EncodingBasis::normalized() const {
  return std::abs(b * b + c * c - 1.0) <= kBasisTolerance;
}

bool EncodingBasis::blinding() const {
  return normalized() && b != 0.0 && c != 0.0 && b != c;
}

StateVector::StateVector(int num_qubits, std::vector<Complex> amplitudes)
    : num_qubits_(num_qubits), amps_(std::move(amplitudes)) {
  if (num_qubits_ < 0 || amps_.size() != (std::size_t{1} << num_qubits_)) {
    throw std::invalid_argument("StateVector: amplitude count must be 2^n");
  }
}

StateVector StateVector::single(Complex amp0, Complex amp1) {
  return StateVector(1, {amp0, amp1});
}

StateVector StateVector::computational(const Bitstring& bits) {
  const int n = static_cast<int>(bits.size());
  std::vector<Complex> amps(std::size_t{1} << n, Complex{0.0, 0.0});
  std::size_t idx = 0;
  for (std::size_t i = 0; i < bits.size(); ++i) idx = (idx << 1) | bits.bit(i);
  amps[idx] = Complex{1.0, 0.0};
  return StateVector(n, std::move(amps));
}

double StateVector::norm_sq() const {
  double s = 0.0;
  for (const auto& a : amps_) s += std::norm(a);
  return s;
}

Complex StateVector::inner(const StateVector& other) const {
  if (num_qubits_ != other.num_qubits_) {
    throw std::invalid_argument("StateVector::inner: dimension mismatch");
  }
  Complex s{0.0, 0.0};
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    s += std::conj(amps_[i]) * other.amps_[i];
  }
  return s;
}

StateVector StateVector::tensor(const StateVector& other) const {
  std::vector<Complex> out(amps_.size() * other.amps_.size());
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    for (std::size_t j = 0; j < other.amps_.size(); ++j) {
      out[(i << other.num_qubits_) | j] = amps_[i] * other.amps_[j];
    }
  }
  return StateVector(num_qubits_ + other.num_qubits_, std::move(out));
}

void StateVector::check_qubit(int qubit) const {
  if (qubit < 0 || qubit >= num_qubits_) {
    throw std::out_of_range("StateVector: qubit index out of range");
  }
}

void StateVector::apply(int qubit, const Mat2& gate) {
  check_qubit(qubit);
  const std::size_t mask = std::size_t{1} << (num_qubits_ - 1 - qubit);
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    if (i & mask) continue;
    const Complex a0 = amps_[i];
    const Complex a1 = amps_[i | mask];
    amps_[i] = gate.a * a0 + gate.b * a1;
    amps_[i | mask] = gate.c * a0 + gate.d * a1;
  }
}

void StateVector::apply_pauli(int qubit, PauliOp op) {
  if (op == PauliOp::I) return;
  apply(qubit, pauli_matrix(op));
}

void StateVector::apply_t(int qubit) { apply(qubit, t_matrix()); }

void StateVector::apply_t_dag(int qubit) { apply(qubit, t_matrix().adjoint()); }

std::optional<std::pair<double, StateVector>> StateVector::project_computational(
    int qubit, int bit, bool keep) const {
  check_qubit(qubit);
  if (bit != 0 && bit != 1) throw std::invalid_argument("bit must be 0 or 1");
  const std::size_t mask = std::size_t{1} << (num_qubits_ - 1 - qubit);
  std::vector<Complex> reduced(amps_.size() / 2);
  double prob = 0.0;
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    if (((i & mask) != 0) != (bit == 1)) continue;
    const std::size_t r = drop_bit(i, qubit, num_qubits_);
    reduced[r] = amps_[i];
    prob += std::norm(amps_[i]);
  }
  if (prob < kZeroBranch) return std::nullopt;
  const double scale = 1.0 / std::sqrt(prob);
  for (auto& a : reduced) a *= scale;
  StateVector post(num_qubits_ - 1, std::move(reduced));
  if (keep) {
    // Reinsert the collapsed qubit at its original position.
    std::vector<Complex> amps(amps_.size(), Complex{0.0, 0.0});
    const int shift = num_qubits_ - 1 - qubit;
    for (std::size_t r = 0; r < post.dim(); ++r) {
      const std::size_t low = r & ((std::size_t{1} << shift) - 1);
      const std::size_t high = r >> shift;
      const std::size_t i =
          (high << (shift + 1)) | (static_cast<std::size_t>(bit) << shift) | low;
      amps[i] = post.amplitude(r);
    }
    return std::make_pair(prob, StateVector(num_qubits_, std::move(amps)));
  }
  return std::make_pair(prob, std::move(post));
}

std::optional<std::pair<double, StateVector>> StateVector::project_basis(
    int qubit, const EncodingBasis& basis, int bit, bool keep) const {
  check_qubit(qubit);
  if (!basis.normalized()) throw std::invalid_argument("basis not normalized");
  if (bit != 0 && bit != 1) throw std::invalid_argument("bit must be 0 or 1");
  // Branch 1 projects onto b|0>+c|1>, branch 0 onto c|0>-b|1>.
  const double v0 = bit ? basis.b : basis.c;
  const double v1 = bit ? basis.c : -basis.b;
  const std::size_t mask = std::size_t{1} << (num_qubits_ - 1 - qubit);
  std::vector<Complex> reduced(amps_.size() / 2, Complex{0.0, 0.0});
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    if (i & mask) continue;
    const std::size_t r = drop_bit(i, qubit, num_qubits_);
    reduced[r] = v0 * amps_[i] + v1 * amps_[i | mask];
  }
  double prob = 0.0;
  for (const auto& a : reduced) prob += std::norm(a);
  if (prob < kZeroBranch) return std::nullopt;
  const double scale = 1.0 / std::sqrt(prob);
  for (auto& a : reduced) a *= scale;
  if (keep) {
    std::vector<Complex> amps(amps_.size(), Complex{0.0, 0.0});
    for (std::size_t i = 0; i < amps_.size(); ++i) {
      if (i & mask) continue;
      const std::size_t r = drop_bit(i, qubit, num_qubits_);
      amps[i] = v0 * reduced[r];
      amps[i | mask] = v1 * reduced[r];
    }
    return std::make_pair(prob, StateVector(num_qubits_, std::move(amps)));
  }
  return std::make_pair(prob, StateVector(num_qubits_ - 1, std::move(reduced)));
}

std::optional<std::pair<double, StateVector>> StateVector::project_bell(
    int q1, int q2, BellOutcome outcome, bool keep) const {
  check_qubit(q1);
  check_qubit(q2);
  if (q1 == q2) throw std::invalid_argument("project_bell: qubits must differ");
  const auto bv = bell_amps(outcome);
  const std::size_t m1 = std::size_t{1} << (num_qubits_ - 1 - q1);
  const std::size_t m2 = std::size_t{1} << (num_qubits_ - 1 - q2);
  std::vector<Complex> reduced(amps_.size() / 4, Complex{0.0, 0.0});
  const int drop_first = std::min(q1, q2);
  const int drop_second = std::max(q1, q2);
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    if ((i & m1) || (i & m2)) continue;
    const std::size_t r =
        drop_bit(drop_bit(i, drop_second, num_qubits_), drop_first, num_qubits_ - 1);
    for (int x = 0; x < 2; ++x) {
      for (int y = 0; y < 2; ++y) {
        const std::size_t idx = i | (x ? m1 : 0) | (y ? m2 : 0);
        reduced[r] += bv[x * 2 + y] * amps_[idx];
      }
    }
  }
  double prob = 0.0;
  for (const auto& a : reduced) prob += std::norm(a);
  if (prob < kZeroBranch) return std::nullopt;
  const double scale = 1.0 / std::sqrt(prob);
  for (auto& a : reduced) a *= scale;
  if (keep) {
    std::vector<Complex> amps(amps_.size(), Complex{0.0, 0.0});
    for (std::size_t i = 0; i < amps_.size(); ++i) {
      if ((i & m1) || (i & m2)) continue;
      const std::size_t r =
          drop_bit(drop_bit(i, drop_second, num_qubits_), drop_first, num_qubits_ - 1);
      for (int x = 0; x < 2; ++x) {
        for (int y = 0; y < 2; ++y) {
          const std::size_t idx = i | (x ? m1 : 0) | (y ? m2 : 0);
          amps[idx] = bv[x * 2 + y] * reduced[r];
        }
      }
    }
    return std::make_pair(prob, StateVector(num_qubits_, std::move(amps)));
  }
  return std::make_pair(prob, StateVector(num_qubits_ - 2, std::move(reduced)));
}

std::pair<int, StateVector> StateVector::measure_computational(int qubit, Rng& rng,
                                                               bool keep) const {
  auto p0 = project_computational(qubit, 0, keep);
  auto p1 = project_computational(qubit, 1, keep);
  const double prob1 = p1 ? p1->first : 0.0;
  if (!p0) return {1, std::move(p1->second)};
  if (!p1) return {0, std::move(p0->second)};
  if (rng.uniform() < prob1) return {1, std::move(p1->second)};
  return {0, std::move(p0->second)};
}

std::pair<int, StateVector> StateVector::measure_in_basis(int qubit,
                                                          const EncodingBasis& basis,
                                                          Rng& rng, bool keep) const {
  auto p0 = project_basis(qubit, basis, 0, keep);
  auto p1 = project_basis(qubit, basis, 1, keep);
  const double prob1 = p1 ? p1->first : 0.0;
  if (!p0) return {1, std::move(p1->second)};
  if (!p1) return {0, std::move(p0->second)};
  if (rng.uniform() < prob1) return {1, std::move(p1->second)};
  return {0, std::move(p0->second)};
}

std::pair<BellOutcome, StateVector> StateVector::bell_measure(int q1, int q2,
                                                              Rng& rng,
                                                              bool keep) const {
  std::array<std::optional<std::pair<double, StateVector>>, 4> branches;
  double total = 0.0;
  for (std::uint8_t code = 0; code < 4; ++code) {
    branches[code] = project_bell(q1, q2, BellOutcome::from_code(code), keep);
    if (branches[code]) total += branches[code]->first;
  }
  double u = rng.uniform() * total;
  int last = -1;
  for (std::uint8_t code = 0; code < 4; ++code) {
    if (!branches[code]) continue;
    last = code;
    u -= branches[code]->first;
    if (u < 0.0) break;
  }
  const auto outcome = BellOutcome::from_code(static_cast<std::uint8_t>(last));
  return {outcome, std::move(branches[last]->second)};
}

StateVector prepare_epr() { return bell_state(BellOutcome{0, 0}); }

StateVector bell_state(BellOutcome outcome) {
  const auto bv = bell_amps(outcome);
  return StateVector(2, {Complex{bv[0], 0.0}, Complex{bv[1], 0.0},
                         Complex{bv[2], 0.0}, Complex{bv[3], 0.0}});
}

StateVector prepare_message_qubit_original(int bit) {
  return prepare_message_qubit_improved(bit, EncodingBasis::x_basis());
}

StateVector prepare_message_qubit_improved(int bit, const EncodingBasis& basis) {
  if (bit != 0 && bit != 1) throw std::invalid_argument("bit must be 0 or 1");
  if (!basis.normalized()) throw std::invalid_argument("basis not normalized");
  if (bit == 1) return StateVector::single(Complex{basis.b, 0.0}, Complex{basis.c, 0.0});
  return StateVector::single(Complex{basis.c, 0.0}, Complex{-basis.b, 0.0});
}

bool states_equal_up_to_phase(const StateVector& a, const StateVector& b,
                              double tol) {
  return std::abs(a.inner(b)) >= 1.0 - tol;
}

}  // namespace qbs
