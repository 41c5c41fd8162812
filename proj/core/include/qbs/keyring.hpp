#pragma once

#include <vector>

#include "qbs/bitstring.hpp"
#include "qbs/rng.hpp"

namespace qbs {

/// Pairwise shared keys of the original scheme. Distribution is modeled as
/// trusted shared randomness. Quantum pads use two key bits per qubit; the
/// pads covering serial-number qubits are appended segments since the serial
/// budget is otherwise unaccounted for.
struct OriginalKeyRing {
  Bitstring k_ab;               // n bits, classical pad for m
  Bitstring k_bc;               // n bits, classical pad for m'
  Bitstring k_ac;               // 2n + 2*sn_bits, quantum pad for C qubits + serial
  std::vector<Bitstring> k_au;  // 4n + 2*sn_bits each, quantum pad for (M,A) + serial
  std::vector<Bitstring> k_cu;  // 2n each, classical pad for S_i

  static OriginalKeyRing generate(int n, int t, int sn_bits, Rng& rng);
};

/// Improved scheme: every shared key is 4n bits and only ever used through
/// hash-derived one-time pads, so the ring is reusable across runs.
struct ImprovedKeyRing {
  Bitstring k_ab;
  Bitstring k_ac;
  Bitstring k_bc;
  std::vector<Bitstring> k_au;
  std::vector<Bitstring> k_cu;

  static ImprovedKeyRing generate(int n, int t, Rng& rng);
};

}  // namespace qbs
