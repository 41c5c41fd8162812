#include "qbs/keyring.hpp"

#include <stdexcept>

namespace qbs {

OriginalKeyRing OriginalKeyRing::generate(int n, int t, int sn_bits, Rng& rng) {
  if (n < 1 || t < 1) throw std::invalid_argument("keyring: n, t must be >= 1");
  OriginalKeyRing keys;
  keys.k_ab = rng.bits(n);
  keys.k_bc = rng.bits(n);
  keys.k_ac = rng.bits(2 * n + 2 * sn_bits);
  for (int i = 0; i < t; ++i) {
    keys.k_au.push_back(rng.bits(4 * n + 2 * sn_bits));
    keys.k_cu.push_back(rng.bits(2 * n));
  }
  return keys;
}

ImprovedKeyRing ImprovedKeyRing::generate(int n, int t, Rng& rng) {
  if (n < 1 || t < 1) throw std::invalid_argument("keyring: n, t must be >= 1");
  ImprovedKeyRing keys;
  keys.k_ab = rng.bits(4 * n);
  keys.k_ac = rng.bits(4 * n);
  keys.k_bc = rng.bits(4 * n);
  for (int i = 0; i < t; ++i) {
    keys.k_au.push_back(rng.bits(4 * n));
    keys.k_cu.push_back(rng.bits(4 * n));
  }
  return keys;
}

}  // namespace qbs
