#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <vector>

#include "qbs/crypto.hpp"
#include "qbs/keyring.hpp"
#include "qbs/netsim.hpp"

namespace qbs::proto {

inline EncodingBasis default_basis() {
  return EncodingBasis::from_b(std::cos(std::acos(-1.0) / 8.0));
}

struct ImpConfig {
  int n = 8;
  int t = 3;
  int l = 16;  // decoy pairs per channel setup
  EncodingBasis basis = default_basis();
  std::optional<Bitstring> message;
  std::optional<Bitstring> blind;  // r override (n bits)
};

struct ImpHooks {
  /// Signatory holds the decrypted blinded-message qubits, pre measurement.
  std::function<void(net::World&, int signatory, const std::vector<QubitId>& m)>
      signer_pre_sign;

  /// Tampering of Charlie's decoded signature string (6n bits), the model of
  /// an in-flight bit flip that survived decryption.
  std::function<void(int signatory, Bitstring& s_prime)> charlie_post_decode;

  /// Substitution of what Charlie announces on the public board.
  std::function<Bitstring(int signatory, const Bitstring& honest)> charlie_announce;
};

/// Recomputes signature digests for Bob, who does not hold the
/// Charlie/signatory shared keys himself.
class VerificationOracle {
 public:
  VerificationOracle(const ImprovedKeyRing* keys, int n) : keys_(keys), n_(n) {}

  /// Expected digest for an announced masked Bell string and reveal R.
  Bitstring expected_digest(int signatory, const Bitstring& masked_beta,
                            const Bitstring& reveal) const;

 private:
  const ImprovedKeyRing* keys_;
  int n_;
};

struct ImpSignatoryResult {
  bool channel_ok = false;   // decoy check passed
  Bitstring beta;            // U_i's Bell outcomes (2n)
  Bitstring masked_beta;     // beta XOR first 2n key bits
  Bitstring digest;          // 4n commitment over masked_beta || R_i
  Bitstring reveal;          // R_i
  Bitstring s_prime;         // Charlie's decoded signature (post tamper hook)
  Bitstring m_star;          // as decoded by Bob
  bool message_ok = false;
  bool digest_ok = false;
  bool accepted = false;
};

struct ImpRunResult {
  Bitstring message;
  Bitstring blind;
  Bitstring bob_message;
  std::vector<ImpSignatoryResult> individual;
  bool combined_message_ok = false;
  bool combined_set_ok = false;
  bool combined_accepted = false;
  /// Every hash-derived one-time pad, in derivation order.
  std::vector<Bitstring> derived_pads;
  std::string transcript_digest;
};

/// The hardened scheme: blinded message, hash-derived pads over the improved
/// QOTP, decoy-checked entanglement setup, committed signatures and
/// public-board reveals.
class ImprovedProtocol {
 public:
  ImprovedProtocol(net::World& world, const ImpConfig& config);
  ImprovedProtocol(net::World& world, const ImpConfig& config, ImprovedKeyRing keys);

  const ImprovedKeyRing& keys() const { return keys_; }
  ImpRunResult run(const ImpHooks& hooks = {});

 private:
  net::World& world_;
  ImpConfig cfg_;
  ImprovedKeyRing keys_;
};

}  // namespace qbs::proto
