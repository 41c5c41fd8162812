#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "qbs/crypto.hpp"
#include "qbs/keyring.hpp"
#include "qbs/netsim.hpp"

namespace qbs::proto {

/// Width of the serial number attached to each signatory's registers.
inline constexpr int kSerialBits = 16;

struct OrigConfig {
  int n = 8;
  int t = 3;
  std::optional<Bitstring> message;
};

/// Interposition points for the attack harness. All hooks default to no-ops;
/// an installed hook runs synchronously at the named protocol step.
struct OrigHooks {
  /// Alice holds the freshly prepared registers of one signatory: parallel
  /// id vectors for the message (M), her EPR half (A) and the collector half
  /// (C), one entry per message bit. Runs before encryption and sending.
  std::function<void(net::World&, int signatory, std::vector<QubitId>& m,
                     std::vector<QubitId>& a, std::vector<QubitId>& c)>
      alice_pre_send;

  /// The signatory holds the decrypted M qubits, before Bell measurement.
  std::function<void(net::World&, int signatory, const std::vector<QubitId>& m)>
      signer_pre_sign;

  /// Charlie finalizing the collected multi-signature.
  std::function<std::vector<Bitstring>(std::vector<Bitstring>)> charlie_finalize;
};

struct OrigSignatoryResult {
  Bitstring serial;
  Bitstring signer_signature;     // the 2n Bell bits as measured by U_i
  Bitstring collected_signature;  // as decrypted by Charlie (taps may differ)
  Bitstring m_prime;              // Charlie's recovered message
  bool accepted = false;          // Bob's per-signatory comparison
};

struct OrigRunResult {
  Bitstring message;      // Alice's m
  Bitstring bob_message;  // what Bob decrypted (taps may differ)
  std::vector<OrigSignatoryResult> individual;
  std::vector<Bitstring> multi_signature;  // Charlie's final collection
  bool combined_accepted = false;
  std::string transcript_digest;
};

/// The teleportation-based broadcasting blind signature scheme, run end to
/// end inside one world. Keys are generated at construction so taps and
/// hooks can be installed before run().
class OriginalProtocol {
 public:
  OriginalProtocol(net::World& world, const OrigConfig& config);

  const OriginalKeyRing& keys() const { return keys_; }
  OrigRunResult run(const OrigHooks& hooks = {});

 private:
  net::World& world_;
  OrigConfig cfg_;
  OriginalKeyRing keys_;
};

}  // namespace qbs::proto
