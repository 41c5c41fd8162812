#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qbs/protocol_improved.hpp"
#include "qbs/protocol_original.hpp"

namespace qbs::attacks {

enum class Scheme { original, improved };
const char* scheme_name(Scheme scheme);

struct AttackParams {
  int n = 8;
  int t = 3;
  int l = 16;
  EncodingBasis basis = proto::default_basis();
};

/// One adversarial run. `success` means the final verdict was accept AND the
/// accepted signature or message differs from the honest one; `detected`
/// means the tampering tripped a protocol check. Never both in one trial.
struct TrialResult {
  bool success = false;
  bool detected = false;
  std::optional<Bitstring> recovered;
  std::string transcript_digest;
};

// Each trial builds its own world from the (seed, trial) substream, so trials
// are independent and a fixed pair replays byte for byte.

TrialResult honest_trial(Scheme scheme, const AttackParams& params,
                         std::uint64_t seed, std::uint64_t trial);

/// Signatory measures the message qubits before signing. Recovers m against
/// the original scheme; only m XOR r against the improved one.
TrialResult blindness_trial(Scheme scheme, const AttackParams& params,
                            std::uint64_t seed, std::uint64_t trial);

/// Outside attacker XORs m0 into Bob's ciphertexts (original) or applies the
/// matching bit flips to the quantum message carrier (improved).
TrialResult modify_message_trial(Scheme scheme, const AttackParams& params,
                                 const Bitstring& m0, std::uint64_t seed,
                                 std::uint64_t trial);

/// Alice pre-measures the signing registers she prepared, so the signatory's
/// later outcomes are already known to her. Against the improved scheme the
/// registers are Charlie's, and intercepting them trips the decoy check.
TrialResult learn_signature_trial(Scheme scheme, const AttackParams& params,
                                  std::uint64_t seed, std::uint64_t trial);

/// Known-plaintext recovery of the Charlie/signatory key from the signature
/// ciphertext. Exact against the classical pad; blocked by the nonce-derived
/// pad of the improved scheme.
TrialResult extract_key_trial(Scheme scheme, const AttackParams& params,
                              std::uint64_t seed, std::uint64_t trial);

/// Alice swaps the Bell outcome at one position for a chosen target and
/// compensates on the collector half. `forced` pins the pre-measurement
/// outcome for exhaustive row checks; unset means Born sampling. An unset
/// `target` picks a random outcome different from the measured one.
TrialResult alice_forge_trial(Scheme scheme, const AttackParams& params,
                              int position, std::optional<BellOutcome> target,
                              std::optional<BellOutcome> forced,
                              std::uint64_t seed, std::uint64_t trial);

/// Charlie swaps the collected signatures for garbage while leaving the
/// recovered message alone.
TrialResult charlie_substitute_trial(Scheme scheme, const AttackParams& params,
                                     std::uint64_t seed, std::uint64_t trial);

/// Eve XORs a 2n-bit mask into every signature ciphertext and the induced
/// message flips into Bob's ciphertexts (original scheme). The improved-scheme
/// counterpart is the per-pair tamper below.
TrialResult eve_forge_trial(Scheme scheme, const AttackParams& params,
                            const Bitstring& mask, std::uint64_t seed,
                            std::uint64_t trial);

/// Residual Pauli error a signature tamper leaves on the recovered message
/// qubit: X flips the pair's second bit, Z the first, Y both.
enum class TamperType { x, z, y };

/// Improved scheme: flip one Bell pair of the decoded signature and watch
/// whether the biased-basis readout exposes it at Bob's comparison.
TrialResult eve_bit_tamper_trial(const AttackParams& params, TamperType type,
                                 std::uint64_t seed, std::uint64_t trial);

/// Improved scheme: computational-basis intercept-resend on the entanglement
/// channel, caught by the decoy check.
TrialResult intercept_resend_trial(const AttackParams& params,
                                   std::uint64_t seed, std::uint64_t trial);

/// Aggregate over a trial batch, with 95% binomial confidence half-widths.
struct AttackReport {
  std::string id;
  std::string scheme;
  std::size_t trials = 0;
  double success_rate = 0.0;
  double detection_rate = 0.0;
  double success_ci = 0.0;
  double detection_ci = 0.0;
  std::optional<Bitstring> recovered;   // from trial 0
  std::string transcript_digest;        // from trial 0
};

using TrialFn = std::function<TrialResult(std::uint64_t trial)>;

/// Runs `trials` independent trials, parallel across `jobs` workers (0 means
/// hardware concurrency). Aggregation is order-independent, so the report is
/// deterministic regardless of scheduling.
AttackReport measure_trials(const std::string& id, Scheme scheme,
                            std::size_t trials, const TrialFn& fn,
                            int jobs = 0);

/// The stock trial for a catalog id: canonical parameters, per-trial
/// randomized payloads where the attack takes one.
TrialResult run_named_trial(const std::string& id, Scheme scheme,
                            const AttackParams& params, std::uint64_t seed,
                            std::uint64_t trial);

/// Catalog ids accepted by run_named_trial (honest runs included).
std::vector<std::string> attack_ids();

/// Replays every attack against the improved scheme and reports the measured
/// detection statistics, the per-pair tamper split three ways.
std::vector<AttackReport> defense_suite(const AttackParams& params,
                                        std::size_t trials, std::uint64_t seed,
                                        int jobs = 0);

}  // namespace qbs::attacks
