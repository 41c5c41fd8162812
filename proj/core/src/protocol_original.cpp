#include "qbs/protocol_original.hpp"

#include <stdexcept>

namespace qbs::proto {

namespace {

std::string party_u(int signatory) { return "u" + std::to_string(signatory + 1); }

}  // namespace

OriginalProtocol::OriginalProtocol(net::World& world, const OrigConfig& config)
    : world_(world), cfg_(config),
      keys_(OriginalKeyRing::generate(config.n, config.t, kSerialBits, world.rng)) {
  if (cfg_.message && static_cast<int>(cfg_.message->size()) != cfg_.n) {
    throw std::invalid_argument("OriginalProtocol: message length must equal n");
  }
}

OrigRunResult OriginalProtocol::run(const OrigHooks& hooks) {
  const int n = cfg_.n;
  const int t = cfg_.t;
  auto& arena = world_.arena;
  auto& net = world_.net;
  auto& rng = world_.rng;

  OrigRunResult result;
  const Bitstring m = cfg_.message ? *cfg_.message : rng.bits(n);
  result.message = m;

  // Step (1.3): classical one-time pad of m to Bob.
  net.send("alice", "bob",
           net::ClassicalPayload{crypto::classical_otp(m, keys_.k_ab), "m-cipher"});
  {
    auto cipher = std::get<net::ClassicalPayload>(net.recv("alice", "bob"));
    result.bob_message = crypto::classical_otp(cipher.bits, keys_.k_ab);
  }

  const EncodingBasis x_basis = EncodingBasis::x_basis();

  for (int i = 0; i < t; ++i) {
    OrigSignatoryResult sig_result;
    const Bitstring serial = Bitstring::from_uint(i + 1, kSerialBits);
    sig_result.serial = serial;

    // Steps (2.1)-(2.3.1): message qubits and EPR pairs, one 3-qubit
    // register (M, A, C) per message bit.
    std::vector<QubitId> m_ids(n), a_ids(n), c_ids(n);
    for (int j = 0; j < n; ++j) {
      const auto reg = prepare_message_qubit_original(m.bit(j)).tensor(prepare_epr());
      const auto ids = arena.add(reg);
      m_ids[j] = ids[0];
      a_ids[j] = ids[1];
      c_ids[j] = ids[2];
    }
    if (hooks.alice_pre_send) hooks.alice_pre_send(world_, i, m_ids, a_ids, c_ids);

    // Step (2.3.2): QOTP-protected distribution, serial qubits appended.
    std::vector<QubitId> to_signer;
    for (int j = 0; j < n; ++j) {
      to_signer.push_back(m_ids[j]);
      to_signer.push_back(a_ids[j]);
    }
    for (auto id : crypto::encode_classical(arena, serial)) to_signer.push_back(id);
    crypto::qotp_basic_encrypt(arena, to_signer, keys_.k_au[i]);
    net.send("alice", party_u(i), net::QuantumPayload{to_signer, "signing-register"});

    std::vector<QubitId> to_charlie = c_ids;
    for (auto id : crypto::encode_classical(arena, serial)) to_charlie.push_back(id);
    crypto::qotp_basic_encrypt(arena, to_charlie, keys_.k_ac);
    net.send("alice", "charlie", net::QuantumPayload{to_charlie, "collector-half"});

    // Step (2.3.3): the signatory decrypts and Bell-measures each (M, A).
    auto signer_payload = std::get<net::QuantumPayload>(net.recv("alice", party_u(i)));
    crypto::qotp_basic_decrypt(arena, signer_payload.qubits, keys_.k_au[i]);
    std::vector<QubitId> rx_m(n), rx_a(n);
    for (int j = 0; j < n; ++j) {
      rx_m[j] = signer_payload.qubits[2 * j];
      rx_a[j] = signer_payload.qubits[2 * j + 1];
    }
    std::span<const QubitId> rx_sn(signer_payload.qubits.data() + 2 * n, kSerialBits);
    const Bitstring signer_serial = crypto::decode_classical(arena, rx_sn, rng);

    if (hooks.signer_pre_sign) hooks.signer_pre_sign(world_, i, rx_m);

    Bitstring s_i;
    for (int j = 0; j < n; ++j) {
      const auto outcome = arena.bell_measure(rx_m[j], rx_a[j], rng);
      s_i.append(outcome.k);
      s_i.append(outcome.l);
    }
    sig_result.signer_signature = s_i;

    // Step (2.3.4): encrypted signature to Charlie, serial in the clear.
    net.send(party_u(i), "charlie",
             net::ClassicalPayload{
                 crypto::classical_otp(s_i, keys_.k_cu[i]) + signer_serial,
                 "signature-cipher"});

    // Steps (2.4.1)-(2.4.3): Charlie decrypts both shipments, applies the
    // teleportation corrections and reads the message out in the +/- basis.
    auto charlie_payload = std::get<net::QuantumPayload>(net.recv("alice", "charlie"));
    crypto::qotp_basic_decrypt(arena, charlie_payload.qubits, keys_.k_ac);
    std::span<const QubitId> c_half(charlie_payload.qubits.data(), n);
    std::span<const QubitId> c_sn(charlie_payload.qubits.data() + n, kSerialBits);
    crypto::decode_classical(arena, c_sn, rng);  // Charlie's copy of SN

    auto sig_payload = std::get<net::ClassicalPayload>(net.recv(party_u(i), "charlie"));
    const Bitstring s_collected =
        crypto::classical_otp(sig_payload.bits.slice(0, 2 * n), keys_.k_cu[i]);
    sig_result.collected_signature = s_collected;

    Bitstring m_prime;
    for (int j = 0; j < n; ++j) {
      const BellOutcome outcome{s_collected.bit(2 * j), s_collected.bit(2 * j + 1)};
      arena.apply_pauli(c_half[j], teleport_correction(outcome));
      m_prime.append(
          static_cast<std::uint8_t>(arena.measure_in_basis(c_half[j], x_basis, rng)));
    }
    sig_result.m_prime = m_prime;

    net.send("charlie", "bob",
             net::ClassicalPayload{crypto::classical_otp(m_prime, keys_.k_bc),
                                   "recovered-message"});

    // Step (2.4.4): Bob's per-signatory comparison.
    auto mp_cipher = std::get<net::ClassicalPayload>(net.recv("charlie", "bob"));
    const Bitstring bob_m_prime = crypto::classical_otp(mp_cipher.bits, keys_.k_bc);
    sig_result.accepted = (bob_m_prime == result.bob_message);

    result.individual.push_back(std::move(sig_result));
  }

  // Step (3.1): Charlie confirms all recovered messages agree.
  std::vector<Bitstring> multi;
  for (const auto& s : result.individual) multi.push_back(s.collected_signature);
  if (hooks.charlie_finalize) multi = hooks.charlie_finalize(std::move(multi));
  result.multi_signature = multi;

  bool charlie_agrees = true;
  for (int i = 1; i < t; ++i) {
    if (result.individual[i].m_prime != result.individual[0].m_prime) {
      charlie_agrees = false;
    }
  }

  if (charlie_agrees) {
    net.send("charlie", "bob",
             net::ClassicalPayload{
                 crypto::classical_otp(result.individual[0].m_prime, keys_.k_bc),
                 "combined-message"});
    auto cipher = std::get<net::ClassicalPayload>(net.recv("charlie", "bob"));
    const Bitstring m_combined = crypto::classical_otp(cipher.bits, keys_.k_bc);
    // Step (3.2): Bob accepts iff the combined message matches his m.
    result.combined_accepted = (m_combined == result.bob_message);
  }

  result.transcript_digest = world_.transcript.digest();
  return result;
}

}  // namespace qbs::proto
