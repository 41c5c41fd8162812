#include "qbs/protocol_improved.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace qbs::proto {
namespace {

std::string party_u(int signatory) { return "u" + std::to_string(signatory + 1); }

constexpr int kPositionBits = 16;

}  // namespace

Bitstring VerificationOracle::expected_digest(int signatory,
                                              const Bitstring& masked_beta,
                                              const Bitstring& reveal) const {
  // H[(beta' ^ K_CU_i) || R]; the masked string already is beta' ^ K_CU_i,
  // so the oracle's key copy cancels out of the computation.
  const Bitstring beta = masked_beta ^ keys_->k_cu.at(signatory).slice(0, 2 * n_);
  const Bitstring remasked = beta ^ keys_->k_cu.at(signatory).slice(0, 2 * n_);
  return crypto::hash_digest(remasked + reveal, 4 * n_);
}

ImprovedProtocol::ImprovedProtocol(net::World& world, const ImpConfig& config)
    : ImprovedProtocol(world, config,
                       ImprovedKeyRing::generate(config.n, config.t, world.rng)) {}

ImprovedProtocol::ImprovedProtocol(net::World& world, const ImpConfig& config,
                                   ImprovedKeyRing keys)
    : world_(world), cfg_(config), keys_(std::move(keys)) {
  if (cfg_.n < 1 || cfg_.t < 1 || cfg_.l < 1) {
    throw std::invalid_argument("ImprovedProtocol: n, t, l must be >= 1");
  }
  if (!cfg_.basis.blinding()) {
    throw std::invalid_argument(
        "ImprovedProtocol: basis must be normalized with b != c, both nonzero");
  }
  if (cfg_.message && static_cast<int>(cfg_.message->size()) != cfg_.n) {
    throw std::invalid_argument("ImprovedProtocol: message length must equal n");
  }
  if (cfg_.blind && static_cast<int>(cfg_.blind->size()) != cfg_.n) {
    throw std::invalid_argument("ImprovedProtocol: blind length must equal n");
  }
}

ImpRunResult ImprovedProtocol::run(const ImpHooks& hooks) {
  const int n = cfg_.n;
  const int t = cfg_.t;
  const int l = cfg_.l;
  const std::size_t pad_bits = 4 * static_cast<std::size_t>(n);
  auto& arena = world_.arena;
  auto& net = world_.net;
  auto& rng = world_.rng;
  const EncodingBasis x_basis = EncodingBasis::x_basis();

  ImpRunResult result;
  const Bitstring m = cfg_.message ? *cfg_.message : rng.bits(n);
  const Bitstring r = cfg_.blind ? *cfg_.blind : rng.bits(n);
  result.message = m;
  result.blind = r;
  const Bitstring m_blinded = m ^ r;

  auto derive = [&](const Bitstring& key, const Bitstring& nonce) {
    Bitstring pad = crypto::derive_key(key, nonce, pad_bits);
    result.derived_pads.push_back(pad);
    return pad;
  };

  // Carrier helper: improved-QOTP-encrypted computational payload plus the
  // nonce qubits in the clear.
  auto send_carrier = [&](const std::string& from, const std::string& to,
                          const Bitstring& data, const Bitstring& pad,
                          const Bitstring& nonce, const std::string& label) {
    auto data_ids = crypto::encode_classical(arena, data);
    crypto::qotp_improved_encrypt(arena, data_ids, pad);
    auto nonce_ids = crypto::encode_classical(arena, nonce);
    data_ids.insert(data_ids.end(), nonce_ids.begin(), nonce_ids.end());
    net.send(from, to, net::QuantumPayload{std::move(data_ids), label});
  };
  auto recv_carrier = [&](const std::string& from, const std::string& to,
                          std::size_t data_bits, const Bitstring& key) {
    auto payload = std::get<net::QuantumPayload>(net.recv(from, to));
    std::span<const QubitId> data_ids(payload.qubits.data(), data_bits);
    std::span<const QubitId> nonce_ids(payload.qubits.data() + data_bits,
                                       payload.qubits.size() - data_bits);
    const Bitstring nonce = crypto::decode_classical(arena, nonce_ids, rng);
    const Bitstring pad = crypto::derive_key(key, nonce, data_ids.size() * 4);
    crypto::qotp_improved_decrypt(arena, data_ids, pad);
    return crypto::decode_classical(arena, data_ids, rng);
  };

  // Step (1.3): m travels as an encrypted computational-basis carrier.
  {
    const Bitstring r0 = rng.bits(pad_bits);
    send_carrier("alice", "bob", m, derive(keys_.k_ab, r0), r0, "message-carrier");
    result.bob_message = recv_carrier("alice", "bob", m.size(), keys_.k_ab);
  }

  // Step (1.4): the blinding string goes to Charlie the same way.
  Bitstring charlie_r;
  {
    const Bitstring r1 = rng.bits(pad_bits);
    send_carrier("alice", "charlie", r, derive(keys_.k_ac, r1), r1, "blind-carrier");
    charlie_r = recv_carrier("alice", "charlie", r.size(), keys_.k_ac);
  }

  const VerificationOracle oracle(&keys_, n);

  for (int i = 0; i < t; ++i) {
    ImpSignatoryResult sig_result;

    // Step (2.1): Charlie prepares n+l EPR pairs and sends one half of each.
    std::vector<QubitId> half_u(n + l), half_c(n + l);
    for (int j = 0; j < n + l; ++j) {
      const auto ids = arena.add(prepare_epr());
      half_u[j] = ids[0];
      half_c[j] = ids[1];
    }
    net.send("charlie", party_u(i), net::QuantumPayload{half_u, "epr-half"});
    auto epr_payload = std::get<net::QuantumPayload>(net.recv("charlie", party_u(i)));
    const auto& rx_half = epr_payload.qubits;

    // Decoy check: l random positions, random Z/X basis each; a clean EPR
    // pair gives equal outcomes in both bases.
    std::vector<int> positions(n + l);
    for (int j = 0; j < n + l; ++j) positions[j] = j;
    for (int j = n + l - 1; j > 0; --j) {
      std::swap(positions[j], positions[rng.below(j + 1)]);
    }
    std::vector<int> decoys(positions.begin(), positions.begin() + l);
    std::sort(decoys.begin(), decoys.end());

    Bitstring check_msg;  // (position, basis) pairs reported to the signatory
    Bitstring charlie_bits;
    std::vector<int> bases(l);
    for (int d = 0; d < l; ++d) {
      bases[d] = rng.bit();
      check_msg = check_msg + Bitstring::from_uint(decoys[d], kPositionBits);
      check_msg.append(static_cast<std::uint8_t>(bases[d]));
      const int bit =
          bases[d] ? arena.measure_in_basis(half_c[decoys[d]], x_basis, rng)
                   : arena.measure_computational(half_c[decoys[d]], rng);
      charlie_bits.append(static_cast<std::uint8_t>(bit));
    }
    net.send("charlie", party_u(i), net::ClassicalPayload{check_msg, "decoy-request"});
    net.recv("charlie", party_u(i));

    Bitstring signer_bits;
    for (int d = 0; d < l; ++d) {
      const int bit =
          bases[d] ? arena.measure_in_basis(rx_half[decoys[d]], x_basis, rng)
                   : arena.measure_computational(rx_half[decoys[d]], rng);
      signer_bits.append(static_cast<std::uint8_t>(bit));
    }
    net.send(party_u(i), "charlie", net::ClassicalPayload{signer_bits, "decoy-reply"});
    net.recv(party_u(i), "charlie");

    sig_result.channel_ok = (signer_bits == charlie_bits);
    if (!sig_result.channel_ok) {
      // Tampered channel: abandon this signatory's session.
      result.individual.push_back(std::move(sig_result));
      continue;
    }

    std::vector<QubitId> live_u, live_c;
    for (int j = 0; j < n + l; ++j) {
      if (!std::binary_search(decoys.begin(), decoys.end(), j)) {
        live_u.push_back(rx_half[j]);
        live_c.push_back(half_c[j]);
      }
    }

    // Step (2.2.1): blinded message qubits to the signatory.
    {
      const Bitstring r2 = rng.bits(pad_bits);
      const Bitstring pad2 = derive(keys_.k_au[i], r2);
      std::vector<QubitId> msg_ids;
      for (int j = 0; j < n; ++j) {
        msg_ids.push_back(arena.add_single(
            prepare_message_qubit_improved(m_blinded.bit(j), cfg_.basis)));
      }
      crypto::qotp_improved_encrypt(arena, msg_ids, pad2);
      auto nonce_ids = crypto::encode_classical(arena, r2);
      msg_ids.insert(msg_ids.end(), nonce_ids.begin(), nonce_ids.end());
      net.send("alice", party_u(i), net::QuantumPayload{std::move(msg_ids), "blinded-message"});
    }

    auto msg_payload = std::get<net::QuantumPayload>(net.recv("alice", party_u(i)));
    std::vector<QubitId> rx_msg(msg_payload.qubits.begin(),
                                msg_payload.qubits.begin() + n);
    {
      std::span<const QubitId> nonce_ids(msg_payload.qubits.data() + n, pad_bits);
      const Bitstring r2 = crypto::decode_classical(arena, nonce_ids, rng);
      const Bitstring pad2 = crypto::derive_key(keys_.k_au[i], r2, pad_bits);
      crypto::qotp_improved_decrypt(arena, rx_msg, pad2);
    }

    if (hooks.signer_pre_sign) hooks.signer_pre_sign(world_, i, rx_msg);

    // Step (2.2.2): Bell measurements and the committed signature.
    Bitstring beta;
    for (int j = 0; j < n; ++j) {
      const auto outcome = arena.bell_measure(rx_msg[j], live_u[j], rng);
      beta.append(outcome.k);
      beta.append(outcome.l);
    }
    const Bitstring reveal = rng.bits(pad_bits);
    const Bitstring masked = beta ^ keys_.k_cu[i].slice(0, 2 * n);
    const Bitstring digest = crypto::hash_digest(masked + reveal, pad_bits);
    const Bitstring s_i = masked + digest;
    sig_result.beta = beta;
    sig_result.masked_beta = masked;
    sig_result.digest = digest;
    sig_result.reveal = reveal;

    // Step (2.2.3): signature carrier under the six-component pad vector.
    {
      std::vector<Bitstring> r3(6);
      Bitstring pad3, r3_concat;
      for (auto& component : r3) {
        component = rng.bits(pad_bits);
        r3_concat = r3_concat + component;
      }
      pad3 = crypto::hash_vector_key(keys_.k_cu[i], r3, pad_bits);
      for (std::size_t seg = 0; seg < 6; ++seg) {
        result.derived_pads.push_back(pad3.slice(seg * pad_bits, pad_bits));
      }
      send_carrier(party_u(i), "charlie", s_i, pad3, r3_concat, "signature-carrier");
    }

    // Step (2.3.1): Charlie decodes the signature.
    Bitstring s_prime;
    {
      auto payload = std::get<net::QuantumPayload>(net.recv(party_u(i), "charlie"));
      std::span<const QubitId> data_ids(payload.qubits.data(), 6 * n);
      std::span<const QubitId> nonce_ids(payload.qubits.data() + 6 * n, 6 * pad_bits);
      const Bitstring r3_rx = crypto::decode_classical(arena, nonce_ids, rng);
      std::vector<Bitstring> r3(6);
      for (std::size_t seg = 0; seg < 6; ++seg) {
        r3[seg] = r3_rx.slice(seg * pad_bits, pad_bits);
      }
      const Bitstring pad3 = crypto::hash_vector_key(keys_.k_cu[i], r3, pad_bits);
      crypto::qotp_improved_decrypt(arena, data_ids, pad3);
      s_prime = crypto::decode_classical(arena, data_ids, rng);
    }
    if (hooks.charlie_post_decode) hooks.charlie_post_decode(i, s_prime);
    sig_result.s_prime = s_prime;
    const Bitstring beta_prime = s_prime.slice(0, 2 * n) ^ keys_.k_cu[i].slice(0, 2 * n);

    // Steps (2.3.2)-(2.3.3): corrections, readout, unblinding.
    Bitstring m_double_prime;
    for (int j = 0; j < n; ++j) {
      const BellOutcome outcome{beta_prime.bit(2 * j), beta_prime.bit(2 * j + 1)};
      arena.apply_pauli(live_c[j], teleport_correction(outcome));
      m_double_prime.append(static_cast<std::uint8_t>(
          arena.measure_in_basis(live_c[j], cfg_.basis, rng)));
    }
    const Bitstring m_star = m_double_prime ^ charlie_r;
    {
      const Bitstring r4 = rng.bits(pad_bits);
      send_carrier("charlie", "bob", m_star, derive(keys_.k_bc, r4), r4,
                   "recovered-message");
    }

    // Step (2.3.4): Bob's message comparison, then the board phase.
    sig_result.m_star = recv_carrier("charlie", "bob", n, keys_.k_bc);
    sig_result.message_ok = (sig_result.m_star == result.bob_message);
    if (sig_result.message_ok) {
      const Bitstring announced =
          hooks.charlie_announce ? hooks.charlie_announce(i, s_prime) : s_prime;
      world_.board.announce("charlie", "S-" + std::to_string(i + 1), announced);
      world_.board.announce(party_u(i), "R-" + std::to_string(i + 1), reveal);
      const Bitstring expected = oracle.expected_digest(
          i, announced.slice(0, 2 * n), world_.board.read("R-" + std::to_string(i + 1)));
      sig_result.digest_ok = (expected == announced.slice(2 * n, pad_bits));
    }
    sig_result.accepted = sig_result.message_ok && sig_result.digest_ok;
    result.individual.push_back(std::move(sig_result));
  }

  // Step (3.1): Charlie cross-checks the recovered messages.
  bool charlie_agrees = true;
  for (int i = 0; i < t; ++i) {
    if (!result.individual[i].channel_ok ||
        result.individual[i].m_star != result.individual[0].m_star) {
      charlie_agrees = false;
    }
  }
  if (!charlie_agrees) {
    result.transcript_digest = world_.transcript.digest();
    return result;
  }

  // Step (3.2): combined message, board reveals, and the digest-set check.
  {
    const Bitstring r5 = rng.bits(pad_bits);
    send_carrier("charlie", "bob", result.individual[0].m_star,
                 derive(keys_.k_bc, r5), r5, "combined-message");
  }
  const Bitstring m_combined = recv_carrier("charlie", "bob", n, keys_.k_bc);
  result.combined_message_ok = (m_combined == result.bob_message);
  if (result.combined_message_ok) {
    std::vector<Bitstring> announced(t);
    for (int i = 0; i < t; ++i) {
      announced[i] = hooks.charlie_announce
                         ? hooks.charlie_announce(i, result.individual[i].s_prime)
                         : result.individual[i].s_prime;
      world_.board.announce("charlie", "multi-S-" + std::to_string(i + 1), announced[i]);
      world_.board.announce(party_u(i), "multi-R-" + std::to_string(i + 1),
                            result.individual[i].reveal);
    }
    std::set<std::string> digest_set;  // F
    for (int i = 0; i < t; ++i) {
      for (int i_star = 0; i_star < t; ++i_star) {
        digest_set.insert(oracle
                              .expected_digest(i, announced[i].slice(0, 2 * n),
                                               result.individual[i_star].reveal)
                              .str());
      }
    }
    result.combined_set_ok = true;
    for (int i = 0; i < t; ++i) {  // F' subset of F
      if (!digest_set.contains(announced[i].slice(2 * n, pad_bits).str())) {
        result.combined_set_ok = false;
      }
    }
  }
  result.combined_accepted = result.combined_message_ok && result.combined_set_ok;
  result.transcript_digest = world_.transcript.digest();
  return result;
}

}  // namespace qbs::proto
