#include "qbs/attacks.hpp"

#include <cmath>
#include <stdexcept>
#include <thread>

namespace qbs::attacks {
namespace {

constexpr std::uint64_t kAdversaryStream = 0xADE7'ECAF'5EED'0001ull;

net::World make_world(std::uint64_t seed, std::uint64_t trial) {
  return net::World(seed, trial);
}

Rng adversary_rng(std::uint64_t seed, std::uint64_t trial) {
  return Rng(seed ^ kAdversaryStream, trial);
}

proto::OrigConfig orig_config(const AttackParams& params) {
  proto::OrigConfig cfg;
  cfg.n = params.n;
  cfg.t = params.t;
  return cfg;
}

proto::ImpConfig imp_config(const AttackParams& params) {
  proto::ImpConfig cfg;
  cfg.n = params.n;
  cfg.t = params.t;
  cfg.l = params.l;
  cfg.basis = params.basis;
  return cfg;
}

bool all_accepted(const proto::OrigRunResult& res) {
  if (!res.combined_accepted) return false;
  for (const auto& s : res.individual) {
    if (!s.accepted) return false;
  }
  return true;
}

bool all_accepted(const proto::ImpRunResult& res) {
  if (!res.combined_accepted) return false;
  for (const auto& s : res.individual) {
    if (!s.accepted) return false;
  }
  return true;
}

}  // namespace

const char* scheme_name(Scheme scheme) {
  return scheme == Scheme::original ? "original" : "improved";
}

TrialResult honest_trial(Scheme scheme, const AttackParams& params,
                         std::uint64_t seed, std::uint64_t trial) {
  auto world = make_world(seed, trial);
  TrialResult out;
  if (scheme == Scheme::original) {
    proto::OriginalProtocol protocol(world, orig_config(params));
    const auto res = protocol.run();
    out.success = all_accepted(res);
    out.recovered = res.bob_message;
    out.transcript_digest = res.transcript_digest;
  } else {
    proto::ImprovedProtocol protocol(world, imp_config(params));
    const auto res = protocol.run();
    out.success = all_accepted(res);
    out.recovered = res.bob_message;
    out.transcript_digest = res.transcript_digest;
  }
  return out;
}

TrialResult blindness_trial(Scheme scheme, const AttackParams& params,
                            std::uint64_t seed, std::uint64_t trial) {
  auto world = make_world(seed, trial);
  TrialResult out;
  Bitstring peeked;
  if (scheme == Scheme::original) {
    proto::OriginalProtocol protocol(world, orig_config(params));
    proto::OrigHooks hooks;
    hooks.signer_pre_sign = [&](net::World& w, int signatory,
                                const std::vector<QubitId>& m_ids) {
      if (signatory != 0) return;
      for (auto id : m_ids) {
        peeked.append(static_cast<std::uint8_t>(
            w.arena.measure_in_basis(id, EncodingBasis::x_basis(), w.rng, true)));
      }
    };
    const auto res = protocol.run(hooks);
    out.success = (peeked == res.message) && res.combined_accepted;
    out.detected = !res.combined_accepted;
    out.transcript_digest = res.transcript_digest;
  } else {
    auto cfg = imp_config(params);
    // Condition on a nonzero blinding string; the all-zero draw makes the
    // blinded copy trivially equal to m and says nothing about the attack.
    cfg.blind = world.rng.nonzero_bits(params.n);
    proto::ImprovedProtocol protocol(world, cfg);
    proto::ImpHooks hooks;
    hooks.signer_pre_sign = [&](net::World& w, int signatory,
                                const std::vector<QubitId>& m_ids) {
      if (signatory != 0) return;
      for (auto id : m_ids) {
        peeked.append(static_cast<std::uint8_t>(
            w.arena.measure_in_basis(id, params.basis, w.rng, true)));
      }
    };
    const auto res = protocol.run(hooks);
    out.success = (peeked == res.message) && res.combined_accepted;
    out.detected = !res.combined_accepted;
    out.transcript_digest = res.transcript_digest;
  }
  out.recovered = peeked;
  return out;
}

TrialResult modify_message_trial(Scheme scheme, const AttackParams& params,
                                 const Bitstring& m0, std::uint64_t seed,
                                 std::uint64_t trial) {
  if (static_cast<int>(m0.size()) != params.n) {
    throw std::invalid_argument("modify_message_trial: m0 length must equal n");
  }
  auto world = make_world(seed, trial);
  TrialResult out;
  if (scheme == Scheme::original) {
    world.net.set_tap("alice", "bob", [&](net::Payload& p) {
      auto& cp = std::get<net::ClassicalPayload>(p);
      cp.bits = cp.bits ^ m0;
    });
    world.net.set_tap("charlie", "bob", [&](net::Payload& p) {
      auto& cp = std::get<net::ClassicalPayload>(p);
      cp.bits = cp.bits ^ m0;
    });
    proto::OriginalProtocol protocol(world, orig_config(params));
    const auto res = protocol.run();
    out.success = all_accepted(res) && res.bob_message != res.message;
    out.detected = !res.combined_accepted;
    out.recovered = res.bob_message;
    out.transcript_digest = res.transcript_digest;
  } else {
    world.net.set_tap("alice", "bob", [&](net::Payload& p) {
      auto* qp = std::get_if<net::QuantumPayload>(&p);
      if (!qp || qp->label != "message-carrier") return;
      for (int j = 0; j < params.n; ++j) {
        if (m0.bit(j)) world.arena.apply_pauli(qp->qubits[j], PauliOp::X);
      }
    });
    proto::ImprovedProtocol protocol(world, imp_config(params));
    const auto res = protocol.run();
    out.success = all_accepted(res) && res.bob_message != res.message;
    out.detected = res.bob_message != res.message || !res.combined_accepted;
    out.recovered = res.bob_message;
    out.transcript_digest = res.transcript_digest;
  }
  return out;
}

TrialResult learn_signature_trial(Scheme scheme, const AttackParams& params,
                                  std::uint64_t seed, std::uint64_t trial) {
  if (scheme == Scheme::improved) {
    // Alice does not prepare the signing registers here; the nearest tactic is
    // intercepting Charlie's entanglement distribution.
    return intercept_resend_trial(params, seed, trial);
  }
  auto world = make_world(seed, trial);
  TrialResult out;
  Bitstring predicted;
  proto::OriginalProtocol protocol(world, orig_config(params));
  proto::OrigHooks hooks;
  hooks.alice_pre_send = [&](net::World& w, int signatory,
                             std::vector<QubitId>& m_ids,
                             std::vector<QubitId>& a_ids, std::vector<QubitId>&) {
    if (signatory != 0) return;
    for (int j = 0; j < params.n; ++j) {
      const auto outcome = w.arena.bell_measure(m_ids[j], a_ids[j], w.rng, true);
      predicted.append(outcome.k);
      predicted.append(outcome.l);
    }
  };
  const auto res = protocol.run(hooks);
  out.success =
      (predicted == res.individual.at(0).signer_signature) && all_accepted(res);
  out.detected = !res.combined_accepted;
  out.recovered = predicted;
  out.transcript_digest = res.transcript_digest;
  return out;
}

TrialResult extract_key_trial(Scheme scheme, const AttackParams& params,
                              std::uint64_t seed, std::uint64_t trial) {
  auto world = make_world(seed, trial);
  TrialResult out;
  const int n = params.n;
  if (scheme == Scheme::original) {
    Bitstring predicted;
    proto::OriginalProtocol protocol(world, orig_config(params));
    proto::OrigHooks hooks;
    hooks.alice_pre_send = [&](net::World& w, int signatory,
                               std::vector<QubitId>& m_ids,
                               std::vector<QubitId>& a_ids,
                               std::vector<QubitId>&) {
      if (signatory != 0) return;
      for (int j = 0; j < n; ++j) {
        const auto outcome = w.arena.bell_measure(m_ids[j], a_ids[j], w.rng, true);
        predicted.append(outcome.k);
        predicted.append(outcome.l);
      }
    };
    Bitstring recovered_key;
    world.net.set_tap("u1", "charlie", [&](net::Payload& p) {
      const auto& cp = std::get<net::ClassicalPayload>(p);
      recovered_key = cp.bits.slice(0, 2 * n) ^ predicted;
    });
    const auto res = protocol.run(hooks);
    out.success = (recovered_key == protocol.keys().k_cu.at(0)) && all_accepted(res);
    out.detected = !res.combined_accepted;
    out.recovered = recovered_key;
    out.transcript_digest = res.transcript_digest;
  } else {
    Bitstring observed;
    world.net.set_tap("u1", "charlie", [&](net::Payload& p) {
      auto* qp = std::get_if<net::QuantumPayload>(&p);
      if (!qp || qp->label != "signature-carrier") return;
      observed = Bitstring();
      for (int j = 0; j < 2 * n; ++j) {
        observed.append(static_cast<std::uint8_t>(
            world.arena.measure_computational(qp->qubits[j], world.rng, true)));
      }
    });
    proto::ImprovedProtocol protocol(world, imp_config(params));
    const auto res = protocol.run();
    // Even granted the signatory's Bell outcomes, the carrier readout XORs to
    // hash-derived pad bits rather than the shared key.
    const Bitstring recovered_key = observed ^ res.individual.at(0).beta;
    out.success = recovered_key == protocol.keys().k_cu.at(0).slice(0, 2 * n);
    out.detected = !res.combined_accepted;
    out.recovered = recovered_key;
    out.transcript_digest = res.transcript_digest;
  }
  return out;
}

TrialResult alice_forge_trial(Scheme scheme, const AttackParams& params,
                              int position, std::optional<BellOutcome> target_opt,
                              std::optional<BellOutcome> forced,
                              std::uint64_t seed, std::uint64_t trial) {
  if (position < 0 || position >= params.n) {
    throw std::invalid_argument("alice_forge_trial: position out of range");
  }
  if (scheme == Scheme::improved) {
    return intercept_resend_trial(params, seed, trial);
  }
  auto world = make_world(seed, trial);
  auto atk_rng = adversary_rng(seed, trial);
  TrialResult out;
  BellOutcome actual;
  BellOutcome target;
  proto::OriginalProtocol protocol(world, orig_config(params));
  proto::OrigHooks hooks;
  hooks.alice_pre_send = [&](net::World& w, int signatory,
                             std::vector<QubitId>& m_ids,
                             std::vector<QubitId>& a_ids,
                             std::vector<QubitId>& c_ids) {
    if (signatory != 0) return;
    auto& arena = w.arena;
    if (forced) {
      if (!arena.project_bell(m_ids[position], a_ids[position], *forced)) {
        throw std::runtime_error("alice_forge_trial: forced branch impossible");
      }
      actual = *forced;
    } else {
      actual = arena.bell_measure(m_ids[position], a_ids[position], w.rng, true);
    }
    target = target_opt ? *target_opt
                        : BellOutcome::from_code(static_cast<std::uint8_t>(
                              actual.code() ^ (1 + atk_rng.below(3))));
    if (actual == target) return;
    // Rotate the collapsed Bell pair onto the target outcome via the message
    // half, then pre-compensate the collector half so Charlie's correction
    // for the forged outcome still lands on the real message state.
    if (actual.k) arena.apply_pauli(m_ids[position], PauliOp::Z);
    if (actual.l) arena.apply_pauli(m_ids[position], PauliOp::X);
    if (target.l) arena.apply_pauli(m_ids[position], PauliOp::X);
    if (target.k) arena.apply_pauli(m_ids[position], PauliOp::Z);
    const auto v = pauli_mul(teleport_correction(actual), teleport_correction(target));
    arena.apply_pauli(c_ids[position], v.second);
  };
  const auto res = protocol.run(hooks);
  const Bitstring& signed_bits = res.individual.at(0).signer_signature;
  const BellOutcome observed{signed_bits.bit(2 * position),
                             signed_bits.bit(2 * position + 1)};
  out.success = all_accepted(res) && observed == target && !(actual == target);
  out.detected = !res.combined_accepted;
  out.recovered = signed_bits;
  out.transcript_digest = res.transcript_digest;
  return out;
}

TrialResult charlie_substitute_trial(Scheme scheme, const AttackParams& params,
                                     std::uint64_t seed, std::uint64_t trial) {
  auto world = make_world(seed, trial);
  auto atk_rng = adversary_rng(seed, trial);
  TrialResult out;
  if (scheme == Scheme::original) {
    proto::OriginalProtocol protocol(world, orig_config(params));
    proto::OrigHooks hooks;
    bool substituted = false;
    hooks.charlie_finalize = [&](std::vector<Bitstring> collected) {
      for (auto& s : collected) {
        s = s ^ atk_rng.nonzero_bits(s.size());
      }
      substituted = true;
      return collected;
    };
    const auto res = protocol.run(hooks);
    out.success = all_accepted(res) && substituted;
    out.detected = !res.combined_accepted;
    out.recovered = res.multi_signature.empty() ? std::optional<Bitstring>{}
                                                : res.multi_signature.front();
    out.transcript_digest = res.transcript_digest;
  } else {
    proto::ImprovedProtocol protocol(world, imp_config(params));
    proto::ImpHooks hooks;
    Bitstring forged;
    hooks.charlie_announce = [&](int, const Bitstring& honest) {
      forged = honest ^ atk_rng.nonzero_bits(honest.size());
      return forged;
    };
    const auto res = protocol.run(hooks);
    out.success = res.combined_accepted && !forged.empty();
    out.detected = !res.combined_accepted;
    out.recovered = forged.empty() ? std::optional<Bitstring>{} : forged;
    out.transcript_digest = res.transcript_digest;
  }
  return out;
}

TrialResult eve_forge_trial(Scheme scheme, const AttackParams& params,
                            const Bitstring& mask, std::uint64_t seed,
                            std::uint64_t trial) {
  const int n = params.n;
  if (static_cast<int>(mask.size()) != 2 * n) {
    throw std::invalid_argument("eve_forge_trial: mask length must equal 2n");
  }
  if (scheme == Scheme::improved) {
    return eve_bit_tamper_trial(params, TamperType::x, seed, trial);
  }
  auto world = make_world(seed, trial);
  TrialResult out;
  // First bit of each tampered pair decides whether the teleported message
  // bit flips, so Eve patches Bob's ciphertexts with the induced string.
  Bitstring induced;
  for (int j = 0; j < n; ++j) {
    induced.append(mask.bit(2 * j));
  }
  for (int i = 0; i < params.t; ++i) {
    world.net.set_tap("u" + std::to_string(i + 1), "charlie",
                      [&, n](net::Payload& p) {
                        auto& cp = std::get<net::ClassicalPayload>(p);
                        cp.bits = (cp.bits.slice(0, 2 * n) ^ mask) +
                                  cp.bits.slice(2 * n, cp.bits.size() - 2 * n);
                      });
  }
  world.net.set_tap("charlie", "bob", [&](net::Payload& p) {
    auto& cp = std::get<net::ClassicalPayload>(p);
    cp.bits = cp.bits ^ induced;
  });
  proto::OriginalProtocol protocol(world, orig_config(params));
  const auto res = protocol.run();
  out.success = all_accepted(res) && !mask.all_zero();
  out.detected = !res.combined_accepted;
  out.recovered = res.individual.at(0).collected_signature;
  out.transcript_digest = res.transcript_digest;
  return out;
}

TrialResult eve_bit_tamper_trial(const AttackParams& params, TamperType type,
                                 std::uint64_t seed, std::uint64_t trial) {
  auto world = make_world(seed, trial);
  TrialResult out;
  proto::ImprovedProtocol protocol(world, imp_config(params));
  proto::ImpHooks hooks;
  hooks.charlie_post_decode = [&](int signatory, Bitstring& s_prime) {
    if (signatory != 0) return;
    if (type == TamperType::z || type == TamperType::y) s_prime.flip(0);
    if (type == TamperType::x || type == TamperType::y) s_prime.flip(1);
  };
  const auto res = protocol.run(hooks);
  const auto& first = res.individual.at(0);
  out.detected = first.channel_ok && !first.message_ok;
  out.success = res.combined_accepted && first.accepted;
  out.recovered = first.s_prime;
  out.transcript_digest = res.transcript_digest;
  return out;
}

TrialResult intercept_resend_trial(const AttackParams& params,
                                   std::uint64_t seed, std::uint64_t trial) {
  auto world = make_world(seed, trial);
  TrialResult out;
  world.net.set_tap("charlie", "u1", [&](net::Payload& p) {
    auto* qp = std::get_if<net::QuantumPayload>(&p);
    if (!qp || qp->label != "epr-half") return;
    for (auto id : qp->qubits) {
      world.arena.measure_computational(id, world.rng, true);
    }
  });
  proto::ImprovedProtocol protocol(world, imp_config(params));
  const auto res = protocol.run();
  out.detected = !res.individual.at(0).channel_ok;
  out.success = res.combined_accepted && res.individual.at(0).accepted;
  out.transcript_digest = res.transcript_digest;
  return out;
}

AttackReport measure_trials(const std::string& id, Scheme scheme,
                            std::size_t trials, const TrialFn& fn, int jobs) {
  if (trials < 1) throw std::invalid_argument("measure_trials: trials must be >= 1");
  AttackReport report;
  report.id = id;
  report.scheme = scheme_name(scheme);
  report.trials = trials;

  const TrialResult first = fn(0);
  report.recovered = first.recovered;
  report.transcript_digest = first.transcript_digest;
  std::size_t successes = first.success ? 1 : 0;
  std::size_t detections = first.detected ? 1 : 0;

  if (trials > 1) {
    int workers = jobs > 0 ? jobs
                           : static_cast<int>(std::thread::hardware_concurrency());
    if (workers < 1) workers = 1;
    const std::size_t remaining = trials - 1;
    workers = static_cast<int>(
        std::min<std::size_t>(static_cast<std::size_t>(workers), remaining));
    std::vector<std::size_t> local_s(workers, 0), local_d(workers, 0);
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t t = 1 + w; t < trials; t += workers) {
          const TrialResult r = fn(t);
          if (r.success) ++local_s[w];
          if (r.detected) ++local_d[w];
        }
      });
    }
    for (auto& th : pool) th.join();
    for (int w = 0; w < workers; ++w) {
      successes += local_s[w];
      detections += local_d[w];
    }
  }

  auto rate = [trials](std::size_t count) {
    return static_cast<double>(count) / static_cast<double>(trials);
  };
  auto half_width = [trials](double p) {
    return 1.96 * std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
  };
  report.success_rate = rate(successes);
  report.detection_rate = rate(detections);
  report.success_ci = half_width(report.success_rate);
  report.detection_ci = half_width(report.detection_rate);
  return report;
}

std::vector<std::string> attack_ids() {
  return {"blindness-break",    "modify-message", "learn-signature",
          "extract-key",        "alice-forge",    "charlie-substitute",
          "eve-forge"};
}

TrialResult run_named_trial(const std::string& id, Scheme scheme,
                            const AttackParams& params, std::uint64_t seed,
                            std::uint64_t trial) {
  auto atk_rng = adversary_rng(~seed, trial);
  if (id == "honest") return honest_trial(scheme, params, seed, trial);
  if (id == "blindness-break") return blindness_trial(scheme, params, seed, trial);
  if (id == "modify-message") {
    Bitstring m0;
    if (scheme == Scheme::original) {
      m0 = atk_rng.nonzero_bits(params.n);
    } else {
      // Single-qubit tamper so the measured detection rate matches the
      // per-qubit key-enumeration expectation.
      m0 = Bitstring::zeros(params.n);
      m0.set_bit(0, 1);
    }
    return modify_message_trial(scheme, params, m0, seed, trial);
  }
  if (id == "learn-signature") return learn_signature_trial(scheme, params, seed, trial);
  if (id == "extract-key") return extract_key_trial(scheme, params, seed, trial);
  if (id == "alice-forge") {
    return alice_forge_trial(scheme, params, 0, std::nullopt, std::nullopt, seed,
                             trial);
  }
  if (id == "charlie-substitute") {
    return charlie_substitute_trial(scheme, params, seed, trial);
  }
  if (id == "eve-forge") {
    return eve_forge_trial(scheme, params, atk_rng.nonzero_bits(2 * params.n),
                           seed, trial);
  }
  throw std::invalid_argument("unknown attack id: " + id);
}

std::vector<AttackReport> defense_suite(const AttackParams& params,
                                        std::size_t trials, std::uint64_t seed,
                                        int jobs) {
  std::vector<AttackReport> reports;
  auto add = [&](const std::string& id, const TrialFn& fn) {
    reports.push_back(measure_trials(id, Scheme::improved, trials, fn, jobs));
  };
  add("blindness-break", [&](std::uint64_t t) {
    return blindness_trial(Scheme::improved, params, seed, t);
  });
  add("modify-message", [&](std::uint64_t t) {
    Bitstring m0 = Bitstring::zeros(params.n);
    m0.set_bit(0, 1);
    return modify_message_trial(Scheme::improved, params, m0, seed, t);
  });
  add("learn-signature", [&](std::uint64_t t) {
    return intercept_resend_trial(params, seed, t);
  });
  add("extract-key", [&](std::uint64_t t) {
    return extract_key_trial(Scheme::improved, params, seed, t);
  });
  add("alice-forge", [&](std::uint64_t t) {
    return intercept_resend_trial(params, seed, t);
  });
  add("charlie-substitute", [&](std::uint64_t t) {
    return charlie_substitute_trial(Scheme::improved, params, seed, t);
  });
  add("eve-tamper-x", [&](std::uint64_t t) {
    return eve_bit_tamper_trial(params, TamperType::x, seed, t);
  });
  add("eve-tamper-z", [&](std::uint64_t t) {
    return eve_bit_tamper_trial(params, TamperType::z, seed, t);
  });
  add("eve-tamper-y", [&](std::uint64_t t) {
    return eve_bit_tamper_trial(params, TamperType::y, seed, t);
  });
  return reports;
}

}  // namespace qbs::attacks
