// Acceptance gate: one pass/fail line per criterion, nonzero exit on any
// failure. Heavy Monte-Carlo batches run through the parallel trial harness.

#include <cmath>
#include <cstdio>
#include <set>
#include <string>

#include "qbs/attacks.hpp"
#include "qbs/scenario.hpp"

using namespace qbs;

namespace {

int failures = 0;

void report(int criterion, bool pass, const std::string& what) {
  std::printf("criterion %d: %s  %s\n", criterion, pass ? "PASS" : "FAIL",
              what.c_str());
  if (!pass) ++failures;
}

StateVector random_qubit(Rng& rng) {
  const double theta = rng.uniform() * std::acos(-1.0);
  const double phi = rng.uniform() * 2.0 * std::acos(-1.0);
  return StateVector::single(std::cos(theta / 2.0),
                             Complex(std::cos(phi), std::sin(phi)) *
                                 std::sin(theta / 2.0));
}

// 1: teleportation round trip at fidelity >= 1 - 1e-9 on every forced branch.
void criterion_1() {
  Rng rng(101);
  bool pass = true;
  for (int iter = 0; iter < 1000 && pass; ++iter) {
    const auto psi = random_qubit(rng);
    for (std::uint8_t code = 0; code < 4; ++code) {
      const auto outcome = BellOutcome::from_code(code);
      auto reg = psi.tensor(prepare_epr());
      const auto branch = reg.project_bell(0, 1, outcome);
      if (!branch) {
        pass = false;
        break;
      }
      auto post = branch->second;
      post.apply_pauli(0, teleport_correction(outcome));
      const double fidelity = std::norm(post.inner(psi));
      if (fidelity < 1.0 - 1e-9) {
        pass = false;
        break;
      }
    }
  }
  report(1, pass, "teleportation identity, 1000 states x 4 forced branches");
}

// 2: honest acceptance rate exactly 1.0 over 500 seeds for both schemes.
void criterion_2() {
  attacks::AttackParams params;
  const auto original = attacks::measure_trials(
      "honest", attacks::Scheme::original, 500,
      [&](std::uint64_t t) {
        return attacks::honest_trial(attacks::Scheme::original, params, 202, t);
      });
  const auto improved = attacks::measure_trials(
      "honest", attacks::Scheme::improved, 500,
      [&](std::uint64_t t) {
        return attacks::honest_trial(attacks::Scheme::improved, params, 202, t);
      });
  const bool pass =
      original.success_rate == 1.0 && improved.success_rate == 1.0;
  report(2, pass, "honest runs accept 500/500 in both schemes (n=8, t=3)");
}

// 3: all 12 outcome-swap rows, as matrix identities and end to end.
void criterion_3() {
  bool matrices = true;
  for (std::uint8_t from = 0; from < 4; ++from) {
    for (std::uint8_t to = 0; to < 4; ++to) {
      if (from == to) continue;
      const auto a = BellOutcome::from_code(from);
      const auto b = BellOutcome::from_code(to);
      const auto v1 = teleport_correction(a);
      const auto v2 = teleport_correction(b);
      const auto [phase, v] = pauli_mul(v1, v2);
      // product identity up to the accumulated phase
      const Mat2 lhs = pauli_matrix(v1) * pauli_matrix(v2);
      const Mat2 rhs = pauli_matrix(v).scaled(phase);
      if (std::abs(lhs.a - rhs.a) > 1e-12 || std::abs(lhs.b - rhs.b) > 1e-12 ||
          std::abs(lhs.c - rhs.c) > 1e-12 || std::abs(lhs.d - rhs.d) > 1e-12) {
        matrices = false;
      }
    }
  }

  // The correction table itself, frozen: outcome code -> operator.
  const PauliOp expected[4] = {PauliOp::I, PauliOp::X, PauliOp::Z, PauliOp::Y};
  for (std::uint8_t code = 0; code < 4; ++code) {
    if (teleport_correction(BellOutcome::from_code(code)) != expected[code]) {
      matrices = false;
    }
  }

  bool end_to_end = true;
  attacks::AttackParams params;
  std::uint64_t trial = 0;
  for (std::uint8_t from = 0; from < 4; ++from) {
    for (std::uint8_t to = 0; to < 4; ++to) {
      if (from == to) continue;
      const auto r = attacks::alice_forge_trial(
          attacks::Scheme::original, params, 0, BellOutcome::from_code(to),
          BellOutcome::from_code(from), 303, trial++);
      if (!r.success) end_to_end = false;
    }
  }
  report(3, matrices && end_to_end,
         "12 outcome-swap rows hold as matrices and as accepted forgeries");
}

// 4: recovered message flips exactly when the first outcome bit differs.
void criterion_4() {
  const auto x_basis = EncodingBasis::x_basis();
  bool pass = true;
  for (std::uint8_t bc = 0; bc < 4 && pass; ++bc) {
    for (std::uint8_t bp = 0; bp < 4 && pass; ++bp) {
      for (int bit = 0; bit < 2 && pass; ++bit) {
        const auto beta = BellOutcome::from_code(bc);
        const auto beta_prime = BellOutcome::from_code(bp);
        auto reg = prepare_message_qubit_original(bit).tensor(prepare_epr());
        const auto branch = reg.project_bell(0, 1, beta);
        if (!branch) {
          pass = false;
          break;
        }
        auto post = branch->second;
        post.apply_pauli(0, teleport_correction(beta_prime));
        const int expected = (beta.k == beta_prime.k) ? bit : 1 - bit;
        const auto outcome = post.project_basis(0, x_basis, expected);
        if (!outcome || std::abs(outcome->first - 1.0) > 1e-9) pass = false;
      }
    }
  }
  report(4, pass, "exhaustive 16 outcome pairs x both bits match the flip law");
}

// 5: every attack on the original scheme succeeds 1000/1000.
void criterion_5() {
  attacks::AttackParams params;
  bool pass = true;
  std::string detail;
  for (const std::string id :
       {"blindness-break", "modify-message", "extract-key", "charlie-substitute",
        "eve-forge"}) {
    const auto rep = attacks::measure_trials(
        id, attacks::Scheme::original, 1000, [&](std::uint64_t t) {
          return attacks::run_named_trial(id, attacks::Scheme::original, params,
                                          505, t);
        });
    if (rep.success_rate != 1.0) {
      pass = false;
      detail += " " + id;
    }
  }
  report(5, pass,
         "original-scheme attacks succeed 1000/1000" +
             (detail.empty() ? "" : " (failed:" + detail + ")"));
}

// 6: improved-scheme defenses hit their targets over 10,000 trials each.
void criterion_6() {
  attacks::AttackParams params;
  params.n = 4;
  params.t = 1;
  params.l = 16;
  const std::size_t trials = 10000;
  bool pass = true;
  std::string detail;

  auto run = [&](const std::string& id, const attacks::TrialFn& fn) {
    return attacks::measure_trials(id, attacks::Scheme::improved, trials, fn);
  };
  auto expect = [&](const std::string& id, double measured, double target,
                    double tol) {
    if (std::abs(measured - target) > tol + 1e-12) {
      pass = false;
      char buf[96];
      std::snprintf(buf, sizeof buf, " %s=%.4f(want %.4f)", id.c_str(), measured,
                    target);
      detail += buf;
    }
  };

  const auto blindness = run("blindness-break", [&](std::uint64_t t) {
    return attacks::blindness_trial(attacks::Scheme::improved, params, 606, t);
  });
  expect("blindness-success", blindness.success_rate, 0.0, 0.0);

  const auto substitute = run("charlie-substitute", [&](std::uint64_t t) {
    return attacks::charlie_substitute_trial(attacks::Scheme::improved, params,
                                             607, t);
  });
  expect("substitute-detection", substitute.detection_rate, 1.0, 0.0);

  const auto intercept = run("alice-forge", [&](std::uint64_t t) {
    return attacks::intercept_resend_trial(params, 608, t);
  });
  expect("decoy-detection", intercept.detection_rate,
         1.0 - std::pow(0.75, params.l), 0.03);

  const double b2 = params.basis.b * params.basis.b;
  const double c2 = params.basis.c * params.basis.c;
  const auto tx = run("eve-tamper-x", [&](std::uint64_t t) {
    return attacks::eve_bit_tamper_trial(params, attacks::TamperType::x, 609, t);
  });
  expect("x-detection", tx.detection_rate, (b2 - c2) * (b2 - c2), 0.03);
  const auto tz = run("eve-tamper-z", [&](std::uint64_t t) {
    return attacks::eve_bit_tamper_trial(params, attacks::TamperType::z, 610, t);
  });
  expect("z-detection", tz.detection_rate, 4.0 * b2 * c2, 0.03);
  const auto ty = run("eve-tamper-y", [&](std::uint64_t t) {
    return attacks::eve_bit_tamper_trial(params, attacks::TamperType::y, 611, t);
  });
  expect("y-detection", ty.detection_rate, 1.0, 0.0);

  report(6, pass,
         "improved-scheme defense statistics over 10,000 trials each" +
             (detail.empty() ? "" : " (off:" + detail + ")"));
}

// 7: no key-independent Pauli commutes through the keyed pad for any of
// X, Y, Z tampers on both basis messages; the plain pad has one for each.
void criterion_7() {
  const auto basis = proto::default_basis();
  const StateVector messages[2] = {prepare_message_qubit_improved(0, basis),
                                   prepare_message_qubit_improved(1, basis)};
  const PauliOp paulis[3] = {PauliOp::X, PauliOp::Y, PauliOp::Z};

  auto commutes = [&](const Mat2& pad, PauliOp v, PauliOp u) {
    for (const auto& psi : messages) {
      // target: applying u to the ciphertext == encrypting the tampered state
      auto tampered = psi;
      tampered.apply_pauli(0, v);
      StateVector lhs(1, {pad.a * tampered.amplitude(0) + pad.b * tampered.amplitude(1),
                          pad.c * tampered.amplitude(0) + pad.d * tampered.amplitude(1)});
      StateVector enc(1, {pad.a * psi.amplitude(0) + pad.b * psi.amplitude(1),
                          pad.c * psi.amplitude(0) + pad.d * psi.amplitude(1)});
      enc.apply_pauli(0, u);
      if (!states_equal_up_to_phase(enc, lhs, 1e-9)) return false;
    }
    return true;
  };

  bool improved_blocked = true;
  for (PauliOp v : paulis) {
    for (PauliOp u : {PauliOp::I, PauliOp::X, PauliOp::Y, PauliOp::Z}) {
      bool works_for_all_keys = true;
      for (int key = 0; key < 16; ++key) {
        const Mat2 pad = crypto::improved_pad_operator(
            key & 1, (key >> 1) & 1, (key >> 2) & 1, (key >> 3) & 1);
        if (!commutes(pad, v, u)) {
          works_for_all_keys = false;
          break;
        }
      }
      if (works_for_all_keys) improved_blocked = false;
    }
  }

  // positive control: the plain Pauli pad is forgeable this way
  bool basic_forgeable = true;
  for (PauliOp v : paulis) {
    bool found = false;
    for (PauliOp u : {PauliOp::I, PauliOp::X, PauliOp::Y, PauliOp::Z}) {
      bool works_for_all_keys = true;
      for (int key = 0; key < 4; ++key) {
        Mat2 pad{1, 0, 0, 1};
        if (key & 1) pad = pauli_matrix(PauliOp::Z) * pad;
        if (key & 2) pad = pauli_matrix(PauliOp::X) * pad;
        if (!commutes(pad, v, u)) {
          works_for_all_keys = false;
          break;
        }
      }
      if (works_for_all_keys) found = true;
    }
    if (!found) basic_forgeable = false;
  }

  report(7, improved_blocked && basic_forgeable,
         "no key-independent Pauli commutes through the keyed T pad");
}

// 8: 100 sequential runs off one key ring, fresh nonces, all accept, all
// derived pads pairwise distinct.
void criterion_8() {
  Rng key_rng(808);
  const auto ring = ImprovedKeyRing::generate(8, 3, key_rng);
  bool all_accept = true;
  std::set<std::string> pads;
  std::size_t total = 0;
  for (std::uint64_t run = 0; run < 100; ++run) {
    net::World world(809, run);
    proto::ImprovedProtocol protocol(world, proto::ImpConfig{}, ring);
    const auto res = protocol.run();
    if (!res.combined_accepted) all_accept = false;
    for (const auto& pad : res.derived_pads) {
      pads.insert(pad.str());
      ++total;
    }
  }
  report(8, all_accept && pads.size() == total && total >= 100,
         "100 fixed-ring runs accept with pairwise-distinct derived pads");
}

// 9: identical configs replay byte-identical structured reports.
void criterion_9() {
  bool pass = true;
  for (const char* scheme : {"original", "improved"}) {
    scenario::ScenarioConfig cfg;
    cfg.scheme = scheme;
    cfg.scenario = std::string(scheme) == "original" ? "eve-forge" : "charlie-substitute";
    cfg.trials = 50;
    cfg.seed = 909;
    cfg.jobs = 1;
    const auto first = scenario::run_scenario(cfg).dump(2);
    cfg.jobs = 4;  // worker count must not leak into the report
    const auto second = scenario::run_scenario(cfg).dump(2);
    if (first != second) pass = false;
  }
  report(9, pass, "structured reports replay byte for byte");
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  if (failures > 0) {
    std::printf("%d criterion(s) failed\n", failures);
    return 1;
  }
  std::printf("all criteria passed\n");
  return 0;
}
