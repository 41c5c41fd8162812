#include <doctest.h>
#include <cmath>

#include "qbs/arena.hpp"

using namespace qbs;

TEST_CASE("add and apply on singles") {
  Arena arena;
  const auto id = arena.add_single(StateVector::single(1.0, 0.0));
  CHECK(arena.alive(id));
  arena.apply_pauli(id, PauliOp::X);
  Rng rng(1);
  CHECK(arena.measure_computational(id, rng) == 1);
  CHECK(!arena.alive(id));
}

TEST_CASE("measurement without keep consumes the qubit") {
  Arena arena;
  Rng rng(2);
  const auto id = arena.add_single(StateVector::single(0.0, 1.0));
  arena.measure_computational(id, rng);
  CHECK(!arena.alive(id));
  CHECK_THROWS(arena.apply_pauli(id, PauliOp::X));
  CHECK_THROWS(arena.measure_computational(id, rng));
}

TEST_CASE("keep leaves the qubit alive") {
  Arena arena;
  Rng rng(3);
  const auto id = arena.add_single(StateVector::single(0.0, 1.0));
  CHECK(arena.measure_computational(id, rng, true) == 1);
  CHECK(arena.alive(id));
  CHECK(arena.measure_computational(id, rng) == 1);
}

TEST_CASE("groups merge lazily on joint operations") {
  Arena arena;
  Rng rng(4);
  const auto a = arena.add_single(StateVector::single(1.0, 0.0));
  const auto pair = arena.add(prepare_epr());
  // Bell measurement across two groups forces a merge
  const auto outcome = arena.bell_measure(a, pair[0], rng);
  (void)outcome;
  CHECK(!arena.alive(a));
  CHECK(!arena.alive(pair[0]));
  CHECK(arena.alive(pair[1]));
}

TEST_CASE("entangled partners stay correlated") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Arena arena;
    Rng rng(seed);
    const auto pair = arena.add(prepare_epr());
    const int first = arena.measure_computational(pair[0], rng);
    const int second = arena.measure_computational(pair[1], rng);
    CHECK(first == second);
  }
}

TEST_CASE("forced bell projection") {
  Arena arena;
  // |0>|+> overlaps every Bell outcome with probability 1/4
  const auto s = 1.0 / std::sqrt(2.0);
  const auto pair = arena.add(StateVector::single(1.0, 0.0)
                                  .tensor(StateVector::single(s, s)));
  const auto prob = arena.project_bell(pair[0], pair[1], BellOutcome{1, 0});
  REQUIRE(prob.has_value());
  CHECK(*prob == doctest::Approx(0.25));
  CHECK(arena.alive(pair[0]));
  CHECK(arena.alive(pair[1]));
  // collapsed onto an eigenstate: repeated measurement reproduces it
  Rng rng(7);
  CHECK(arena.bell_measure(pair[0], pair[1], rng) == BellOutcome{1, 0});
}

TEST_CASE("impossible branch reports nullopt") {
  Arena arena;
  const auto a = arena.add_single(StateVector::single(1.0, 0.0));
  const auto b = arena.add_single(StateVector::single(1.0, 0.0));
  // |00> has no overlap with the antisymmetric-support states
  CHECK(!arena.project_bell(a, b, BellOutcome{0, 1}).has_value());
  CHECK(!arena.project_bell(a, b, BellOutcome{1, 1}).has_value());
}

TEST_CASE("norm error stays tiny under long gate chains") {
  Arena arena;
  const auto id = arena.add_single(StateVector::single(1.0, 0.0));
  for (int i = 0; i < 2000; ++i) {
    arena.apply_t(id);
    arena.apply_t_dag(id);
    arena.apply_pauli(id, PauliOp::Y);
    arena.apply_pauli(id, PauliOp::Y);
  }
  CHECK(arena.total_norm_error() < 1e-9);
}
