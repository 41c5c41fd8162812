#include <doctest.h>

#include <set>

#include "qbs/protocol_improved.hpp"

using namespace qbs;
using namespace qbs::proto;

TEST_CASE("honest runs accept across seeds") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    net::World world(seed);
    ImprovedProtocol protocol(world, ImpConfig{});
    const auto res = protocol.run();
    CHECK(res.bob_message == res.message);
    CHECK(res.combined_accepted);
    CHECK(res.combined_message_ok);
    CHECK(res.combined_set_ok);
    REQUIRE(res.individual.size() == 3);
    for (const auto& s : res.individual) {
      CHECK(s.channel_ok);
      CHECK(s.message_ok);
      CHECK(s.digest_ok);
      CHECK(s.accepted);
      CHECK(s.m_star == res.message);
      CHECK(s.beta.size() == 16);
      CHECK(s.s_prime.size() == 48);
    }
  }
}

TEST_CASE("blinded transport never exposes m on the wire") {
  net::World world(5);
  ImpConfig cfg;
  cfg.message = Bitstring::parse("10110100");
  cfg.blind = Bitstring::parse("01100011");
  ImprovedProtocol protocol(world, cfg);
  const auto res = protocol.run();
  CHECK(res.message.str() == "10110100");
  CHECK(res.blind.str() == "01100011");
  CHECK(res.bob_message == res.message);
  CHECK(res.combined_accepted);
}

TEST_CASE("signature commitments verify through the oracle") {
  net::World world(8);
  ImprovedProtocol protocol(world, ImpConfig{});
  const auto res = protocol.run();
  const VerificationOracle oracle(&protocol.keys(), 8);
  for (std::size_t i = 0; i < res.individual.size(); ++i) {
    const auto& s = res.individual[i];
    CHECK(s.masked_beta ==
          (s.beta ^ protocol.keys().k_cu[i].slice(0, 16)));
    CHECK(oracle.expected_digest(static_cast<int>(i), s.masked_beta, s.reveal) ==
          s.digest);
    CHECK(s.s_prime == s.masked_beta + s.digest);
  }
}

TEST_CASE("derived pads are fresh every run even with a fixed key ring") {
  Rng key_rng(99);
  const auto ring = ImprovedKeyRing::generate(8, 3, key_rng);
  std::set<std::string> pads;
  std::size_t total = 0;
  for (std::uint64_t run = 0; run < 10; ++run) {
    net::World world(1000, run);
    ImprovedProtocol protocol(world, ImpConfig{}, ring);
    const auto res = protocol.run();
    CHECK(res.combined_accepted);
    for (const auto& pad : res.derived_pads) {
      pads.insert(pad.str());
      ++total;
    }
  }
  CHECK(pads.size() == total);
}

TEST_CASE("board carries the reveals") {
  net::World world(13);
  ImprovedProtocol protocol(world, ImpConfig{});
  const auto res = protocol.run();
  for (std::size_t i = 0; i < res.individual.size(); ++i) {
    const auto tag = std::to_string(i + 1);
    CHECK(world.board.read("S-" + tag) == res.individual[i].s_prime);
    CHECK(world.board.read("R-" + tag) == res.individual[i].reveal);
    CHECK(world.board.read("multi-S-" + tag) == res.individual[i].s_prime);
  }
}

TEST_CASE("config validation") {
  net::World world(1);
  ImpConfig balanced;
  balanced.basis = EncodingBasis::x_basis();
  CHECK_THROWS(ImprovedProtocol(world, balanced));

  ImpConfig bad_len;
  bad_len.message = Bitstring::parse("1");
  CHECK_THROWS(ImprovedProtocol(world, bad_len));

  ImpConfig bad_blind;
  bad_blind.blind = Bitstring::parse("111");
  CHECK_THROWS(ImprovedProtocol(world, bad_blind));
}

TEST_CASE("same seed replays the same transcript") {
  auto digest = [](std::uint64_t seed) {
    net::World world(seed);
    ImprovedProtocol protocol(world, ImpConfig{});
    return protocol.run().transcript_digest;
  };
  CHECK(digest(55) == digest(55));
  CHECK(digest(55) != digest(56));
}

TEST_CASE("small shape works") {
  net::World world(2);
  ImpConfig cfg;
  cfg.n = 1;
  cfg.t = 1;
  cfg.l = 4;
  ImprovedProtocol protocol(world, cfg);
  const auto res = protocol.run();
  CHECK(res.combined_accepted);
}
