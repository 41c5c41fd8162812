#include <doctest.h>

#include "qbs/protocol_original.hpp"

using namespace qbs;
using namespace qbs::proto;

TEST_CASE("honest runs accept across seeds") {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    net::World world(seed);
    OriginalProtocol protocol(world, OrigConfig{});
    const auto res = protocol.run();
    CHECK(res.bob_message == res.message);
    CHECK(res.combined_accepted);
    REQUIRE(res.individual.size() == 3);
    for (const auto& s : res.individual) {
      CHECK(s.accepted);
      CHECK(s.m_prime == res.message);
      CHECK(s.signer_signature.size() == 16);
      CHECK(s.collected_signature == s.signer_signature);
    }
  }
}

TEST_CASE("configured message is honored") {
  net::World world(7);
  OrigConfig cfg;
  cfg.message = Bitstring::parse("10110010");
  OriginalProtocol protocol(world, cfg);
  const auto res = protocol.run();
  CHECK(res.message.str() == "10110010");
  CHECK(res.bob_message.str() == "10110010");
  CHECK(res.combined_accepted);
}

TEST_CASE("message length must match n") {
  net::World world(7);
  OrigConfig cfg;
  cfg.n = 8;
  cfg.message = Bitstring::parse("101");
  CHECK_THROWS(OriginalProtocol(world, cfg));
}

TEST_CASE("serial numbers survive the encrypted transfer") {
  net::World world(9);
  OriginalProtocol protocol(world, OrigConfig{});
  const auto res = protocol.run();
  for (std::size_t i = 0; i < res.individual.size(); ++i) {
    CHECK(res.individual[i].serial.to_uint() == i + 1);
  }
}

TEST_CASE("same seed replays the same run") {
  auto digest = [](std::uint64_t seed) {
    net::World world(seed);
    OriginalProtocol protocol(world, OrigConfig{});
    return protocol.run().transcript_digest;
  };
  CHECK(digest(123) == digest(123));
  CHECK(digest(123) != digest(124));
}

TEST_CASE("small and larger shapes work") {
  net::World w1(3);
  OrigConfig small;
  small.n = 1;
  small.t = 1;
  OriginalProtocol p1(w1, small);
  CHECK(p1.run().combined_accepted);

  net::World w2(3);
  OrigConfig wide;
  wide.n = 12;
  wide.t = 5;
  OriginalProtocol p2(w2, wide);
  CHECK(p2.run().combined_accepted);
}

TEST_CASE("key shapes") {
  net::World world(4);
  OriginalProtocol protocol(world, OrigConfig{});
  const auto& keys = protocol.keys();
  CHECK(keys.k_ab.size() == 8);
  CHECK(keys.k_bc.size() == 8);
  CHECK(keys.k_ac.size() == 2 * 8 + 2 * kSerialBits);
  REQUIRE(keys.k_au.size() == 3);
  REQUIRE(keys.k_cu.size() == 3);
  CHECK(keys.k_au[0].size() == 4 * 8 + 2 * kSerialBits);
  CHECK(keys.k_cu[0].size() == 16);
}
