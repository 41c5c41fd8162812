#include <doctest.h>

#include "qbs/netsim.hpp"

using namespace qbs;
using namespace qbs::net;

TEST_CASE("channels deliver in fifo order per pair") {
  Transcript transcript;
  Network net(&transcript);
  net.send("a", "b", ClassicalPayload{Bitstring::parse("1"), "first"});
  net.send("a", "b", ClassicalPayload{Bitstring::parse("0"), "second"});
  net.send("a", "c", ClassicalPayload{Bitstring::parse("11"), "other"});
  CHECK(payload_label(net.recv("a", "b")) == "first");
  CHECK(payload_label(net.recv("a", "b")) == "second");
  CHECK(payload_label(net.recv("a", "c")) == "other");
}

TEST_CASE("recv on an empty channel throws") {
  Transcript transcript;
  Network net(&transcript);
  CHECK_THROWS(net.recv("a", "b"));
  net.send("a", "b", ClassicalPayload{Bitstring::parse("1"), "x"});
  net.recv("a", "b");
  CHECK_THROWS(net.recv("a", "b"));
}

TEST_CASE("taps run before delivery and may rewrite the payload") {
  Transcript transcript;
  Network net(&transcript);
  net.set_tap("a", "b", [](Payload& p) {
    std::get<ClassicalPayload>(p).bits = Bitstring::parse("0000");
  });
  net.send("a", "b", ClassicalPayload{Bitstring::parse("1111"), "x"});
  CHECK(std::get<ClassicalPayload>(net.recv("a", "b")).bits.str() == "0000");
  net.clear_tap("a", "b");
  net.send("a", "b", ClassicalPayload{Bitstring::parse("1111"), "x"});
  CHECK(std::get<ClassicalPayload>(net.recv("a", "b")).bits.str() == "1111");
}

TEST_CASE("transcript lines are ordered and digestible") {
  Transcript transcript;
  Network net(&transcript);
  net.send("a", "b", ClassicalPayload{Bitstring::parse("1"), "x"});
  net.send("b", "a", QuantumPayload{{1, 2, 3}, "reg"});
  const auto lines = transcript.export_lines();
  CHECK(lines.find("0 a b classical") == 0);
  CHECK(lines.find("1 b a quantum q3:reg") != std::string::npos);
  const auto d1 = transcript.digest();
  net.send("a", "b", ClassicalPayload{Bitstring::parse("0"), "y"});
  CHECK(transcript.digest() != d1);
}

TEST_CASE("transcript digest depends on the payload bits") {
  Transcript t1, t2;
  Network n1(&t1), n2(&t2);
  n1.send("a", "b", ClassicalPayload{Bitstring::parse("10"), "x"});
  n2.send("a", "b", ClassicalPayload{Bitstring::parse("01"), "x"});
  CHECK(t1.digest() != t2.digest());
}

TEST_CASE("board entries are append-only and readable by label") {
  Transcript transcript;
  PublicBoard board(&transcript);
  board.announce("charlie", "S-1", Bitstring::parse("1100"));
  board.announce("u1", "R-1", Bitstring::parse("0011"));
  CHECK(board.read("S-1").str() == "1100");
  CHECK(board.read("R-1").str() == "0011");
  CHECK(board.entries().size() == 2);
  CHECK_THROWS(board.read("missing"));
  CHECK(transcript.events().size() == 2);
  CHECK(transcript.events()[0].kind == "announce");
}

TEST_CASE("identical worlds replay identical transcripts") {
  auto run = [](std::uint64_t seed) {
    World w(seed);
    w.net.send("a", "b", ClassicalPayload{w.rng.bits(16), "x"});
    w.net.send("b", "c", ClassicalPayload{w.rng.bits(8), "y"});
    return w.transcript.digest();
  };
  CHECK(run(42) == run(42));
  CHECK(run(42) != run(43));
}
