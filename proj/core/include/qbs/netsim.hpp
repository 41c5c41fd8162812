#pragma once

#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "qbs/arena.hpp"
#include "qbs/bitstring.hpp"

namespace qbs::net {

using PartyId = std::string;

struct ClassicalPayload {
  Bitstring bits;
  std::string label;
};

/// Qubit ids moving between parties. The ids are handles into the world's
/// Arena; the payload carries no amplitudes, so channel traffic cannot copy
/// quantum state.
struct QuantumPayload {
  std::vector<QubitId> qubits;
  std::string label;
};

using Payload = std::variant<ClassicalPayload, QuantumPayload>;

const std::string& payload_label(const Payload& p);

struct TranscriptEvent {
  std::uint64_t time = 0;
  PartyId from;
  PartyId to;
  std::string kind;  // "classical" | "quantum" | "announce"
  std::string digest;
};

/// Append-only record of all channel traffic and announcements.
class Transcript {
 public:
  void record(const PartyId& from, const PartyId& to, const std::string& kind,
              const std::string& digest);
  const std::vector<TranscriptEvent>& events() const { return events_; }

  /// One line per event: "time from to kind digest".
  std::string export_lines() const;
  std::string digest() const;

 private:
  std::vector<TranscriptEvent> events_;
  std::uint64_t clock_ = 0;
};

/// Globally readable, append-only announcements. There is deliberately no
/// mutation interface.
class PublicBoard {
 public:
  struct Entry {
    PartyId who;
    std::string label;
    Bitstring value;
  };

  explicit PublicBoard(Transcript* transcript) : transcript_(transcript) {}

  void announce(const PartyId& who, const std::string& label,
                const Bitstring& value);
  const std::vector<Entry>& entries() const { return entries_; }
  const Bitstring& read(const std::string& label) const;

 private:
  std::vector<Entry> entries_;
  Transcript* transcript_;
};

/// Point-to-point ordered channels with optional per-channel taps. A tap sees
/// each payload once, before delivery, and may mutate or replace it --
/// intercept-resend, not copy.
class Network {
 public:
  using Tap = std::function<void(Payload&)>;

  explicit Network(Transcript* transcript) : transcript_(transcript) {}

  void send(const PartyId& from, const PartyId& to, Payload payload);
  Payload recv(const PartyId& from, const PartyId& to);

  void set_tap(const PartyId& from, const PartyId& to, Tap tap);
  void clear_tap(const PartyId& from, const PartyId& to);

 private:
  std::map<std::pair<PartyId, PartyId>, std::deque<Payload>> queues_;
  std::map<std::pair<PartyId, PartyId>, Tap> taps_;
  Transcript* transcript_;
};

/// One protocol world: quantum store, channels, board, transcript, rng.
struct World {
  explicit World(std::uint64_t seed)
      : rng(seed), net(&transcript), board(&transcript) {}
  World(std::uint64_t seed, std::uint64_t stream)
      : rng(seed, stream), net(&transcript), board(&transcript) {}

  Arena arena;
  Rng rng;
  Transcript transcript;
  Network net;
  PublicBoard board;
};

}  // namespace qbs::net
