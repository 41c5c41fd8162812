#include "qbs/netsim.hpp"

#include <sstream>
#include <stdexcept>

#include "qbs/crypto.hpp"

namespace qbs::net {
namespace {

std::string payload_digest(const Payload& p) {
  if (const auto* c = std::get_if<ClassicalPayload>(&p)) {
    auto bytes = c->bits.serialize();
    bytes.insert(bytes.end(), c->label.begin(), c->label.end());
    return crypto::sha256_hex(bytes).substr(0, 16);
  }
  const auto& q = std::get<QuantumPayload>(p);
  // Quantum payloads are not observable; log only label and qubit count.
  std::ostringstream os;
  os << "q" << q.qubits.size() << ":" << q.label;
  return os.str();
}

}  // namespace

const std::string& payload_label(const Payload& p) {
  if (const auto* c = std::get_if<ClassicalPayload>(&p)) return c->label;
  return std::get<QuantumPayload>(p).label;
}

void Transcript::record(const PartyId& from, const PartyId& to,
                        const std::string& kind, const std::string& digest) {
  events_.push_back(TranscriptEvent{clock_++, from, to, kind, digest});
}

std::string Transcript::export_lines() const {
  std::ostringstream os;
  for (const auto& e : events_) {
    os << e.time << " " << e.from << " " << e.to << " " << e.kind << " "
       << e.digest << "\n";
  }
  return os.str();
}

std::string Transcript::digest() const {
  const std::string lines = export_lines();
  return crypto::sha256_hex(std::span<const std::uint8_t>(
      reinterpret_cast<const std::uint8_t*>(lines.data()), lines.size()));
}

void PublicBoard::announce(const PartyId& who, const std::string& label,
                           const Bitstring& value) {
  entries_.push_back(Entry{who, label, value});
  if (transcript_) {
    auto bytes = value.serialize();
    bytes.insert(bytes.end(), label.begin(), label.end());
    transcript_->record(who, "board", "announce",
                        crypto::sha256_hex(bytes).substr(0, 16));
  }
}

const Bitstring& PublicBoard::read(const std::string& label) const {
  for (const auto& e : entries_) {
    if (e.label == label) return e.value;
  }
  throw std::out_of_range("PublicBoard: no entry labeled " + label);
}

void Network::send(const PartyId& from, const PartyId& to, Payload payload) {
  auto tap = taps_.find({from, to});
  if (tap != taps_.end() && tap->second) tap->second(payload);
  if (transcript_) {
    const char* kind =
        std::holds_alternative<ClassicalPayload>(payload) ? "classical" : "quantum";
    transcript_->record(from, to, kind, payload_digest(payload));
  }
  queues_[{from, to}].push_back(std::move(payload));
}

Payload Network::recv(const PartyId& from, const PartyId& to) {
  auto it = queues_.find({from, to});
  if (it == queues_.end() || it->second.empty()) {
    throw std::runtime_error("Network::recv: no pending message " + from + "->" + to);
  }
  Payload p = std::move(it->second.front());
  it->second.pop_front();
  return p;
}

void Network::set_tap(const PartyId& from, const PartyId& to, Tap tap) {
  taps_[{from, to}] = std::move(tap);
}

void Network::clear_tap(const PartyId& from, const PartyId& to) {
  taps_.erase({from, to});
}

}  // namespace qbs::net
