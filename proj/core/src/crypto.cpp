#include "qbs/crypto.hpp"

#include <openssl/sha.h>

#include <array>
#include <stdexcept>

namespace qbs::crypto {
namespace {

std::array<std::uint8_t, SHA256_DIGEST_LENGTH> sha256(
    std::span<const std::uint8_t> data) {
  std::array<std::uint8_t, SHA256_DIGEST_LENGTH> out{};
  SHA256(data.data(), data.size(), out.data());
  return out;
}

void check_key(std::size_t qubits, std::size_t key_bits, std::size_t per_qubit) {
  if (key_bits != qubits * per_qubit) {
    throw std::invalid_argument("qotp: key length does not match qubit count");
  }
}

}  // namespace

Bitstring classical_otp(const Bitstring& msg, const Bitstring& key) {
  return msg ^ key;
}

void qotp_basic_encrypt(Arena& arena, std::span<const QubitId> qubits,
                        const Bitstring& key) {
  check_key(qubits.size(), key.size(), 2);
  for (std::size_t j = 0; j < qubits.size(); ++j) {
    if (key.bit(2 * j + 1)) arena.apply_pauli(qubits[j], PauliOp::Z);
    if (key.bit(2 * j)) arena.apply_pauli(qubits[j], PauliOp::X);
  }
}

void qotp_basic_decrypt(Arena& arena, std::span<const QubitId> qubits,
                        const Bitstring& key) {
  check_key(qubits.size(), key.size(), 2);
  for (std::size_t j = 0; j < qubits.size(); ++j) {
    if (key.bit(2 * j)) arena.apply_pauli(qubits[j], PauliOp::X);
    if (key.bit(2 * j + 1)) arena.apply_pauli(qubits[j], PauliOp::Z);
  }
}

void qotp_improved_encrypt(Arena& arena, std::span<const QubitId> qubits,
                           const Bitstring& key) {
  check_key(qubits.size(), key.size(), 4);
  for (std::size_t j = 0; j < qubits.size(); ++j) {
    if (key.bit(4 * j)) arena.apply_pauli(qubits[j], PauliOp::Z);
    if (key.bit(4 * j + 1)) arena.apply_pauli(qubits[j], PauliOp::X);
    arena.apply_t(qubits[j]);
    if (key.bit(4 * j + 2)) arena.apply_pauli(qubits[j], PauliOp::Z);
    if (key.bit(4 * j + 3)) arena.apply_pauli(qubits[j], PauliOp::X);
  }
}

void qotp_improved_decrypt(Arena& arena, std::span<const QubitId> qubits,
                           const Bitstring& key) {
  check_key(qubits.size(), key.size(), 4);
  for (std::size_t j = 0; j < qubits.size(); ++j) {
    if (key.bit(4 * j + 3)) arena.apply_pauli(qubits[j], PauliOp::X);
    if (key.bit(4 * j + 2)) arena.apply_pauli(qubits[j], PauliOp::Z);
    arena.apply_t_dag(qubits[j]);
    if (key.bit(4 * j + 1)) arena.apply_pauli(qubits[j], PauliOp::X);
    if (key.bit(4 * j)) arena.apply_pauli(qubits[j], PauliOp::Z);
  }
}

Mat2 improved_pad_operator(int z1, int x1, int z2, int x2) {
  Mat2 op{1, 0, 0, 1};
  auto pre = [&](const Mat2& g) { op = g * op; };
  if (z1) pre(pauli_matrix(PauliOp::Z));
  if (x1) pre(pauli_matrix(PauliOp::X));
  pre(t_matrix());
  if (z2) pre(pauli_matrix(PauliOp::Z));
  if (x2) pre(pauli_matrix(PauliOp::X));
  return op;
}

Bitstring hash_digest(const Bitstring& input, std::size_t out_bits) {
  Bitstring out;
  std::vector<std::uint8_t> block = input.serialize();
  block.resize(block.size() + 4);
  for (std::uint32_t counter = 0; out.size() < out_bits; ++counter) {
    for (int i = 0; i < 4; ++i) {
      block[block.size() - 4 + i] =
          static_cast<std::uint8_t>((counter >> (8 * (3 - i))) & 0xFFu);
    }
    const auto digest = sha256(block);
    for (std::size_t i = 0; i < digest.size() * 8 && out.size() < out_bits; ++i) {
      out.append((digest[i / 8] >> (7 - i % 8)) & 1u);
    }
  }
  return out;
}

Bitstring derive_key(const Bitstring& key, const Bitstring& nonce,
                     std::size_t out_bits) {
  return hash_digest(key + nonce, out_bits);
}

Bitstring hash_vector_key(const Bitstring& key,
                          std::span<const Bitstring> nonces,
                          std::size_t out_bits_each) {
  if (nonces.size() != 6) {
    throw std::invalid_argument("hash_vector_key: expected 6 nonce components");
  }
  Bitstring out;
  for (const auto& nonce : nonces) {
    out = out + derive_key(key, nonce, out_bits_each);
  }
  return out;
}

std::vector<QubitId> encode_classical(Arena& arena, const Bitstring& bits) {
  std::vector<QubitId> ids;
  ids.reserve(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    ids.push_back(arena.add_single(
        bits.bit(i) ? StateVector::single(0.0, 1.0) : StateVector::single(1.0, 0.0)));
  }
  return ids;
}

Bitstring decode_classical(Arena& arena, std::span<const QubitId> qubits,
                           Rng& rng) {
  Bitstring out;
  for (auto id : qubits) {
    out.append(static_cast<std::uint8_t>(arena.measure_computational(id, rng)));
  }
  return out;
}

std::string sha256_hex(std::span<const std::uint8_t> data) {
  const auto digest = sha256(data);
  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(digest.size() * 2);
  for (auto byte : digest) {
    out.push_back(hex[byte >> 4]);
    out.push_back(hex[byte & 0xF]);
  }
  return out;
}

}  // namespace qbs::crypto
