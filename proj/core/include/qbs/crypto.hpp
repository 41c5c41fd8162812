#pragma once

#include <span>
#include <string>
#include <vector>

#include "qbs/arena.hpp"
#include "qbs/bitstring.hpp"

namespace qbs::crypto {

/// Classical one-time pad: bitwise XOR, self-inverse.
Bitstring classical_otp(const Bitstring& msg, const Bitstring& key);

/// Basic quantum one-time pad: qubit j gets X^{k(2j)} Z^{k(2j+1)} with the
/// Z factor applied first. Key length must be twice the qubit count.
void qotp_basic_encrypt(Arena& arena, std::span<const QubitId> qubits,
                        const Bitstring& key);
void qotp_basic_decrypt(Arena& arena, std::span<const QubitId> qubits,
                        const Bitstring& key);

/// Improved quantum one-time pad: per qubit, Z, X, T, Z, X keyed by four key
/// bits (rightmost operator first). The fixed T rotation is what stops Pauli
/// tampering from commuting through. Key length must be 4x the qubit count.
void qotp_improved_encrypt(Arena& arena, std::span<const QubitId> qubits,
                           const Bitstring& key);
void qotp_improved_decrypt(Arena& arena, std::span<const QubitId> qubits,
                           const Bitstring& key);

/// The per-qubit improved-pad operator for a 4-bit key, as a single matrix.
Mat2 improved_pad_operator(int z1, int x1, int z2, int x2);

/// Deterministic hash onto `out_bits` bits: SHA-256 over the length-prefixed
/// input, counter-mode expanded and truncated.
Bitstring hash_digest(const Bitstring& input, std::size_t out_bits);

/// H(K || r), the nonce-derived pad that makes shared keys reusable.
Bitstring derive_key(const Bitstring& key, const Bitstring& nonce,
                     std::size_t out_bits);

/// Concatenation of six derived pads, one per nonce component.
Bitstring hash_vector_key(const Bitstring& key,
                          std::span<const Bitstring> nonces,
                          std::size_t out_bits_each);

/// One computational-basis qubit per bit.
std::vector<QubitId> encode_classical(Arena& arena, const Bitstring& bits);
/// Computational measurement of each qubit (consumes them).
Bitstring decode_classical(Arena& arena, std::span<const QubitId> qubits,
                           Rng& rng);

std::string sha256_hex(std::span<const std::uint8_t> data);

}  // namespace qbs::crypto
