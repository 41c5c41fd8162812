#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace qbs {

/// Ordered sequence of classical bits. XOR, concatenation and slicing are the
/// workhorses of both signature schemes. Serialization packs bits big-endian
/// within each byte and is length-prefixed so unequal-length strings never
/// collide as byte sequences.
class Bitstring {
 public:
  Bitstring() = default;
  explicit Bitstring(std::vector<std::uint8_t> bits);

  static Bitstring zeros(std::size_t count);
  static Bitstring ones(std::size_t count);
  /// Parse "1011"-style text.
  static Bitstring parse(std::string_view text);
  /// Big-endian fixed-width encoding of an integer.
  static Bitstring from_uint(std::uint64_t value, std::size_t width);

  std::size_t size() const { return bits_.size(); }
  bool empty() const { return bits_.empty(); }
  std::uint8_t bit(std::size_t i) const { return bits_.at(i); }
  void set_bit(std::size_t i, std::uint8_t value);
  void flip(std::size_t i);
  void append(std::uint8_t bit_value);

  Bitstring slice(std::size_t offset, std::size_t count) const;

  /// Bitwise XOR; throws std::invalid_argument on length mismatch.
  Bitstring operator^(const Bitstring& other) const;
  /// Concatenation.
  Bitstring operator+(const Bitstring& other) const;
  bool operator==(const Bitstring& other) const = default;

  bool all_zero() const;
  std::uint64_t to_uint() const;
  std::string str() const;

  /// Bits packed big-endian within bytes, zero-padded at the tail.
  std::vector<std::uint8_t> to_bytes() const;
  /// 8-byte big-endian bit-length prefix followed by packed bytes.
  std::vector<std::uint8_t> serialize() const;

 private:
  std::vector<std::uint8_t> bits_;
};

}  // namespace qbs
