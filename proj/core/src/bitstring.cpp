#include "qbs/bitstring.hpp"

#include <stdexcept>

namespace qbs {

Bitstring::Bitstring(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
  for (auto b : bits_) {
    if (b > 1) throw std::invalid_argument("Bitstring: values must be 0 or 1");
  }
}

Bitstring Bitstring::zeros(std::size_t count) {
  return Bitstring(std::vector<std::uint8_t>(count, 0));
}

Bitstring Bitstring::ones(std::size_t count) {
  return Bitstring(std::vector<std::uint8_t>(count, 1));
}

Bitstring Bitstring::parse(std::string_view text) {
  std::vector<std::uint8_t> bits;
  bits.reserve(text.size());
  for (char c : text) {
    if (c == '0') {
      bits.push_back(0);
    } else if (c == '1') {
      bits.push_back(1);
    } else {
      throw std::invalid_argument("Bitstring::parse: expected only '0'/'1'");
    }
  }
  return Bitstring(std::move(bits));
}

Bitstring Bitstring::from_uint(std::uint64_t value, std::size_t width) {
  std::vector<std::uint8_t> bits(width, 0);
  for (std::size_t i = 0; i < width; ++i) {
    bits[width - 1 - i] = static_cast<std::uint8_t>((value >> i) & 1u);
  }
  return Bitstring(std::move(bits));
}

void Bitstring::set_bit(std::size_t i, std::uint8_t value) {
  if (value > 1) throw std::invalid_argument("Bitstring::set_bit: value must be 0 or 1");
  bits_.at(i) = value;
}

void Bitstring::flip(std::size_t i) { bits_.at(i) ^= 1u; }

void Bitstring::append(std::uint8_t bit_value) {
  if (bit_value > 1) throw std::invalid_argument("Bitstring::append: value must be 0 or 1");
  bits_.push_back(bit_value);
}

Bitstring Bitstring::slice(std::size_t offset, std::size_t count) const {
  if (offset + count > bits_.size()) {
    throw std::out_of_range("Bitstring::slice: range out of bounds");
  }
  return Bitstring(std::vector<std::uint8_t>(bits_.begin() + offset,
                                             bits_.begin() + offset + count));
}

Bitstring Bitstring::operator^(const Bitstring& other) const {
  if (size() != other.size()) {
    throw std::invalid_argument("Bitstring: XOR requires equal lengths");
  }
  std::vector<std::uint8_t> out(size());
  for (std::size_t i = 0; i < size(); ++i) out[i] = bits_[i] ^ other.bits_[i];
  return Bitstring(std::move(out));
}

Bitstring Bitstring::operator+(const Bitstring& other) const {
  std::vector<std::uint8_t> out = bits_;
  out.insert(out.end(), other.bits_.begin(), other.bits_.end());
  return Bitstring(std::move(out));
}

bool Bitstring::all_zero() const {
  for (auto b : bits_) {
    if (b) return false;
  }
  return true;
}

std::uint64_t Bitstring::to_uint() const {
  if (size() > 64) throw std::invalid_argument("Bitstring::to_uint: too wide");
  std::uint64_t v = 0;
  for (auto b : bits_) v = (v << 1) | b;
  return v;
}

std::string Bitstring::str() const {
  std::string s;
  s.reserve(size());
  for (auto b : bits_) s.push_back(b ? '1' : '0');
  return s;
}

std::vector<std::uint8_t> Bitstring::to_bytes() const {
  std::vector<std::uint8_t> out((size() + 7) / 8, 0);
  for (std::size_t i = 0; i < size(); ++i) {
    if (bits_[i]) out[i / 8] |= static_cast<std::uint8_t>(0x80u >> (i % 8));
  }
  return out;
}

std::vector<std::uint8_t> Bitstring::serialize() const {
  std::vector<std::uint8_t> out;
  const std::uint64_t len = size();
  for (int i = 7; i >= 0; --i) {
    out.push_back(static_cast<std::uint8_t>((len >> (8 * i)) & 0xFFu));
  }
  auto packed = to_bytes();
  out.insert(out.end(), packed.begin(), packed.end());
  return out;
}

}  // namespace qbs
