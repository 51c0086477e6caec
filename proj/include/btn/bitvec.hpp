#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace btn {

/// Fixed-length vector of bits. Bit 0 is the most significant position in
/// integer conversions: int_value() of b equals sum of b[i] * 2^(dim-1-i).
class BitVec {
public:
  BitVec() = default;

  explicit BitVec(std::size_t dim) : bits_(dim, 0) {}

  static BitVec from_string(std::string_view s) {
    BitVec v(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s[i] == '1')
        v.bits_[i] = 1;
      else if (s[i] != '0')
        throw std::invalid_argument("BitVec: character '" + std::string(1, s[i]) +
                                    "' is not 0 or 1");
    }
    return v;
  }

  /// Binary representation of value over dim bits, most significant first.
  static BitVec from_int(std::uint64_t value, std::size_t dim) {
    if (dim > 64)
      throw std::invalid_argument("BitVec: from_int supports at most 64 bits");
    if (dim < 64 && (value >> dim) != 0)
      throw std::invalid_argument("BitVec: value does not fit in " + std::to_string(dim) +
                                  " bits");
    BitVec v(dim);
    for (std::size_t i = 0; i < dim; ++i)
      v.bits_[i] = static_cast<std::uint8_t>((value >> (dim - 1 - i)) & 1u);
    return v;
  }

  std::size_t dim() const { return bits_.size(); }

  std::uint8_t operator[](std::size_t i) const { return bits_[i]; }

  void set(std::size_t i, std::uint8_t bit) { bits_.at(i) = bit ? 1 : 0; }

  std::uint64_t int_value() const {
    if (dim() > 64)
      throw std::logic_error("BitVec: int_value supports at most 64 bits");
    std::uint64_t v = 0;
    for (std::uint8_t b : bits_)
      v = (v << 1) | b;
    return v;
  }

  std::string to_string() const {
    std::string s(dim(), '0');
    for (std::size_t i = 0; i < dim(); ++i)
      if (bits_[i])
        s[i] = '1';
    return s;
  }

  const std::vector<std::uint8_t>& raw() const { return bits_; }

  bool operator==(const BitVec&) const = default;

private:
  std::vector<std::uint8_t> bits_;
};

inline std::size_t hamming(const BitVec& a, const BitVec& b) {
  if (a.dim() != b.dim())
    throw std::invalid_argument("hamming: dimension mismatch (" + std::to_string(a.dim()) +
                                " vs " + std::to_string(b.dim()) + ")");
  std::size_t d = 0;
  for (std::size_t i = 0; i < a.dim(); ++i)
    d += a[i] != b[i];
  return d;
}

inline BitVec operator^(const BitVec& a, const BitVec& b) {
  if (a.dim() != b.dim())
    throw std::invalid_argument("BitVec xor: dimension mismatch");
  BitVec r(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    r.set(i, a[i] ^ b[i]);
  return r;
}

} // namespace btn
