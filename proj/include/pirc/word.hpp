#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace pirc {

// Internal fast form for words and position sets of length <= 64:
// bit (p-1) holds position p.
using Packed = std::uint64_t;

inline constexpr std::size_t kPackedBits = 64;

// Fixed-length binary vector. Positions are 1-based. Storage is bit-packed
// with position 1 in the most significant bit of the first block, so the
// block-wise comparison orders equal-length words as integers.
class Word {
 public:
  Word() = default;
  explicit Word(std::size_t length);

  static Word from_string(std::string_view bits);
  // `value` read as an integer with position 1 most significant.
  static Word from_value(std::uint64_t value, std::size_t length);
  static Word from_packed(Packed packed, std::size_t length);
  static Word ones(std::size_t length);
  static Word unit(std::size_t length, std::size_t pos);

  std::size_t size() const { return length_; }
  bool get(std::size_t pos) const;
  void set(std::size_t pos, bool value = true);
  void flip(std::size_t pos);

  std::size_t weight() const;
  bool is_zero() const;
  // Parity of the inner product.
  bool dot(const Word& other) const;

  std::uint64_t value() const;
  Packed packed() const;
  std::string to_string() const;

  // Drops position `pos`; length shrinks by one.
  Word without(std::size_t pos) const;
  Word with_appended(bool bit) const;

  Word& operator^=(const Word& other);
  Word& operator&=(const Word& other);
  friend Word operator^(Word a, const Word& b) { return a ^= b; }
  friend Word operator&(Word a, const Word& b) { return a &= b; }

  friend bool operator==(const Word& a, const Word& b) = default;
  // Shorter words first; equal lengths compare as integers.
  friend std::strong_ordering operator<=>(const Word& a, const Word& b);

  std::span<const std::uint64_t> blocks() const { return blocks_; }

 private:
  void check_pos(std::size_t pos) const;
  void check_same_length(const Word& other) const;

  std::size_t length_ = 0;
  std::vector<std::uint64_t> blocks_;
};

std::size_t hamming_distance(const Word& a, const Word& b);

// 1-based positions of the set bits of a packed word.
std::vector<int> positions_of(Packed mask);
Packed mask_of(std::span<const int> positions);

// Order on position sets: by size, then lexicographic on sorted positions.
bool position_set_less(Packed a, Packed b);

}  // namespace pirc
