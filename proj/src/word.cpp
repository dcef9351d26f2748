#include "pirc/word.hpp"

#include <bit>

#include "pirc/error.hpp"

namespace pirc {

namespace {

constexpr std::size_t kBlockBits = 64;

std::size_t block_count(std::size_t length) { return (length + kBlockBits - 1) / kBlockBits; }

std::uint64_t bit_mask(std::size_t pos) {
  // pos is 1-based; position 1 sits in bit 63 of block 0.
  return std::uint64_t{1} << (kBlockBits - 1 - (pos - 1) % kBlockBits);
}

}  // namespace

Word::Word(std::size_t length) : length_(length), blocks_(block_count(length), 0) {
  if (length == 0) throw UsageError("word length must be at least 1");
}

Word Word::from_string(std::string_view bits) {
  Word w(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1') {
      w.set(i + 1);
    } else if (bits[i] != '0') {
      throw InputError("word contains a character other than '0'/'1': " + std::string(bits));
    }
  }
  return w;
}

Word Word::from_value(std::uint64_t value, std::size_t length) {
  if (length > 64) throw UsageError("from_value supports at most 64 bits");
  if (length < 64 && (value >> length) != 0) throw UsageError("value does not fit in word length");
  Word w(length);
  w.blocks_[0] = length == 64 ? value : value << (kBlockBits - length);
  return w;
}

Word Word::from_packed(Packed packed, std::size_t length) {
  if (length > kPackedBits) throw UsageError("packed words hold at most 64 bits");
  Word w(length);
  for (std::size_t p = 1; p <= length; ++p) {
    if ((packed >> (p - 1)) & 1U) w.set(p);
  }
  return w;
}

Word Word::ones(std::size_t length) {
  Word w(length);
  for (std::size_t p = 1; p <= length; ++p) w.set(p);
  return w;
}

Word Word::unit(std::size_t length, std::size_t pos) {
  Word w(length);
  w.set(pos);
  return w;
}

void Word::check_pos(std::size_t pos) const {
  if (pos < 1 || pos > length_) {
    throw UsageError("position " + std::to_string(pos) + " out of range 1.." + std::to_string(length_));
  }
}

void Word::check_same_length(const Word& other) const {
  if (other.length_ != length_) {
    throw UsageError("word length mismatch: " + std::to_string(length_) + " vs " +
                     std::to_string(other.length_));
  }
}

bool Word::get(std::size_t pos) const {
  check_pos(pos);
  return (blocks_[(pos - 1) / kBlockBits] & bit_mask(pos)) != 0;
}

void Word::set(std::size_t pos, bool value) {
  check_pos(pos);
  auto& b = blocks_[(pos - 1) / kBlockBits];
  if (value) {
    b |= bit_mask(pos);
  } else {
    b &= ~bit_mask(pos);
  }
}

void Word::flip(std::size_t pos) {
  check_pos(pos);
  blocks_[(pos - 1) / kBlockBits] ^= bit_mask(pos);
}

std::size_t Word::weight() const {
  std::size_t w = 0;
  for (auto b : blocks_) w += static_cast<std::size_t>(std::popcount(b));
  return w;
}

bool Word::is_zero() const {
  for (auto b : blocks_) {
    if (b != 0) return false;
  }
  return true;
}

bool Word::dot(const Word& other) const {
  check_same_length(other);
  std::uint64_t acc = 0;
  for (std::size_t i = 0; i < blocks_.size(); ++i) acc ^= blocks_[i] & other.blocks_[i];
  return (std::popcount(acc) & 1) != 0;
}

std::uint64_t Word::value() const {
  if (length_ > 64) throw UsageError("value() supports at most 64 bits");
  return length_ == 64 ? blocks_[0] : blocks_[0] >> (kBlockBits - length_);
}

Packed Word::packed() const {
  if (length_ > kPackedBits) throw UsageError("packed() supports at most 64 bits");
  Packed out = 0;
  for (std::size_t p = 1; p <= length_; ++p) {
    if (get(p)) out |= Packed{1} << (p - 1);
  }
  return out;
}

std::string Word::to_string() const {
  std::string s(length_, '0');
  for (std::size_t p = 1; p <= length_; ++p) {
    if (get(p)) s[p - 1] = '1';
  }
  return s;
}

Word Word::without(std::size_t pos) const {
  check_pos(pos);
  if (length_ == 1) throw UsageError("cannot delete the only position of a word");
  Word out(length_ - 1);
  std::size_t q = 1;
  for (std::size_t p = 1; p <= length_; ++p) {
    if (p == pos) continue;
    if (get(p)) out.set(q);
    ++q;
  }
  return out;
}

Word Word::with_appended(bool bit) const {
  Word out(length_ + 1);
  for (std::size_t i = 0; i < blocks_.size(); ++i) out.blocks_[i] = blocks_[i];
  if (bit) out.set(length_ + 1);
  return out;
}

Word& Word::operator^=(const Word& other) {
  check_same_length(other);
  for (std::size_t i = 0; i < blocks_.size(); ++i) blocks_[i] ^= other.blocks_[i];
  return *this;
}

Word& Word::operator&=(const Word& other) {
  check_same_length(other);
  for (std::size_t i = 0; i < blocks_.size(); ++i) blocks_[i] &= other.blocks_[i];
  return *this;
}

std::strong_ordering operator<=>(const Word& a, const Word& b) {
  if (auto c = a.length_ <=> b.length_; c != 0) return c;
  for (std::size_t i = 0; i < a.blocks_.size(); ++i) {
    if (auto c = a.blocks_[i] <=> b.blocks_[i]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

std::size_t hamming_distance(const Word& a, const Word& b) {
  if (a.size() != b.size()) {
    throw UsageError("hamming_distance: length mismatch " + std::to_string(a.size()) + " vs " +
                     std::to_string(b.size()));
  }
  std::size_t d = 0;
  auto ab = a.blocks();
  auto bb = b.blocks();
  for (std::size_t i = 0; i < ab.size(); ++i) d += static_cast<std::size_t>(std::popcount(ab[i] ^ bb[i]));
  return d;
}

std::vector<int> positions_of(Packed mask) {
  std::vector<int> out;
  while (mask != 0) {
    out.push_back(std::countr_zero(mask) + 1);
    mask &= mask - 1;
  }
  return out;
}

Packed mask_of(std::span<const int> positions) {
  Packed m = 0;
  for (int p : positions) {
    if (p < 1 || p > 64) throw UsageError("position " + std::to_string(p) + " outside 1..64");
    m |= Packed{1} << (p - 1);
  }
  return m;
}

bool position_set_less(Packed a, Packed b) {
  int ca = std::popcount(a);
  int cb = std::popcount(b);
  if (ca != cb) return ca < cb;
  Packed diff = a ^ b;
  if (diff == 0) return false;
  // The set holding the lowest differing position comes first.
  return (a & diff & (~diff + 1)) != 0;
}

}  // namespace pirc
