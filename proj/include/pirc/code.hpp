#pragma once

#include <cstddef>
#include <cstdint>
#include <istream>
#include <ostream>
#include <vector>

#include "pirc/bit_matrix.hpp"
#include "pirc/parallel.hpp"
#include "pirc/word.hpp"

namespace pirc {

// A set of distinct words of a common length, kept sorted ascending.
class Code {
 public:
  Code() = default;
  // Throws on duplicates or mixed lengths.
  Code(std::size_t length, std::vector<Word> words);

  static Code from_values(std::size_t length, const std::vector<std::uint64_t>& values);

  std::size_t length() const { return length_; }
  std::size_t size() const { return words_.size(); }
  const std::vector<Word>& words() const { return words_; }
  bool contains(const Word& w) const;

  // k with size() == 2^k, or -1.
  int combinatorial_dimension() const;

  std::vector<std::uint64_t> values() const;
  std::vector<Packed> packed() const;

  friend bool operator==(const Code&, const Code&) = default;

 private:
  std::size_t length_ = 0;
  std::vector<Word> words_;
};

// Linear code given by a full-row-rank generator matrix.
class LinearCode {
 public:
  explicit LinearCode(BitMatrix generator);

  const BitMatrix& generator() const { return generator_; }
  std::size_t length() const { return generator_.cols(); }
  std::size_t dimension() const { return generator_.rows(); }

  Word encode(const Word& data) const { return generator_.left_multiply(data); }
  // Explicit span; dimension must be at most 24.
  Code span() const;
  // weights[w] = number of codewords of weight w (dimension <= 24).
  std::vector<std::uint64_t> weight_distribution() const;

 private:
  BitMatrix generator_;
};

inline constexpr std::size_t kMaxEnumeratedDimension = 24;

// Minimum pairwise distance; the code needs at least two words.
std::size_t min_distance(const Code& code, Parallelism par = {});
// Minimum nonzero weight of the span.
std::size_t min_distance(const LinearCode& code);

namespace serial {
std::size_t min_distance(const Code& code);
}

Code extend_even_parity(const Code& code);
LinearCode extend_even_parity(const LinearCode& code);

struct Punctured {
  Code code;
  bool size_dropped = false;
};

Punctured puncture(const Code& code, std::size_t pos);

// Code file: one codeword per line, '#' comment lines, blank lines ignored.
Code read_code(std::istream& in);
void write_code(std::ostream& out, const Code& code);
// Matrix file: one row of ASCII bits per line.
BitMatrix read_matrix(std::istream& in);
void write_matrix(std::ostream& out, const BitMatrix& m);

}  // namespace pirc
