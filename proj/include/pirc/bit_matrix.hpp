#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "pirc/word.hpp"

namespace pirc {

// Dense matrix over GF(2), stored as bit-packed rows. Indices are 1-based.
class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(std::size_t rows, std::size_t cols);
  explicit BitMatrix(std::vector<Word> rows);

  static BitMatrix identity(std::size_t k);
  static BitMatrix from_strings(const std::vector<std::string>& rows);

  std::size_t rows() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }

  bool at(std::size_t r, std::size_t c) const { return rows_.at(r - 1).get(c); }
  void set(std::size_t r, std::size_t c, bool v = true) { rows_.at(r - 1).set(c, v); }

  const Word& row(std::size_t r) const { return rows_.at(r - 1); }
  const std::vector<Word>& row_words() const { return rows_; }
  Word column(std::size_t c) const;

  BitMatrix transpose() const;
  // [this | other]
  BitMatrix hconcat(const BitMatrix& other) const;
  BitMatrix with_column(const Word& column) const;

  std::size_t rank() const;

  // G * x for x of length cols(); result has length rows().
  Word multiply(const Word& x) const;
  // a * G for a of length rows(); the encoding map of a generator matrix.
  Word left_multiply(const Word& a) const;

  std::vector<std::string> to_strings() const;

  friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

 private:
  std::size_t cols_ = 0;
  std::vector<Word> rows_;
};

// Reduced row echelon form with the row operations that produced it.
struct RowReduction {
  BitMatrix reduced;            // transform * original
  BitMatrix transform;          // invertible rows() x rows()
  std::vector<std::size_t> pivots;  // pivot column of reduced row i (1-based), one per nonzero row
};

RowReduction row_reduce(const BitMatrix& m);

// Solutions of G x = rhs: one particular solution and a basis of ker G.
struct LinearSolution {
  Word particular;
  std::vector<Word> kernel;
};

std::optional<LinearSolution> solve(const BitMatrix& g, const Word& rhs);

// Column combinations of G summing to the unit vector e_j (1-based j).
std::optional<LinearSolution> solve_unit(const BitMatrix& g, std::size_t j);

}  // namespace pirc
