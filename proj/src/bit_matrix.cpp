#include "pirc/bit_matrix.hpp"

#include <utility>

#include "pirc/error.hpp"

namespace pirc {

BitMatrix::BitMatrix(std::size_t rows, std::size_t cols) : cols_(cols) {
  if (rows == 0 || cols == 0) throw UsageError("matrix dimensions must be positive");
  rows_.assign(rows, Word(cols));
}

BitMatrix::BitMatrix(std::vector<Word> rows) : rows_(std::move(rows)) {
  if (rows_.empty()) throw UsageError("matrix needs at least one row");
  cols_ = rows_.front().size();
  for (const auto& r : rows_) {
    if (r.size() != cols_) throw UsageError("matrix rows have different lengths");
  }
}

BitMatrix BitMatrix::identity(std::size_t k) {
  BitMatrix m(k, k);
  for (std::size_t i = 1; i <= k; ++i) m.set(i, i);
  return m;
}

BitMatrix BitMatrix::from_strings(const std::vector<std::string>& rows) {
  std::vector<Word> words;
  words.reserve(rows.size());
  for (const auto& r : rows) words.push_back(Word::from_string(r));
  return BitMatrix(std::move(words));
}

Word BitMatrix::column(std::size_t c) const {
  Word col(rows());
  for (std::size_t r = 1; r <= rows(); ++r) {
    if (at(r, c)) col.set(r);
  }
  return col;
}

BitMatrix BitMatrix::transpose() const {
  BitMatrix t(cols_, rows());
  for (std::size_t r = 1; r <= rows(); ++r) {
    for (std::size_t c = 1; c <= cols_; ++c) {
      if (at(r, c)) t.set(c, r);
    }
  }
  return t;
}

BitMatrix BitMatrix::hconcat(const BitMatrix& other) const {
  if (other.rows() != rows()) throw UsageError("hconcat: row count mismatch");
  BitMatrix out(rows(), cols_ + other.cols_);
  for (std::size_t r = 1; r <= rows(); ++r) {
    for (std::size_t c = 1; c <= cols_; ++c) out.set(r, c, at(r, c));
    for (std::size_t c = 1; c <= other.cols_; ++c) out.set(r, cols_ + c, other.at(r, c));
  }
  return out;
}

BitMatrix BitMatrix::with_column(const Word& column) const {
  if (column.size() != rows()) throw UsageError("with_column: length mismatch");
  std::vector<Word> out;
  out.reserve(rows());
  for (std::size_t r = 1; r <= rows(); ++r) out.push_back(row(r).with_appended(column.get(r)));
  return BitMatrix(std::move(out));
}

std::size_t BitMatrix::rank() const { return row_reduce(*this).pivots.size(); }

Word BitMatrix::multiply(const Word& x) const {
  if (x.size() != cols_) throw UsageError("multiply: vector length must equal column count");
  Word out(rows());
  for (std::size_t r = 1; r <= rows(); ++r) {
    if (rows_[r - 1].dot(x)) out.set(r);
  }
  return out;
}

Word BitMatrix::left_multiply(const Word& a) const {
  if (a.size() != rows()) throw UsageError("left_multiply: vector length must equal row count");
  Word out(cols_);
  for (std::size_t r = 1; r <= rows(); ++r) {
    if (a.get(r)) out ^= rows_[r - 1];
  }
  return out;
}

std::vector<std::string> BitMatrix::to_strings() const {
  std::vector<std::string> out;
  out.reserve(rows());
  for (const auto& r : rows_) out.push_back(r.to_string());
  return out;
}

RowReduction row_reduce(const BitMatrix& m) {
  std::vector<Word> a = m.row_words();
  std::vector<Word> t = BitMatrix::identity(m.rows()).row_words();
  std::vector<std::size_t> pivots;
  std::size_t next = 0;
  for (std::size_t c = 1; c <= m.cols() && next < a.size(); ++c) {
    std::size_t p = next;
    while (p < a.size() && !a[p].get(c)) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[next]);
    std::swap(t[p], t[next]);
    for (std::size_t r = 0; r < a.size(); ++r) {
      if (r != next && a[r].get(c)) {
        a[r] ^= a[next];
        t[r] ^= t[next];
      }
    }
    pivots.push_back(c);
    ++next;
  }
  return {BitMatrix(std::move(a)), BitMatrix(std::move(t)), std::move(pivots)};
}

std::optional<LinearSolution> solve(const BitMatrix& g, const Word& rhs) {
  if (rhs.size() != g.rows()) throw UsageError("solve: right-hand side length mismatch");
  auto red = row_reduce(g);
  Word target = red.transform.multiply(rhs);
  const std::size_t rank = red.pivots.size();
  for (std::size_t r = rank + 1; r <= g.rows(); ++r) {
    if (target.get(r)) return std::nullopt;
  }
  Word x(g.cols());
  for (std::size_t i = 0; i < rank; ++i) {
    if (target.get(i + 1)) x.set(red.pivots[i]);
  }
  std::vector<bool> is_pivot(g.cols() + 1, false);
  for (auto p : red.pivots) is_pivot[p] = true;
  std::vector<Word> kernel;
  for (std::size_t f = 1; f <= g.cols(); ++f) {
    if (is_pivot[f]) continue;
    Word b = Word::unit(g.cols(), f);
    for (std::size_t i = 0; i < rank; ++i) {
      if (red.reduced.at(i + 1, f)) b.set(red.pivots[i]);
    }
    kernel.push_back(std::move(b));
  }
  return LinearSolution{std::move(x), std::move(kernel)};
}

std::optional<LinearSolution> solve_unit(const BitMatrix& g, std::size_t j) {
  if (j < 1 || j > g.rows()) throw UsageError("solve_unit: index out of range");
  return solve(g, Word::unit(g.rows(), j));
}

}  // namespace pirc
