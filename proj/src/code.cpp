#include "pirc/code.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <limits>
#include <string>

#include "pirc/error.hpp"

namespace pirc {

Code::Code(std::size_t length, std::vector<Word> words) : length_(length), words_(std::move(words)) {
  if (length_ == 0) throw UsageError("code length must be at least 1");
  for (const auto& w : words_) {
    if (w.size() != length_) throw UsageError("code words must all have length " + std::to_string(length_));
  }
  std::sort(words_.begin(), words_.end());
  if (std::adjacent_find(words_.begin(), words_.end()) != words_.end()) {
    throw UsageError("code contains duplicate words");
  }
}

Code Code::from_values(std::size_t length, const std::vector<std::uint64_t>& values) {
  std::vector<Word> words;
  words.reserve(values.size());
  for (auto v : values) words.push_back(Word::from_value(v, length));
  return Code(length, std::move(words));
}

bool Code::contains(const Word& w) const { return std::binary_search(words_.begin(), words_.end(), w); }

int Code::combinatorial_dimension() const {
  const auto m = words_.size();
  if (m == 0 || !std::has_single_bit(m)) return -1;
  return std::countr_zero(m);
}

std::vector<std::uint64_t> Code::values() const {
  std::vector<std::uint64_t> out;
  out.reserve(words_.size());
  for (const auto& w : words_) out.push_back(w.value());
  return out;
}

std::vector<Packed> Code::packed() const {
  std::vector<Packed> out;
  out.reserve(words_.size());
  for (const auto& w : words_) out.push_back(w.packed());
  return out;
}

LinearCode::LinearCode(BitMatrix generator) : generator_(std::move(generator)) {
  if (generator_.rank() != generator_.rows()) throw UsageError("generator matrix must have full row rank");
}

namespace {

// Visits every span element once in Gray-code order.
template <typename Visit>
void for_each_codeword(const BitMatrix& g, Visit&& visit) {
  const std::size_t k = g.rows();
  if (k > kMaxEnumeratedDimension) throw UsageError("span enumeration limited to dimension 24");
  Word c(g.cols());
  visit(c);
  const std::uint64_t total = std::uint64_t{1} << k;
  for (std::uint64_t i = 1; i < total; ++i) {
    c ^= g.row(static_cast<std::size_t>(std::countr_zero(i)) + 1);
    visit(c);
  }
}

}  // namespace

Code LinearCode::span() const {
  std::vector<Word> words;
  words.reserve(std::size_t{1} << dimension());
  for_each_codeword(generator_, [&](const Word& c) { words.push_back(c); });
  return Code(length(), std::move(words));
}

std::vector<std::uint64_t> LinearCode::weight_distribution() const {
  std::vector<std::uint64_t> dist(length() + 1, 0);
  for_each_codeword(generator_, [&](const Word& c) { ++dist[c.weight()]; });
  return dist;
}

namespace serial {

std::size_t min_distance(const Code& code) {
  if (code.size() < 2) throw UsageError("min_distance needs at least two codewords");
  const auto& w = code.words();
  std::size_t best = std::numeric_limits<std::size_t>::max();
  if (code.length() <= kPackedBits) {
    const auto v = code.packed();
    for (std::size_t i = 0; i < v.size() && best > 1; ++i) {
      for (std::size_t j = i + 1; j < v.size(); ++j) {
        best = std::min<std::size_t>(best, static_cast<std::size_t>(std::popcount(v[i] ^ v[j])));
        if (best == 1) break;
      }
    }
    return best;
  }
  for (std::size_t i = 0; i < w.size() && best > 1; ++i) {
    for (std::size_t j = i + 1; j < w.size(); ++j) {
      best = std::min(best, hamming_distance(w[i], w[j]));
      if (best == 1) break;
    }
  }
  return best;
}

}  // namespace serial

std::size_t min_distance(const Code& code, Parallelism par) {
  if (code.size() < 2) throw UsageError("min_distance needs at least two codewords");
  if (code.length() > kPackedBits) return serial::min_distance(code);
  const auto v = code.packed();
  const auto m = static_cast<std::ptrdiff_t>(v.size());
  std::size_t best = std::numeric_limits<std::size_t>::max();
  // Distance 1 cannot be beaten; every worker stops once it is seen.
  std::atomic<bool> floor_hit{false};
#pragma omp parallel for schedule(dynamic, 16) reduction(min : best) num_threads(resolve_threads(par))
  for (std::ptrdiff_t i = 0; i < m; ++i) {
    if (floor_hit.load(std::memory_order_relaxed)) continue;
    std::size_t local = std::numeric_limits<std::size_t>::max();
    for (std::ptrdiff_t j = i + 1; j < m && local > 1; ++j) {
      local = std::min<std::size_t>(local, static_cast<std::size_t>(std::popcount(v[i] ^ v[j])));
    }
    if (local == 1) floor_hit.store(true, std::memory_order_relaxed);
    best = std::min(best, local);
  }
  return best;
}

std::size_t min_distance(const LinearCode& code) {
  const auto dist = code.weight_distribution();
  for (std::size_t w = 1; w < dist.size(); ++w) {
    if (dist[w] != 0) return w;
  }
  throw UsageError("min_distance needs at least two codewords");
}

Code extend_even_parity(const Code& code) {
  std::vector<Word> out;
  out.reserve(code.size());
  for (const auto& w : code.words()) out.push_back(w.with_appended(w.weight() % 2 == 1));
  return Code(code.length() + 1, std::move(out));
}

LinearCode extend_even_parity(const LinearCode& code) {
  const auto& g = code.generator();
  Word parity(g.rows());
  for (std::size_t r = 1; r <= g.rows(); ++r) {
    if (g.row(r).weight() % 2 == 1) parity.set(r);
  }
  return LinearCode(g.with_column(parity));
}

Punctured puncture(const Code& code, std::size_t pos) {
  if (pos < 1 || pos > code.length()) {
    throw UsageError("puncture position " + std::to_string(pos) + " out of range 1.." +
                     std::to_string(code.length()));
  }
  std::vector<Word> out;
  out.reserve(code.size());
  for (const auto& w : code.words()) out.push_back(w.without(pos));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  const bool dropped = out.size() != code.size();
  return {Code(code.length() - 1, std::move(out)), dropped};
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> bit_lines(std::istream& in) {
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    lines.push_back(line);
  }
  return lines;
}

}  // namespace

Code read_code(std::istream& in) {
  const auto lines = bit_lines(in);
  if (lines.empty()) throw InputError("code file contains no codewords");
  std::vector<Word> words;
  for (const auto& l : lines) {
    if (l.size() != lines.front().size()) throw InputError("code file has words of different lengths");
    words.push_back(Word::from_string(l));
  }
  try {
    return Code(lines.front().size(), std::move(words));
  } catch (const UsageError& e) {
    throw InputError(std::string("invalid code file: ") + e.what());
  }
}

void write_code(std::ostream& out, const Code& code) {
  for (const auto& w : code.words()) out << w.to_string() << '\n';
}

BitMatrix read_matrix(std::istream& in) {
  const auto lines = bit_lines(in);
  if (lines.empty()) throw InputError("matrix file contains no rows");
  for (const auto& l : lines) {
    if (l.size() != lines.front().size()) throw InputError("matrix file has rows of different lengths");
  }
  return BitMatrix::from_strings(lines);
}

void write_matrix(std::ostream& out, const BitMatrix& m) {
  for (const auto& r : m.to_strings()) out << r << '\n';
}

}  // namespace pirc
