#pragma once

// Independent oracles and generators shared by the test binaries. Nothing
// here calls the library code it is used to check.

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "pirc/bit_matrix.hpp"
#include "pirc/code.hpp"
#include "pirc/recovery.hpp"
#include "pirc/word.hpp"

namespace oracle {

inline constexpr std::uint64_t kSeed = 20240917;

inline std::vector<std::string> all_words(int n) {
  std::vector<std::string> out;
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); ++v) {
    std::string s(n, '0');
    for (int i = 0; i < n; ++i) {
      if ((v >> (n - 1 - i)) & 1U) s[i] = '1';
    }
    out.push_back(s);
  }
  return out;
}

inline int distance(const std::string& a, const std::string& b) {
  int d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d += a[i] != b[i];
  return d;
}

inline int min_distance(const std::vector<std::string>& words) {
  int best = 1 << 30;
  for (std::size_t i = 0; i < words.size(); ++i) {
    for (std::size_t j = i + 1; j < words.size(); ++j) best = std::min(best, distance(words[i], words[j]));
  }
  return best;
}

// Codeword of data word a (bit j of a is (a >> (k-j)) & 1) under generator rows.
inline std::string encode(const std::vector<std::string>& rows, std::uint64_t a) {
  const std::size_t k = rows.size();
  std::string c(rows[0].size(), '0');
  for (std::size_t j = 0; j < k; ++j) {
    if ((a >> (k - 1 - j)) & 1U) {
      for (std::size_t p = 0; p < c.size(); ++p) c[p] = c[p] == rows[j][p] ? '0' : '1';
    }
  }
  return c;
}

inline std::string restrict_to(const std::string& c, const std::vector<int>& positions) {
  std::string out;
  for (int p : positions) out += c[p - 1];
  return out;
}

// Table-based recovery test straight from the definition: the restriction
// to I must determine bit j.
inline bool recovers(const std::vector<std::string>& table, std::size_t k, std::size_t j,
                     const std::vector<int>& positions) {
  std::map<std::string, int> seen;
  for (std::uint64_t a = 0; a < table.size(); ++a) {
    const int bit = static_cast<int>((a >> (k - j)) & 1U);
    auto [it, fresh] = seen.emplace(restrict_to(table[a], positions), bit);
    if (!fresh && it->second != bit) return false;
  }
  return true;
}

inline std::vector<int> subset_positions(std::uint64_t mask) {
  std::vector<int> out;
  for (int p = 1; mask != 0; ++p, mask >>= 1) {
    if (mask & 1U) out.push_back(p);
  }
  return out;
}

inline std::vector<std::string> table_of(const pirc::Encoder& e) {
  std::vector<std::string> out;
  for (std::uint64_t a = 0; a < (std::uint64_t{1} << e.k()); ++a) out.push_back(e.encode(a).to_string());
  return out;
}

// Random full-rank k x n generator.
inline pirc::BitMatrix random_generator(std::mt19937_64& rng, std::size_t k, std::size_t n) {
  for (;;) {
    pirc::BitMatrix g(k, n);
    for (std::size_t r = 1; r <= k; ++r) {
      for (std::size_t c = 1; c <= n; ++c) g.set(r, c, (rng() & 1U) != 0);
    }
    if (g.rank() == k) return g;
  }
}

// Random explicit encoder: 2^k distinct random words of length n.
inline pirc::Encoder random_explicit(std::mt19937_64& rng, std::size_t k, std::size_t n) {
  std::vector<std::uint64_t> pool(std::size_t{1} << n);
  for (std::size_t i = 0; i < pool.size(); ++i) pool[i] = i;
  std::shuffle(pool.begin(), pool.end(), rng);
  std::vector<pirc::Word> table;
  for (std::size_t a = 0; a < (std::size_t{1} << k); ++a) table.push_back(pirc::Word::from_value(pool[a], n));
  return pirc::Encoder::from_table(k, std::move(table));
}

}  // namespace oracle
