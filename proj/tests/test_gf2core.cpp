#include <random>
#include <sstream>

#include "doctest.h"
#include "pirc/bit_matrix.hpp"
#include "pirc/code.hpp"
#include "pirc/error.hpp"
#include "pirc/word.hpp"
#include "support.hpp"

using namespace pirc;

namespace {

Code code_of(std::initializer_list<const char*> words) {
  std::vector<Word> ws;
  for (auto w : words) ws.push_back(Word::from_string(w));
  return Code(ws.front().size(), ws);
}

BitMatrix k2_generator() { return BitMatrix::from_strings({"10110", "01101"}); }

}  // namespace

TEST_CASE("word basics") {
  auto w = Word::from_string("10110");
  CHECK(w.size() == 5);
  CHECK(w.get(1));
  CHECK_FALSE(w.get(2));
  CHECK(w.weight() == 3);
  CHECK(w.value() == 0b10110);
  CHECK(w.to_string() == "10110");
  CHECK(Word::from_value(22, 5) == w);
  CHECK(Word::from_packed(w.packed(), 5) == w);
  CHECK(w.without(1).to_string() == "0110");
  CHECK(w.with_appended(true).to_string() == "101101");
  CHECK_THROWS_AS(w.get(6), UsageError);
  CHECK_THROWS_AS(Word::from_string("10a"), InputError);
}

TEST_CASE("words spanning several blocks") {
  Word a(130);
  a.set(1);
  a.set(130);
  CHECK(a.weight() == 2);
  Word b = Word::ones(130);
  CHECK(hamming_distance(a, b) == 128);
  CHECK(a < b);
}

TEST_CASE("hamming_distance examples") {
  CHECK(hamming_distance(Word::from_string("000"), Word::from_string("000")) == 0);
  CHECK(hamming_distance(Word::from_string("000"), Word::from_string("111")) == 3);
  CHECK(hamming_distance(Word::from_string("10110"), Word::from_string("01101")) == 4);
  CHECK_THROWS_AS(hamming_distance(Word::from_string("00"), Word::from_string("000")), UsageError);
}

TEST_CASE("min_distance examples") {
  CHECK(min_distance(code_of({"000", "111"})) == 3);
  CHECK(min_distance(LinearCode(BitMatrix::from_strings({"1000011", "0100101", "0010110", "0001111"}))) == 3);
  auto span = LinearCode(k2_generator()).span();
  CHECK(span == code_of({"00000", "01101", "10110", "11011"}));
  CHECK(min_distance(span) == 3);
  CHECK_THROWS_AS(min_distance(code_of({"000"})), UsageError);
}

TEST_CASE("extend and puncture examples") {
  CHECK(extend_even_parity(code_of({"000", "111"})) == code_of({"0000", "1111"}));
  auto even = code_of({"0000", "0110", "1111"});
  auto ext = extend_even_parity(even);
  for (const auto& w : ext.words()) CHECK_FALSE(w.get(5));
  CHECK(min_distance(extend_even_parity(LinearCode(k2_generator()).span())) == 4);

  auto p = puncture(code_of({"0000", "1111"}), 4);
  CHECK(p.code == code_of({"000", "111"}));
  CHECK_FALSE(p.size_dropped);
  auto q = puncture(code_of({"00", "01"}), 2);
  CHECK(q.code == code_of({"0"}));
  CHECK(q.size_dropped);
  CHECK_THROWS_AS(puncture(code_of({"00", "01"}), 3), UsageError);
}

TEST_CASE("solve_unit examples") {
  auto id = BitMatrix::identity(4);
  for (std::size_t j = 1; j <= 4; ++j) {
    auto s = solve_unit(id, j);
    REQUIRE(s);
    CHECK(s->particular == Word::unit(4, j));
    CHECK(s->kernel.empty());
  }
  auto g = k2_generator();
  auto s = solve_unit(g, 1);
  REQUIRE(s);
  CHECK(s->kernel.size() == 3);
  CHECK(g.multiply(s->particular) == Word::unit(2, 1));
  // A support-{1} solution lies in the coset.
  bool found = false;
  for (std::uint64_t m = 0; m < 8; ++m) {
    Word x = s->particular;
    for (std::size_t i = 0; i < 3; ++i) {
      if ((m >> i) & 1U) x ^= s->kernel[i];
    }
    if (x == Word::from_string("10000")) found = true;
  }
  CHECK(found);

  auto z = BitMatrix::from_strings({"100", "000"});
  CHECK_FALSE(solve_unit(z, 2).has_value());
}

TEST_CASE("file formats round trip") {
  auto c = code_of({"0110", "0000", "1011"});
  std::stringstream ss;
  write_code(ss, c);
  CHECK(ss.str() == "0000\n0110\n1011\n");
  std::stringstream in("# comment\n0110\n\n1011\n0000\n");
  CHECK(read_code(in) == c);
  std::stringstream bad("0110\n101\n");
  CHECK_THROWS_AS(read_code(bad), InputError);

  auto g = k2_generator();
  std::stringstream ms;
  write_matrix(ms, g);
  CHECK(read_matrix(ms) == g);
}

// Properties.

TEST_CASE("linear min distance equals min nonzero weight and pair scan") {
  std::mt19937_64 rng(oracle::kSeed);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t k = 1 + rng() % 8;
    const std::size_t n = k + rng() % 6;
    auto g = oracle::random_generator(rng, k, n);
    LinearCode lc(g);
    auto span = lc.span();
    std::vector<std::string> words;
    for (const auto& w : span.words()) words.push_back(w.to_string());
    const auto expected = static_cast<std::size_t>(oracle::min_distance(words));
    CHECK(min_distance(lc) == expected);
    CHECK(min_distance(span) == expected);
    CHECK(serial::min_distance(span) == expected);
    std::size_t min_weight = n + 1;
    for (const auto& w : span.words()) {
      if (!w.is_zero()) min_weight = std::min(min_weight, w.weight());
    }
    CHECK(min_weight == expected);
  }
}

TEST_CASE("parity extension and puncturing move distance by at most one") {
  std::mt19937_64 rng(oracle::kSeed + 1);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 3 + rng() % 6;
    std::set<std::uint64_t> vals;
    const std::size_t m = 2 + rng() % ((std::size_t{1} << n) - 2);
    while (vals.size() < m) vals.insert(rng() % (std::uint64_t{1} << n));
    auto c = Code::from_values(n, {vals.begin(), vals.end()});
    const auto d = min_distance(c);
    auto ext = extend_even_parity(c);
    if (d % 2 == 1) {
      CHECK(min_distance(ext) == d + 1);
    }
    CHECK(puncture(ext, n + 1).code == c);
    for (std::size_t p = 1; p <= n; ++p) {
      auto pc = puncture(c, p);
      if (pc.code.size() >= 2) CHECK(min_distance(pc.code) + 1 >= d);
      if (!pc.size_dropped) CHECK(pc.code.size() == c.size());
    }
  }
}

TEST_CASE("solve_unit solutions verify by multiplication") {
  std::mt19937_64 rng(oracle::kSeed + 2);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t k = 1 + rng() % 6;
    const std::size_t n = 1 + rng() % 10;
    BitMatrix g(k, n);
    for (std::size_t r = 1; r <= k; ++r) {
      for (std::size_t c = 1; c <= n; ++c) g.set(r, c, (rng() & 1U) != 0);
    }
    const auto rank = g.rank();
    for (std::size_t j = 1; j <= k; ++j) {
      auto s = solve_unit(g, j);
      // Oracle: e_j reachable iff some column subset sums to it.
      bool reachable = false;
      for (std::uint64_t m = 0; m < (std::uint64_t{1} << n) && !reachable; ++m) {
        reachable = g.multiply(Word::from_packed(m, n)) == Word::unit(k, j);
      }
      CHECK(s.has_value() == reachable);
      if (!s) continue;
      CHECK(g.multiply(s->particular) == Word::unit(k, j));
      CHECK(s->kernel.size() == n - rank);
      for (const auto& b : s->kernel) CHECK(g.multiply(b).is_zero());
    }
  }
}

TEST_CASE("word order matches integer order") {
  std::mt19937_64 rng(oracle::kSeed + 3);
  std::vector<Word> ws;
  std::vector<std::uint64_t> vs;
  for (int i = 0; i < 200; ++i) {
    const auto v = rng() % 1024;
    ws.push_back(Word::from_value(v, 10));
    vs.push_back(v);
  }
  std::sort(ws.begin(), ws.end());
  ws.erase(std::unique(ws.begin(), ws.end()), ws.end());
  std::sort(vs.begin(), vs.end());
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  REQUIRE(ws.size() == vs.size());
  for (std::size_t i = 0; i < ws.size(); ++i) CHECK(ws[i].value() == vs[i]);
  auto again = ws;
  std::sort(again.begin(), again.end());
  again.erase(std::unique(again.begin(), again.end()), again.end());
  CHECK(again == ws);
}
