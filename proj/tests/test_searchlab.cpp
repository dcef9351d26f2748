#include <filesystem>
#include <numeric>
#include <fstream>

#include "doctest.h"
#include "pirc/constructions.hpp"
#include "pirc/error.hpp"
#include "pirc/hamming.hpp"
#include "pirc/searchlab.hpp"
#include "support.hpp"

using namespace pirc;

namespace {

// Oracle: equivalence class representative by brute force over all
// permutations and all translations by codewords.
std::vector<std::uint64_t> brute_canonical(const std::vector<std::uint64_t>& words, int n) {
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::uint64_t> best;
  do {
    for (auto u : words) {
      std::vector<std::uint64_t> img;
      for (auto w : words) {
        const auto y = w ^ u;
        std::uint64_t z = 0;
        for (int b = 0; b < n; ++b) {
          if ((y >> b) & 1U) z |= std::uint64_t{1} << perm[b];
        }
        img.push_back(z);
      }
      std::sort(img.begin(), img.end());
      if (best.empty() || img < best) best = img;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

std::vector<std::uint64_t> random_words(std::mt19937_64& rng, int n, std::size_t m) {
  std::set<std::uint64_t> s;
  while (s.size() < m) s.insert(rng() & ((std::uint64_t{1} << n) - 1));
  return {s.begin(), s.end()};
}

std::vector<std::uint64_t> permuted(const std::vector<std::uint64_t>& words, const std::vector<int>& perm,
                                    std::uint64_t shift) {
  std::vector<std::uint64_t> out;
  for (auto w : words) {
    std::uint64_t z = 0;
    for (std::size_t b = 0; b < perm.size(); ++b) {
      if ((w >> b) & 1U) z |= std::uint64_t{1} << perm[b];
    }
    out.push_back(z ^ shift);
  }
  std::sort(out.begin(), out.end());
  return out;
}

PositionSet ps(std::initializer_list<int> positions) {
  Packed m = 0;
  for (int p : positions) m |= Packed{1} << (p - 1);
  return PositionSet(m);
}

// Oracle for 3-PIR encoders of a 4-word code: try all 24 assignments of the
// data words and ask the verifier.
bool brute_encoder_exists(const Code& code) {
  std::vector<int> idx{0, 1, 2, 3};
  do {
    std::vector<Word> table;
    for (int i : idx) table.push_back(code.words()[i]);
    auto e = Encoder::from_table(2, table);
    if (verify_pir(e, 3).verdict == Verdict::Holds) return true;
  } while (std::next_permutation(idx.begin(), idx.end()));
  return false;
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("pirc_test_" + name)).string();
}

}  // namespace

TEST_CASE("canonical form examples") {
  auto c = canonical_form(Code::from_values(3, {0b111, 0b110}));
  CHECK(c.canonical);
  CHECK(c.code.values() == std::vector<std::uint64_t>{0b000, 0b001});
  auto rep = canonical_form(Code::from_values(3, {0b000, 0b111}));
  CHECK(rep.code.values() == std::vector<std::uint64_t>{0b000, 0b111});
  CHECK(is_canonical(Code::from_values(3, {0b000, 0b111})));
  CHECK_FALSE(is_canonical(Code::from_values(3, {0b000, 0b110})));
  CHECK_FALSE(is_canonical(Code::from_values(3, {0b001, 0b111})));
}

TEST_CASE("component partition examples") {
  // Repetition code: each single position separates the two words.
  auto rep = Code::from_values(3, {0b000, 0b111});
  auto p = component_partition(rep, {ps({1}), ps({2}), ps({3})});
  CHECK(p.count == 2);
  CHECK(p.labels == std::vector<std::uint32_t>{0, 1});
  // Even-weight code of length 3: any single position merges pairs.
  auto even = Code::from_values(3, {0b000, 0b011, 0b101, 0b110});
  auto q = component_partition(even, {ps({1}), ps({2}), ps({3})});
  CHECK(q.count == 1);
}

TEST_CASE("recoverable function examples") {
  auto rep = Code::from_values(3, {0b000, 0b111});
  std::vector<TripleFunctions> seen;
  FunctionOptions fo;
  fo.covering_only = true;
  recoverable_functions(rep, fo, [&](const TripleFunctions& tf) { seen.push_back(tf); });
  REQUIRE(seen.size() == 1);
  CHECK(seen[0].partition.triple == std::array<PositionSet, 3>{ps({1}), ps({2}), ps({3})});
  CHECK(seen[0].partition.count == 2);
  REQUIRE(seen[0].colorings.size() == 1);
  CHECK(seen[0].colorings[0] == CodeMask{0b10, 0, 0, 0});

  // Hamming(7,4): every recoverable balanced function is complement invariant.
  auto ham = build_hamming(3).code();
  const auto vals = ham.values();
  std::vector<std::size_t> complement_of(vals.size());
  for (std::size_t i = 0; i < vals.size(); ++i) {
    complement_of[i] = static_cast<std::size_t>(std::find(vals.begin(), vals.end(), vals[i] ^ 0x7F) - vals.begin());
  }
  std::size_t functions = 0;
  auto st = recoverable_functions(ham, FunctionOptions{}, [&](const TripleFunctions& tf) {
    for (const auto& m : tf.colorings) {
      ++functions;
      for (std::size_t i = 0; i < vals.size(); ++i) {
        const bool a = (m[i / 64] >> (i % 64)) & 1U;
        const bool b = (m[complement_of[i] / 64] >> (complement_of[i] % 64)) & 1U;
        REQUIRE(a == b);
      }
    }
  });
  CHECK(st.complete);
  CHECK(st.triples == 1701);
  CHECK(functions > 0);

  // build_pir3(2): both data bits (as codeword indicators) are recoverable.
  auto pir = build_pir3(2);
  auto code = pir.encoder.code();
  std::set<CodeMask> masks;
  recoverable_functions(code, FunctionOptions{}, [&](const TripleFunctions& tf) {
    masks.insert(tf.colorings.begin(), tf.colorings.end());
  });
  for (std::size_t j = 1; j <= 2; ++j) {
    CodeMask bit{};
    for (std::uint64_t a = 0; a < 4; ++a) {
      const auto idx = static_cast<std::size_t>(
          std::find(code.words().begin(), code.words().end(), pir.encoder.encode(a)) - code.words().begin());
      if (Encoder::data_bit(a, 2, j)) bit[0] |= std::uint64_t{1} << idx;
    }
    // Normalized so codeword 0 (the zero word, data 0) is outside the set.
    CHECK(masks.count(bit) == 1);
  }
}

TEST_CASE("encoder existence examples") {
  auto rep = encoder_exists_3pir(Code::from_values(3, {0b000, 0b111}));
  CHECK(rep.status == Existence::Found);
  REQUIRE(rep.encoder);
  CHECK(verify_pir(*rep.encoder, 3).verdict == Verdict::Holds);

  auto pir = build_pir3(2);
  auto r = encoder_exists_3pir(pir.encoder.code());
  CHECK(r.status == Existence::Found);
  REQUIRE(r.encoder);
  CHECK(r.witnesses.size() == 2);

  auto ham = build_hamming(3);
  auto h = encoder_exists_3pir(ham.encoder().code());
  CHECK(h.status == Existence::None);
  CHECK_FALSE(h.reason.empty());

  // The [4,2] code with columns 1,2,1+2,1+2 is not 3-PIR under any encoder.
  auto small = encoder_exists_3pir(Code::from_values(4, {0b0000, 0b1011, 0b0111, 0b1100}));
  CHECK(small.status == Existence::None);
  CHECK_THROWS_AS(encoder_exists_3pir(Code::from_values(3, {0, 1, 2})), UsageError);
}

TEST_CASE("exhaustive code search examples") {
  CodeSearchOptions o;
  o.n = 4;
  o.size = 4;
  auto none = search_codes(o);
  CHECK(none.complete);
  CHECK(none.codes.empty());

  o.n = 5;
  auto five = search_codes(o);
  CHECK(five.complete);
  REQUIRE(five.codes.size() == 1);
  CHECK(oracle::min_distance(oracle::table_of(Encoder::from_table(2, five.codes[0].words()))) >= 3);

  o.n = 6;
  o.size = 8;
  auto six = search_codes(o);
  CHECK(six.complete);
  CHECK(six.codes.size() >= 1);
  CHECK_THROWS_AS(search_codes([] { CodeSearchOptions bad; bad.n = 17; bad.size = 4; return bad; }()), UsageError);
}

TEST_CASE("checkpoint resume matches an uninterrupted run") {
  CodeSearchOptions o;
  o.n = 6;
  o.size = 8;
  auto full = serial::search_codes(o);
  REQUIRE(full.complete);

  o.checkpoint = temp_path("resume.ckpt");
  std::filesystem::remove(o.checkpoint);
  o.budget = 7;
  CodeSearchResult r;
  int runs = 0;
  do {
    r = serial::search_codes(o);
    ++runs;
  } while (!r.complete && runs < 10'000);
  CHECK(runs > 1);
  CHECK(r.resumed);
  CHECK(r.complete);
  CHECK(r.codes == full.codes);
  CHECK(r.stats.nodes == full.stats.nodes);

  // Same resume through the parallel entry point.
  std::filesystem::remove(o.checkpoint);
  runs = 0;
  do {
    r = search_codes(o);
    ++runs;
  } while (!r.complete && runs < 10'000);
  CHECK(r.complete);
  CHECK(r.codes == full.codes);

  // A checkpoint of another problem is refused.
  auto other = o;
  other.n = 7;
  CHECK_THROWS_AS(search_codes(other), CheckpointError);
  std::filesystem::remove(o.checkpoint);
}

TEST_CASE("checkpoint version mismatch is refused") {
  Checkpoint c;
  c.problem = "{}";
  c.frontier.push_back({{0, 7}, 8});
  c.log.push_back("{\"a\":1}");
  const auto path = temp_path("version.ckpt");
  write_checkpoint(path, c);
  auto back = read_checkpoint(path);
  CHECK(back.problem == c.problem);
  REQUIRE(back.frontier.size() == 1);
  CHECK(back.frontier[0].words == c.frontier[0].words);
  CHECK(back.frontier[0].next == 8);
  CHECK(back.log == c.log);

  c.major = kCheckpointMajor + 1;
  write_checkpoint(path, c);
  CHECK_THROWS_AS(read_checkpoint(path), CheckpointError);
  {
    std::ofstream junk(path, std::ios::binary | std::ios::trunc);
    junk << "garbage";
  }
  CHECK_THROWS_AS(read_checkpoint(path), CheckpointError);
  std::filesystem::remove(path);
}

TEST_CASE("heuristic search is reproducible under a seed") {
  CodeSearchOptions o;
  o.n = 7;
  o.size = 16;
  o.mode = SearchMode::Heuristic;
  o.attempts = 12;
  o.seed = 5;
  auto a = search_codes(o);
  auto b = serial::search_codes(o);
  CHECK(a.codes == b.codes);
  CHECK(a.stats.attempts == 12);
  CHECK_FALSE(a.complete);
  for (const auto& c : a.codes) {
    CHECK(c.size() == 16);
    CHECK(min_distance(c) >= 3);
  }
  // The (7,16,3) code is unique up to equivalence.
  if (a.all_canonical) CHECK(a.codes.size() <= 1);
}

TEST_CASE("open problem harness smoke test") {
  HuntOptions h;
  h.n = 5;
  h.size = 4;
  h.budget = 3;
  auto r = open11_hunt(h);
  CHECK(r.codes_examined + 0 <= 3);
  CHECK(r.proven_none + r.encoders_found + r.unknown == r.codes_examined);
  // Every (5,4,3) code admits a 3-PIR encoder.
  CHECK(r.encoders_found == r.codes_examined);

  h.n = 7;
  h.size = 16;
  h.budget = 2;
  auto ham = open11_hunt(h);
  REQUIRE_FALSE(ham.logged.empty());
  const auto hamming_class = canonical_form(build_hamming(3).code()).code;
  for (const auto& e : ham.logged) {
    CHECK(e.status == Existence::None);
    CHECK(canonical_form(Code::from_values(7, e.words)).code == hamming_class);
  }

  h.checkpoint = temp_path("hunt.ckpt");
  std::filesystem::remove(h.checkpoint);
  auto first = open11_hunt(h);
  auto second = open11_hunt(h);
  CHECK(second.resumed);
  CHECK(second.codes_examined >= first.codes_examined);
  CHECK(second.encoders_found == 0);
  std::filesystem::remove(h.checkpoint);

  HuntOptions eleven;
  eleven.budget = 1;
  auto e = open11_hunt(eleven);
  CHECK(e.codes_examined >= 1);
  CHECK(e.encoders_found == 0);
}

// Properties.

TEST_CASE("canonical form equals the brute-force class minimum") {
  std::mt19937_64 rng(oracle::kSeed);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 5);
    const std::size_t m = 1 + rng() % std::min<std::size_t>(10, (std::size_t{1} << n) - 1);
    auto words = random_words(rng, n, m);
    auto c = canonical_form(Code::from_values(n, words));
    CHECK(c.canonical);
    CHECK(c.code.values() == brute_canonical(words, n));
  }
}

TEST_CASE("canonical form is idempotent and invariant under equivalence") {
  std::mt19937_64 rng(oracle::kSeed + 1);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 4 + static_cast<int>(rng() % 5);
    const std::size_t m = 2 + rng() % 14;
    auto words = random_words(rng, n, m);
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    auto moved = permuted(words, perm, words[rng() % m]);
    auto a = canonical_form(Code::from_values(n, words));
    auto b = canonical_form(Code::from_values(n, moved));
    CHECK(a.code == b.code);
    CHECK(canonical_form(a.code).code == a.code);
    CHECK(is_canonical(a.code));
  }
}

TEST_CASE("encoder existence agrees with brute force on 4-word codes") {
  // All (canonical) 4-word codes of length up to 5 containing zero.
  for (int n = 2; n <= 5; ++n) {
    const std::uint64_t total = std::uint64_t{1} << n;
    std::set<std::vector<std::uint64_t>> seen;
    for (std::uint64_t a = 1; a < total; ++a) {
      for (std::uint64_t b = a + 1; b < total; ++b) {
        for (std::uint64_t c = b + 1; c < total; ++c) {
          auto cf = canonical_form(Code::from_values(n, {0, a, b, c}));
          if (!seen.insert(cf.code.values()).second) continue;
          CAPTURE(n);
          CAPTURE(a);
          CAPTURE(b);
          CAPTURE(c);
          const auto res = encoder_exists_3pir(cf.code);
          REQUIRE(res.status != Existence::Unknown);
          CHECK((res.status == Existence::Found) == brute_encoder_exists(cf.code));
        }
      }
    }
  }
}

TEST_CASE("serial and parallel exhaustive searches agree") {
  for (std::size_t n = 4; n <= 7; ++n) {
    for (std::size_t size : {4U, 8U}) {
      CodeSearchOptions o;
      o.n = n;
      o.size = size;
      auto p = search_codes(o);
      auto s = serial::search_codes(o);
      CHECK(p.complete);
      CHECK(s.complete);
      CHECK(p.codes == s.codes);
      for (const auto& c : s.codes) CHECK(is_canonical(c));
    }
  }
}
