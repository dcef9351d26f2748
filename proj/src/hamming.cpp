#include "pirc/hamming.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <limits>
#include <numeric>
#include <set>

#include "pirc/error.hpp"

namespace pirc {

bool HammingCode::is_codeword(const Word& w) const { return parity_check.multiply(w).is_zero(); }

Code HammingCode::code() const { return LinearCode(generator).span(); }

HammingCode build_hamming(int r) {
  if (r < 2) throw UsageError("Hamming code order must be at least 2");
  if (r > 6) throw UsageError("Hamming codes are supported up to order 6");
  const std::size_t n = (std::size_t{1} << r) - 1;
  BitMatrix h(static_cast<std::size_t>(r), n);
  for (std::size_t i = 1; i <= n; ++i) {
    for (int row = 1; row <= r; ++row) {
      if ((i >> (r - row)) & 1U) h.set(static_cast<std::size_t>(row), i);
    }
  }
  auto kernel = solve(h, Word(static_cast<std::size_t>(r)));
  auto reduced = row_reduce(BitMatrix(kernel->kernel)).reduced;
  return HammingCode{r, std::move(h), std::move(reduced)};
}

Word Line::indicator(std::size_t length) const {
  Word w(length);
  for (auto p : points) w.set(p);
  return w;
}

std::vector<Line> lines_pg(int r) {
  if (r < 2) throw UsageError("projective geometry needs r >= 2");
  if (r > 20) throw UsageError("lines_pg supports r <= 20");
  const std::uint32_t top = (std::uint32_t{1} << r) - 1;
  std::vector<Line> out;
  for (std::uint32_t a = 1; a <= top; ++a) {
    for (std::uint32_t b = a + 1; b <= top; ++b) {
      const std::uint32_t c = a ^ b;
      if (c > b) out.push_back(Line{{a, b, c}});
    }
  }
  return out;
}

// ------------------------------------------------- complement obstruction

namespace {

struct ObstructionSetup {
  std::size_t n = 0;
  std::vector<Packed> words;
  std::vector<std::size_t> complement;  // index of 1+c
};

ObstructionSetup setup_obstruction(const Code& code) {
  if (code.length() > 16) throw UsageError("exhaustive triple enumeration supports length <= 16");
  if (code.combinatorial_dimension() < 1) throw UsageError("code size must be 2^k with k >= 1");
  ObstructionSetup s;
  s.n = code.length();
  s.words = code.packed();
  std::vector<Packed> sorted = s.words;
  std::sort(sorted.begin(), sorted.end());
  const Packed ones = (Packed{1} << s.n) - 1;
  for (auto w : s.words) {
    auto it = std::lower_bound(sorted.begin(), sorted.end(), w ^ ones);
    if (it == sorted.end() || *it != (w ^ ones)) throw UsageError("code is not closed under complementation");
    // indices follow `words`, which is sorted by Word order; map back via search
    const auto target = w ^ ones;
    s.complement.push_back(static_cast<std::size_t>(
        std::find(s.words.begin(), s.words.end(), target) - s.words.begin()));
  }
  return s;
}

struct TripleResult {
  bool valid = false;      // canonical unordered triple
  bool splittable = false;
  std::size_t components = 0;
  std::array<Packed, 3> sets{};
};

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), std::size_t{0}); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent_[find(a)] = find(b); }

 private:
  std::vector<std::size_t> parent_;
};

TripleResult examine_assignment(const ObstructionSetup& s, std::uint64_t assignment) {
  TripleResult out;
  for (std::size_t p = 0; p < s.n; ++p) {
    const auto label = (assignment >> (2 * p)) & 3U;
    if (label != 0) out.sets[label - 1] |= Packed{1} << p;
  }
  // Unordered: nonempty sets ordered by their smallest position.
  for (auto m : out.sets) {
    if (m == 0) return out;
  }
  if (!(std::countr_zero(out.sets[0]) < std::countr_zero(out.sets[1]) &&
        std::countr_zero(out.sets[1]) < std::countr_zero(out.sets[2]))) {
    return out;
  }
  out.valid = true;

  const std::size_t m = s.words.size();
  UnionFind uf(m);
  std::vector<std::pair<Packed, std::size_t>> keyed(m);
  for (auto mask : out.sets) {
    for (std::size_t i = 0; i < m; ++i) keyed[i] = {s.words[i] & mask, i};
    std::sort(keyed.begin(), keyed.end());
    for (std::size_t i = 1; i < m; ++i) {
      if (keyed[i].first == keyed[i - 1].first) uf.unite(keyed[i].second, keyed[i - 1].second);
    }
  }
  std::vector<std::size_t> size(m, 0);
  for (std::size_t i = 0; i < m; ++i) ++size[uf.find(i)];

  // Orbits of complementation on components: fixed ones and swapped pairs.
  std::vector<std::size_t> fixed;
  std::vector<std::size_t> swapped;
  std::vector<char> seen(m, 0);
  for (std::size_t i = 0; i < m; ++i) {
    const auto root = uf.find(i);
    if (seen[root]) continue;
    seen[root] = 1;
    ++out.components;
    const auto partner = uf.find(s.complement[i]);
    if (partner == root) {
      fixed.push_back(size[root]);
    } else {
      seen[partner] = 1;
      ++out.components;
      swapped.push_back(size[root]);
    }
  }

  // reach[sum] bit 0: reachable with every pair whole; bit 1: with a split pair.
  const std::size_t half = m / 2;
  std::vector<std::uint8_t> reach(half + 1, 0);
  reach[0] = 1;
  for (auto sz : fixed) {
    for (std::size_t t = half + 1; t-- > sz;) reach[t] |= reach[t - sz];
  }
  for (auto sz : swapped) {
    std::vector<std::uint8_t> next = reach;
    for (std::size_t t = 0; t <= half; ++t) {
      if (t >= 2 * sz) next[t] |= reach[t - 2 * sz];
      if (t >= sz && reach[t - sz] != 0) next[t] |= 2;
    }
    reach = std::move(next);
  }
  out.splittable = (reach[half] & 2) != 0;
  return out;
}

void record(ComplementCheck& c, const TripleResult& r, std::uint64_t assignment, std::uint64_t& first_fail) {
  ++c.triples;
  if (c.component_histogram.size() <= r.components) c.component_histogram.resize(r.components + 1, 0);
  ++c.component_histogram[r.components];
  if (r.splittable) {
    ++c.splittable_triples;
    c.all_closed = false;
    if (assignment < first_fail) {
      first_fail = assignment;
      c.counterexample = {PositionSet(r.sets[0]), PositionSet(r.sets[1]), PositionSet(r.sets[2])};
    }
  }
}

}  // namespace

namespace serial {

ComplementCheck check_complement_obstruction(const Code& code) {
  const auto start = std::chrono::steady_clock::now();
  const auto s = setup_obstruction(code);
  ComplementCheck out;
  std::uint64_t first_fail = std::numeric_limits<std::uint64_t>::max();
  const std::uint64_t total = std::uint64_t{1} << (2 * s.n);
  for (std::uint64_t a = 0; a < total; ++a) {
    const auto r = examine_assignment(s, a);
    if (r.valid) record(out, r, a, first_fail);
  }
  out.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return out;
}

}  // namespace serial

ComplementCheck check_complement_obstruction(const Code& code, Parallelism par) {
  const auto start = std::chrono::steady_clock::now();
  const auto s = setup_obstruction(code);
  const std::uint64_t total = std::uint64_t{1} << (2 * s.n);
  const int threads = resolve_threads(par);
  // Contiguous shards, merged in shard order.
  const std::uint64_t shards = std::min<std::uint64_t>(total, 256);
  std::vector<ComplementCheck> parts(shards);
  std::vector<std::uint64_t> first_fail(shards, std::numeric_limits<std::uint64_t>::max());
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (std::int64_t sh = 0; sh < static_cast<std::int64_t>(shards); ++sh) {
    const std::uint64_t lo = total * static_cast<std::uint64_t>(sh) / shards;
    const std::uint64_t hi = total * static_cast<std::uint64_t>(sh + 1) / shards;
    for (std::uint64_t a = lo; a < hi; ++a) {
      const auto r = examine_assignment(s, a);
      if (r.valid) record(parts[sh], r, a, first_fail[sh]);
    }
  }
  ComplementCheck out;
  std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
  for (std::uint64_t sh = 0; sh < shards; ++sh) {
    const auto& p = parts[sh];
    out.triples += p.triples;
    out.splittable_triples += p.splittable_triples;
    out.all_closed = out.all_closed && p.all_closed;
    if (out.component_histogram.size() < p.component_histogram.size()) {
      out.component_histogram.resize(p.component_histogram.size(), 0);
    }
    for (std::size_t i = 0; i < p.component_histogram.size(); ++i) out.component_histogram[i] += p.component_histogram[i];
    if (first_fail[sh] < best) {
      best = first_fail[sh];
      out.counterexample = p.counterexample;
    }
  }
  out.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return out;
}

HammingVerdict check_no_3pir_any_encoder(int r, Parallelism par) {
  if (r != 2 && r != 3) throw UsageError("the exhaustive encoder check runs for r = 2 or r = 3");
  const auto h = build_hamming(r);
  HammingVerdict v;
  v.order = r;
  v.check = check_complement_obstruction(h.code(), par);
  if (v.check.all_closed) {
    v.decided = true;
    v.encoder_exists = false;
  } else if (h.dimension() == 1) {
    // With one data bit a balanced non-invariant function is itself an encoder.
    v.decided = true;
    v.encoder_exists = true;
  }
  return v;
}

// ----------------------------------------------------------- claims

ClaimReport check_theorem6_claims(int r, const std::array<PositionSet, 3>& triple) {
  if (r < 2 || r > 6) throw UsageError("claims are checked for 2 <= r <= 6");
  const std::uint32_t n = (std::uint32_t{1} << r) - 1;
  for (std::size_t i = 0; i < 3; ++i) {
    if (triple[i].empty()) throw UsageError("triple sets must be nonempty");
    if (n < 64 && (triple[i].mask() >> n) != 0) throw UsageError("triple position out of range");
    for (std::size_t j = i + 1; j < 3; ++j) {
      if (triple[i].intersects(triple[j])) throw UsageError("triple sets must be disjoint");
    }
  }
  ClaimReport rep;
  const auto lines = lines_pg(r);
  for (const auto& l : lines) {
    int meets = 0;
    for (const auto& s : triple) {
      if (s.contains(static_cast<int>(l.points[0])) || s.contains(static_cast<int>(l.points[1])) ||
          s.contains(static_cast<int>(l.points[2]))) {
        ++meets;
      }
      if (s.contains(static_cast<int>(l.points[0])) && s.contains(static_cast<int>(l.points[1])) &&
          s.contains(static_cast<int>(l.points[2])) && rep.no_set_contains_line) {
        rep.no_set_contains_line = false;
        rep.claim2_violation = l;
      }
    }
    if (meets == 2 && rep.lines_meet_all_three) {
      rep.lines_meet_all_three = false;
      rep.claim1_violation = l;
    }
  }

  std::set<std::uint32_t> h{0};
  for (std::uint32_t p = 1; p <= n; ++p) {
    bool used = false;
    for (const auto& s : triple) used = used || s.contains(static_cast<int>(p));
    if (!used) h.insert(p);
  }
  for (auto a : h) {
    for (auto b : h) {
      if (!h.count(a ^ b)) rep.unused_is_subspace = false;
    }
  }
  const std::size_t expected = std::size_t{1} << (r - 2);
  rep.sizes_match = h.size() == expected;
  for (const auto& s : triple) {
    rep.sizes_match = rep.sizes_match && s.size() == expected;
    const auto pts = s.positions();
    std::set<std::uint32_t> coset;
    for (auto x : h) coset.insert(static_cast<std::uint32_t>(pts.front()) ^ x);
    std::set<std::uint32_t> members(pts.begin(), pts.end());
    if (coset != members) rep.sets_are_cosets = false;
  }
  return rep;
}

std::vector<std::array<PositionSet, 3>> coset_triples(int r) {
  if (r < 2 || r > 5) throw UsageError("coset_triples supports 2 <= r <= 5");
  const std::uint32_t size = std::uint32_t{1} << r;
  const int dim = r - 2;
  // Subspaces of dimension r-2 as sorted element lists.
  std::set<std::vector<std::uint32_t>> subspaces;
  std::vector<std::uint32_t> basis;
  auto span_of = [](const std::vector<std::uint32_t>& b) {
    std::vector<std::uint32_t> out{0};
    for (auto v : b) {
      const auto cur = out.size();
      for (std::size_t i = 0; i < cur; ++i) out.push_back(out[i] ^ v);
    }
    std::sort(out.begin(), out.end());
    return out;
  };
  auto rec = [&](auto&& self, std::uint32_t from) -> void {
    if (static_cast<int>(basis.size()) == dim) {
      auto sp = span_of(basis);
      if (sp.size() == (std::size_t{1} << dim) && std::adjacent_find(sp.begin(), sp.end()) == sp.end()) {
        subspaces.insert(std::move(sp));
      }
      return;
    }
    for (std::uint32_t v = from; v < size; ++v) {
      basis.push_back(v);
      self(self, v + 1);
      basis.pop_back();
    }
  };
  rec(rec, 1);

  std::vector<std::array<PositionSet, 3>> out;
  for (const auto& h : subspaces) {
    std::vector<Packed> cosets;
    std::vector<char> covered(size, 0);
    for (const auto x : h) covered[x] = 1;
    for (std::uint32_t v = 1; v < size; ++v) {
      if (covered[v]) continue;
      Packed m = 0;
      for (auto x : h) {
        covered[v ^ x] = 1;
        m |= Packed{1} << ((v ^ x) - 1);
      }
      cosets.push_back(m);
    }
    out.push_back({PositionSet(cosets[0]), PositionSet(cosets[1]), PositionSet(cosets[2])});
  }
  return out;
}

}  // namespace pirc
