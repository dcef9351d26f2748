#include "pirc/searchlab.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>

#include "json.hpp"
#include "pirc/error.hpp"

namespace pirc {

namespace {

double ms_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

std::size_t popcount(std::uint64_t x) { return static_cast<std::size_t>(std::popcount(x)); }

}  // namespace

std::string to_string(Existence e) {
  switch (e) {
    case Existence::Found: return "found";
    case Existence::None: return "none";
    case Existence::Unknown: return "unknown";
  }
  return "?";
}

std::string to_string(SearchMode m) { return m == SearchMode::Exhaustive ? "exhaustive" : "heuristic"; }

// ============================================================ canonical form

namespace {

// Word values carry position 1 in bit n-1. A state fixes a translation and
// an ordered partition of the columns into cells; positions are handed out
// to cells in order, so a word's smallest possible image puts its ones at
// the end of each cell.
struct CanonState {
  std::uint64_t u = 0;
  std::vector<std::uint64_t> cells;  // column masks in value-bit form

  friend bool operator<(const CanonState& a, const CanonState& b) {
    return a.u != b.u ? a.u < b.u : a.cells < b.cells;
  }
  bool discrete() const {
    for (auto c : cells) {
      if (popcount(c) > 1) return false;
    }
    return true;
  }
};

std::uint64_t min_image(std::uint64_t x, const CanonState& s, std::size_t n) {
  const std::uint64_t y = x ^ s.u;
  std::uint64_t out = 0;
  std::size_t start = 0;
  for (auto cell : s.cells) {
    const std::size_t size = popcount(cell);
    const std::size_t ones = popcount(y & cell);
    if (ones != 0) out |= ((std::uint64_t{1} << ones) - 1) << (n - start - size);
    start += size;
  }
  return out;
}

CanonState refine(const CanonState& s, std::uint64_t x) {
  const std::uint64_t y = x ^ s.u;
  CanonState out;
  out.u = s.u;
  for (auto cell : s.cells) {
    const auto zeros = cell & ~y;
    const auto ones = cell & y;
    if (zeros != 0) out.cells.push_back(zeros);
    if (ones != 0) out.cells.push_back(ones);
  }
  return out;
}

// Full image sequence of a discrete state, sorted.
std::vector<std::uint64_t> discrete_images(const std::vector<std::uint64_t>& words, const CanonState& s,
                                           std::size_t n) {
  std::vector<std::uint64_t> out;
  out.reserve(words.size());
  for (auto w : words) out.push_back(min_image(w, s, n));
  std::sort(out.begin(), out.end());
  return out;
}

struct CanonRun {
  std::vector<std::uint64_t> sequence;
  bool canonical = true;  // false: state cap hit
  bool differs = false;   // early exit: smaller than `compare`
  std::uint64_t states = 0;
};

// Builds the lexicographically least sorted image sequence. With `compare`,
// stops as soon as the sequence is known to differ from it.
CanonRun canonical_sequence(const std::vector<std::uint64_t>& words, std::size_t n, std::size_t cap,
                            const std::vector<std::uint64_t>* compare) {
  CanonRun run;
  const std::uint64_t all = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  std::vector<CanonState> states;
  for (auto w : words) states.push_back(CanonState{w, {all}});
  run.states = states.size();
  bool have_last = false;
  std::uint64_t last = 0;
  for (std::size_t level = 0; level < words.size(); ++level) {
    bool all_discrete = true;
    for (const auto& s : states) all_discrete = all_discrete && s.discrete();
    if (all_discrete) {
      std::vector<std::uint64_t> best;
      for (const auto& s : states) {
        auto seq = discrete_images(words, s, n);
        if (best.empty() || seq < best) best = std::move(seq);
      }
      for (std::size_t i = level; i < best.size(); ++i) {
        run.sequence.push_back(best[i]);
        if (compare != nullptr && best[i] != (*compare)[i]) {
          run.differs = true;
          return run;
        }
      }
      return run;
    }
    std::uint64_t best = ~std::uint64_t{0};
    for (const auto& s : states) {
      for (auto w : words) {
        const auto v = min_image(w, s, n);
        if ((!have_last || v > last) && v < best) best = v;
      }
    }
    run.sequence.push_back(best);
    if (compare != nullptr && best != (*compare)[level]) {
      run.differs = true;
      return run;
    }
    std::set<CanonState> next;
    for (const auto& s : states) {
      for (auto w : words) {
        if (min_image(w, s, n) == best) next.insert(refine(s, w));
      }
      if (next.size() > cap) {
        run.canonical = false;
        return run;
      }
    }
    states.assign(next.begin(), next.end());
    run.states += states.size();
    have_last = true;
    last = best;
  }
  return run;
}

void check_canon_args(const Code& code) {
  if (code.size() == 0) throw UsageError("empty code");
  if (code.length() > 63) throw UsageError("canonical form supports length <= 63");
}

}  // namespace

CanonicalResult canonical_form(const Code& code, std::size_t state_cap) {
  check_canon_args(code);
  const auto words = code.values();
  auto run = canonical_sequence(words, code.length(), state_cap, nullptr);
  CanonicalResult out;
  out.states = run.states;
  if (!run.canonical) {
    out.canonical = false;
    std::vector<std::uint64_t> shifted;
    for (auto w : words) shifted.push_back(w ^ words.front());
    std::sort(shifted.begin(), shifted.end());
    out.code = Code::from_values(code.length(), shifted);
    return out;
  }
  out.code = Code::from_values(code.length(), run.sequence);
  return out;
}

bool is_canonical(const Code& code) {
  check_canon_args(code);
  const auto words = code.values();
  if (words.front() != 0) return false;
  auto run = canonical_sequence(words, code.length(), ~std::size_t{0}, &words);
  return !run.differs;
}

// ====================================================== recoverable functions

ComponentPartition component_partition(const Code& code, const std::array<PositionSet, 3>& triple) {
  const auto words = code.packed();
  const std::size_t m = words.size();
  std::vector<std::uint32_t> parent(m);
  std::iota(parent.begin(), parent.end(), 0U);
  auto find = [&](std::uint32_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<std::pair<Packed, std::uint32_t>> keyed(m);
  for (auto set : triple) {
    for (std::uint32_t i = 0; i < m; ++i) keyed[i] = {words[i] & set.mask(), i};
    std::sort(keyed.begin(), keyed.end());
    for (std::size_t i = 1; i < m; ++i) {
      if (keyed[i].first == keyed[i - 1].first) parent[find(keyed[i].second)] = find(keyed[i - 1].second);
    }
  }
  ComponentPartition out;
  out.triple = triple;
  out.labels.assign(m, 0);
  std::map<std::uint32_t, std::uint32_t> ids;
  for (std::uint32_t i = 0; i < m; ++i) {
    auto [it, fresh] = ids.emplace(find(i), static_cast<std::uint32_t>(ids.size()));
    out.labels[i] = it->second;
  }
  out.count = ids.size();
  return out;
}

namespace {

using Triple = std::array<PositionSet, 3>;

bool triple_less(const Triple& a, const Triple& b) {
  const auto sa = a[0].size() + a[1].size() + a[2].size();
  const auto sb = b[0].size() + b[1].size() + b[2].size();
  if (sa != sb) return sa < sb;
  for (std::size_t i = 0; i < 3; ++i) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return false;
}

std::vector<Triple> list_triples(std::size_t n, bool covering_only) {
  if (n > (covering_only ? 16U : 12U)) throw UsageError("too many positions for triple enumeration");
  std::vector<Triple> out;
  const std::uint64_t base = covering_only ? 3 : 4;
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= base;
  for (std::uint64_t a = 0; a < total; ++a) {
    Packed sets[3] = {0, 0, 0};
    std::uint64_t x = a;
    for (std::size_t p = 0; p < n; ++p) {
      const auto label = x % base;
      x /= base;
      // Covering: labels 0..2 are the sets. Otherwise 0 means unused.
      const auto set = covering_only ? label : label - 1;
      if (covering_only || label != 0) sets[set] |= Packed{1} << p;
    }
    if (sets[0] == 0 || sets[1] == 0 || sets[2] == 0) continue;
    // Each unordered triple once: sets ordered by smallest position.
    if (!(std::countr_zero(sets[0]) < std::countr_zero(sets[1]) &&
          std::countr_zero(sets[1]) < std::countr_zero(sets[2]))) {
      continue;
    }
    Triple t{PositionSet(sets[0]), PositionSet(sets[1]), PositionSet(sets[2])};
    std::sort(t.begin(), t.end());
    out.push_back(t);
  }
  std::sort(out.begin(), out.end(), triple_less);
  return out;
}

void set_bit(CodeMask& m, std::size_t i) { m[i / 64] |= std::uint64_t{1} << (i % 64); }
bool get_bit(const CodeMask& m, std::size_t i) { return ((m[i / 64] >> (i % 64)) & 1U) != 0; }
std::size_t mask_count(const CodeMask& m) {
  std::size_t c = 0;
  for (auto w : m) c += popcount(w);
  return c;
}
CodeMask mask_and(const CodeMask& a, const CodeMask& b) { return {a[0] & b[0], a[1] & b[1], a[2] & b[2], a[3] & b[3]}; }
CodeMask mask_andnot(const CodeMask& a, const CodeMask& b) {
  return {a[0] & ~b[0], a[1] & ~b[1], a[2] & ~b[2], a[3] & ~b[3]};
}

TripleFunctions functions_of(const Code& code, const Triple& triple, std::size_t cap) {
  TripleFunctions tf;
  tf.partition = component_partition(code, triple);
  const std::size_t m = code.size();
  const std::size_t half = m / 2;
  const std::size_t count = tf.partition.count;
  std::vector<std::size_t> size(count, 0);
  for (auto l : tf.partition.labels) ++size[l];
  // reach[i] bit s: sum s reachable using components i..count-1 (component 0
  // always excluded: it holds codeword 0 and maps to 0).
  std::vector<std::vector<char>> reach(count + 1, std::vector<char>(half + 1, 0));
  reach[count][0] = 1;
  for (std::size_t i = count; i-- > 1;) {
    reach[i] = reach[i + 1];
    for (std::size_t s = size[i]; s <= half; ++s) reach[i][s] |= reach[i + 1][s - size[i]];
  }
  if (count < 2 || !reach[1][half]) return tf;
  if (count > cap) {
    tf.truncated = true;
    return tf;
  }
  std::vector<CodeMask> comp(count, CodeMask{});
  for (std::size_t i = 0; i < m; ++i) set_bit(comp[tf.partition.labels[i]], i);
  CodeMask cur{};
  auto dfs = [&](auto&& self, std::size_t i, std::size_t sum) -> void {
    if (sum == half) {
      tf.colorings.push_back(cur);
      return;
    }
    if (i >= count || !reach[i][half - sum]) return;
    if (sum + size[i] <= half) {
      const CodeMask saved = cur;
      for (std::size_t b = 0; b < 4; ++b) cur[b] |= comp[i][b];
      self(self, i + 1, sum + size[i]);
      cur = saved;
    }
    self(self, i + 1, sum);
  };
  dfs(dfs, 1, 0);
  return tf;
}

void check_function_code(const Code& code) {
  const int k = code.combinatorial_dimension();
  if (k < 1) throw UsageError("code size must be 2^k with k >= 1");
  if (code.size() > kMaxFunctionCodeSize) throw UsageError("code size limited to 256 words");
}

}  // namespace

FunctionStats recoverable_functions(const Code& code, const FunctionOptions& opts,
                                    const std::function<void(const TripleFunctions&)>& sink) {
  check_function_code(code);
  FunctionStats st;
  for (const auto& t : list_triples(code.length(), opts.covering_only)) {
    if (st.triples >= opts.budget) {
      st.complete = false;
      break;
    }
    ++st.triples;
    auto tf = functions_of(code, t, opts.component_cap);
    if (tf.truncated) {
      ++st.truncated;
      st.complete = false;
    }
    sink(tf);
  }
  return st;
}

// ========================================================= encoder existence

namespace {

struct Candidate {
  CodeMask mask;
  std::size_t triple_index;
};

struct EncoderBacktrack {
  const std::vector<Candidate>* funcs = nullptr;
  std::size_t k = 0;
  std::uint64_t budget = 0;
  std::uint64_t nodes = 0;
  bool exhausted = false;
  std::vector<std::size_t> chosen;

  bool run(std::size_t from, const std::vector<CodeMask>& cells) {
    if (chosen.size() == k) return true;
    if (++nodes > budget) {
      exhausted = true;
      return false;
    }
    const auto& fs = *funcs;
    for (std::size_t i = from; i + (k - chosen.size()) <= fs.size(); ++i) {
      std::vector<CodeMask> next;
      next.reserve(cells.size() * 2);
      bool halves = true;
      for (const auto& c : cells) {
        const auto in = mask_and(c, fs[i].mask);
        if (mask_count(in) * 2 != mask_count(c)) {
          halves = false;
          break;
        }
        next.push_back(in);
        next.push_back(mask_andnot(c, fs[i].mask));
      }
      if (!halves) continue;
      chosen.push_back(i);
      if (run(i + 1, next)) return true;
      chosen.pop_back();
      if (exhausted) return false;
    }
    return false;
  }
};

}  // namespace

EncoderSearch encoder_exists_3pir(const Code& code, const EncoderSearchOptions& opts) {
  check_function_code(code);
  const auto start = std::chrono::steady_clock::now();
  EncoderSearch out;
  const std::size_t m = code.size();
  const auto k = static_cast<std::size_t>(code.combinatorial_dimension());
  const auto triples = list_triples(code.length(), true);

  // Candidate functions with the first triple (canonical order) producing them.
  const auto count = static_cast<std::int64_t>(std::min<std::uint64_t>(triples.size(), opts.triple_budget));
  const int threads = resolve_threads(opts.par);
  const std::int64_t shards = std::max<std::int64_t>(1, std::min<std::int64_t>(count, 64));
  std::vector<std::map<CodeMask, std::size_t>> found(static_cast<std::size_t>(shards));
  std::vector<std::uint64_t> truncated(static_cast<std::size_t>(shards), 0);
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (std::int64_t sh = 0; sh < shards; ++sh) {
    const auto lo = count * sh / shards;
    const auto hi = count * (sh + 1) / shards;
    auto& mine = found[static_cast<std::size_t>(sh)];
    for (auto i = lo; i < hi; ++i) {
      auto tf = functions_of(code, triples[static_cast<std::size_t>(i)], opts.component_cap);
      if (tf.truncated) ++truncated[static_cast<std::size_t>(sh)];
      for (const auto& c : tf.colorings) mine.emplace(c, static_cast<std::size_t>(i));
    }
  }
  std::map<CodeMask, std::size_t> merged;
  for (const auto& part : found) {
    for (const auto& [mask, idx] : part) {
      auto [it, fresh] = merged.emplace(mask, idx);
      if (!fresh) it->second = std::min(it->second, idx);
    }
  }
  out.function_stats.triples = static_cast<std::uint64_t>(count);
  out.function_stats.truncated = std::accumulate(truncated.begin(), truncated.end(), std::uint64_t{0});
  out.function_stats.complete =
      out.function_stats.truncated == 0 && static_cast<std::uint64_t>(count) == triples.size();
  out.candidate_functions = merged.size();
  std::vector<Candidate> funcs;
  for (const auto& [mask, idx] : merged) funcs.push_back({mask, idx});

  auto finish = [&](Existence s, std::string reason) {
    out.status = s;
    out.reason = std::move(reason);
    out.elapsed_ms = ms_since(start);
    return out;
  };
  const bool complete = out.function_stats.complete;

  // Every pair of codewords must be split by some candidate.
  for (std::size_t a = 0; a < m; ++a) {
    CodeMask sep{};
    for (const auto& f : funcs) {
      const auto& fm = f.mask;
      if (get_bit(fm, a)) {
        for (std::size_t b = 0; b < 4; ++b) sep[b] |= ~fm[b];
      } else {
        for (std::size_t b = 0; b < 4; ++b) sep[b] |= fm[b];
      }
    }
    for (std::size_t b = 0; b < m; ++b) {
      if (b != a && !get_bit(sep, b)) {
        return finish(complete ? Existence::None : Existence::Unknown,
                      "codewords " + std::to_string(a) + " and " + std::to_string(b) +
                          " are not separated by any recoverable function");
      }
    }
  }

  CodeMask all{};
  for (std::size_t i = 0; i < m; ++i) set_bit(all, i);
  EncoderBacktrack bt;
  bt.funcs = &funcs;
  bt.k = k;
  bt.budget = opts.node_budget;
  const bool ok = bt.run(0, {all});
  out.nodes = bt.nodes;
  if (!ok) {
    if (bt.exhausted) return finish(Existence::Unknown, "node budget exhausted");
    return finish(complete ? Existence::None : Existence::Unknown,
                  "no k recoverable functions separate all codewords");
  }

  // Data word a has bit j equal to function j, so table[a] is the codeword
  // whose function values spell a.
  const auto& words = code.words();
  std::vector<Word> table(m, Word(code.length()));
  for (std::size_t c = 0; c < m; ++c) {
    std::uint64_t a = 0;
    for (std::size_t j = 0; j < k; ++j) {
      if (get_bit(funcs[bt.chosen[j]].mask, c)) a |= std::uint64_t{1} << (k - 1 - j);
    }
    table[a] = words[c];
  }
  auto enc = Encoder::from_table(k, std::move(table));
  for (std::size_t j = 0; j < k; ++j) {
    const auto& t = triples[funcs[bt.chosen[j]].triple_index];
    out.witnesses.push_back(RecoveryFamily{j + 1, {t[0], t[1], t[2]}});
  }
  VerifyOptions vo;
  vo.witnesses = out.witnesses;
  vo.par = opts.par;
  const auto rep = verify_pir(enc, 3, vo);
  if (rep.verdict != Verdict::Holds) throw std::logic_error("assembled encoder failed 3-PIR verification");
  for (const auto& o : rep.outcomes) {
    if (!o.from_witness) throw std::logic_error("assembled encoder witness rejected");
  }
  out.encoder = std::move(enc);
  return finish(Existence::Found, "");
}

// ================================================================ checkpoint

namespace {

constexpr char kMagic[8] = {'P', 'I', 'R', 'C', 'K', 'P', 'T', '\0'};

void put_u32(std::ostream& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.put(static_cast<char>((v >> (8 * i)) & 0xFFU));
}
void put_u64(std::ostream& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.put(static_cast<char>((v >> (8 * i)) & 0xFFU));
}
void put_str(std::ostream& out, const std::string& s) {
  put_u32(out, static_cast<std::uint32_t>(s.size()));
  out.write(s.data(), static_cast<std::streamsize>(s.size()));
}

class Reader {
 public:
  explicit Reader(std::istream& in) : in_(in) {}
  std::uint64_t get(int bytes) {
    std::uint64_t v = 0;
    for (int i = 0; i < bytes; ++i) {
      const int c = in_.get();
      if (c == EOF) throw CheckpointError("checkpoint truncated");
      v |= static_cast<std::uint64_t>(static_cast<unsigned char>(c)) << (8 * i);
    }
    return v;
  }
  std::uint32_t u32() { return static_cast<std::uint32_t>(get(4)); }
  std::uint64_t u64() { return get(8); }
  std::string str() {
    const auto len = u32();
    if (len > (1U << 26)) throw CheckpointError("checkpoint string too long");
    std::string s(len, '\0');
    in_.read(s.data(), len);
    if (static_cast<std::uint32_t>(in_.gcount()) != len) throw CheckpointError("checkpoint truncated");
    return s;
  }
  std::vector<std::uint64_t> words() {
    const auto n = u32();
    if (n > (1U << 24)) throw CheckpointError("checkpoint record too long");
    std::vector<std::uint64_t> out(n);
    for (auto& w : out) w = u64();
    return out;
  }

 private:
  std::istream& in_;
};

}  // namespace

void write_checkpoint(const std::string& path, const Checkpoint& c) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw CheckpointError("cannot write checkpoint " + tmp);
    out.write(kMagic, 8);
    put_u32(out, c.major);
    put_u32(out, c.minor);
    put_str(out, c.problem);
    put_u64(out, c.stats.nodes);
    put_u64(out, c.stats.attempts);
    put_u64(out, c.stats.canonical_failures);
    put_u32(out, static_cast<std::uint32_t>(c.frontier.size()));
    for (const auto& f : c.frontier) {
      put_u32(out, f.next);
      put_u32(out, static_cast<std::uint32_t>(f.words.size()));
      for (auto w : f.words) put_u64(out, w);
    }
    put_u32(out, static_cast<std::uint32_t>(c.results.size()));
    for (const auto& r : c.results) {
      put_u32(out, static_cast<std::uint32_t>(r.size()));
      for (auto w : r) put_u64(out, w);
    }
    put_u32(out, static_cast<std::uint32_t>(c.log.size()));
    for (const auto& l : c.log) put_str(out, l);
    if (!out) throw CheckpointError("failed writing checkpoint " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

Checkpoint read_checkpoint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CheckpointError("cannot open checkpoint " + path);
  char magic[8];
  in.read(magic, 8);
  if (in.gcount() != 8 || std::memcmp(magic, kMagic, 8) != 0) throw CheckpointError("not a checkpoint file: " + path);
  Reader r(in);
  Checkpoint c;
  c.major = r.u32();
  c.minor = r.u32();
  if (c.major != kCheckpointMajor) {
    throw CheckpointError("checkpoint major version " + std::to_string(c.major) + " is not supported (expected " +
                          std::to_string(kCheckpointMajor) + ")");
  }
  c.problem = r.str();
  c.stats.nodes = r.u64();
  c.stats.attempts = r.u64();
  c.stats.canonical_failures = r.u64();
  const auto nf = r.u32();
  for (std::uint32_t i = 0; i < nf; ++i) {
    FrontierRecord f;
    f.next = r.u32();
    f.words = r.words();
    c.frontier.push_back(std::move(f));
  }
  const auto nr = r.u32();
  for (std::uint32_t i = 0; i < nr; ++i) c.results.push_back(r.words());
  const auto nl = r.u32();
  for (std::uint32_t i = 0; i < nl; ++i) c.log.push_back(r.str());
  return c;
}

// =============================================================== code search

namespace {

using Words = std::vector<std::uint64_t>;

std::string problem_id(const CodeSearchOptions& o) {
  nlohmann::ordered_json j;
  j["kind"] = "search_codes";
  j["n"] = o.n;
  j["size"] = o.size;
  j["dmin"] = o.dmin;
  j["mode"] = to_string(o.mode);
  if (o.mode == SearchMode::Heuristic) {
    j["seed"] = o.seed;
    j["attempts"] = o.attempts;
  }
  return j.dump();
}

std::optional<Checkpoint> load_matching(const std::string& path, const std::string& problem) {
  if (path.empty() || !std::filesystem::exists(path)) return std::nullopt;
  auto c = read_checkpoint(path);
  if (c.problem != problem) throw CheckpointError("checkpoint belongs to another problem: " + c.problem);
  return c;
}

// Orderly generation: children of a canonical code add one word above its
// largest word and are kept only when canonical themselves.
class Orderly {
 public:
  Orderly(std::size_t n, std::size_t size, std::size_t dmin) : n_(n), size_(size), dmin_(dmin) {}

  // Compatible words >= from.
  Words candidates(const Words& code, std::uint64_t from) const {
    Words out;
    const std::uint64_t total = std::uint64_t{1} << n_;
    for (std::uint64_t w = from; w < total; ++w) {
      bool ok = true;
      for (auto c : code) {
        if (popcount(c ^ w) < dmin_) {
          ok = false;
          break;
        }
      }
      if (ok) out.push_back(w);
    }
    return out;
  }

  // Greedy colouring bound on how many pairwise-compatible candidates fit.
  std::size_t colour_bound(const Words& cand) const {
    std::vector<Words> classes;
    for (auto w : cand) {
      bool placed = false;
      for (auto& cl : classes) {
        bool clash_free = true;
        for (auto x : cl) {
          if (popcount(x ^ w) >= dmin_) {
            clash_free = false;
            break;
          }
        }
        if (clash_free) {
          cl.push_back(w);
          placed = true;
          break;
        }
      }
      if (!placed) classes.push_back({w});
    }
    return classes.size();
  }

  bool canonical(const Words& code) const { return is_canonical(Code::from_values(n_, code)); }

  // Processes the stack depth first until empty or out of budget.
  bool run(std::vector<FrontierRecord>& stack, std::set<Words>& results, std::atomic<std::uint64_t>& nodes,
           std::uint64_t budget) const {
    while (!stack.empty()) {
      if (nodes.fetch_add(1) + 1 > budget) return false;
      auto rec = std::move(stack.back());
      stack.pop_back();
      if (rec.words.size() == size_) {
        results.insert(rec.words);
        continue;
      }
      auto cand = candidates(rec.words, rec.next);
      if (rec.words.size() + cand.size() < size_) continue;
      if (rec.words.size() + colour_bound(cand) < size_) continue;
      for (std::size_t i = 0; i < cand.size(); ++i) {
        if (rec.words.size() + (cand.size() - i) < size_) break;
        auto child = rec.words;
        child.push_back(cand[i]);
        if (!canonical(child)) continue;
        const auto next = static_cast<std::uint32_t>(cand[i] + 1);
        stack.push_back({rec.words, next});
        stack.push_back({std::move(child), next});
        break;
      }
    }
    return true;
  }

  // All canonical children of a record (the record is consumed).
  std::vector<FrontierRecord> expand(const FrontierRecord& rec, std::set<Words>& results) const {
    std::vector<FrontierRecord> out;
    if (rec.words.size() == size_) {
      results.insert(rec.words);
      return out;
    }
    auto cand = candidates(rec.words, rec.next);
    if (rec.words.size() + colour_bound(cand) < size_) return out;
    for (auto w : cand) {
      auto child = rec.words;
      child.push_back(w);
      if (canonical(child)) out.push_back({std::move(child), static_cast<std::uint32_t>(w + 1)});
    }
    return out;
  }

 private:
  std::size_t n_;
  std::size_t size_;
  std::size_t dmin_;
};

void check_search_args(const CodeSearchOptions& o) {
  if (o.n < 1) throw UsageError("length must be positive");
  if (o.size < 1) throw UsageError("size must be positive");
  if (o.dmin < 1) throw UsageError("dmin must be positive");
  if (o.mode == SearchMode::Exhaustive && o.n > 16) throw UsageError("exhaustive search supports n <= 16");
  if (o.n > 24) throw UsageError("code search supports n <= 24");
  if (o.size > (std::size_t{1} << o.n)) throw UsageError("size exceeds the number of words");
}

CodeSearchResult finish_result(const std::set<Words>& results, std::size_t n) {
  CodeSearchResult r;
  for (const auto& w : results) r.codes.push_back(Code::from_values(n, w));
  std::sort(r.codes.begin(), r.codes.end(), [](const Code& a, const Code& b) { return a.values() < b.values(); });
  return r;
}

Checkpoint make_checkpoint(const std::string& problem, const CodeSearchStats& stats,
                           std::vector<FrontierRecord> frontier, const std::set<Words>& results) {
  Checkpoint c;
  c.problem = problem;
  c.stats = stats;
  c.frontier = std::move(frontier);
  c.results.assign(results.begin(), results.end());
  return c;
}

// ------------------------------------------------------------- heuristic

// One seeded attempt: greedy in lexicographic order under a random column
// permutation and translation, with random skips, then one-out-two-in swaps
// if the greedy code is too small.
std::optional<Words> heuristic_attempt(std::size_t n, std::size_t size, std::size_t dmin, std::uint64_t seed,
                                       std::uint64_t attempt) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(attempt), static_cast<std::uint32_t>(attempt >> 32)};
  std::mt19937_64 rng(seq);
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::shuffle(perm.begin(), perm.end(), rng);
  const std::uint64_t total = std::uint64_t{1} << n;
  const std::uint64_t shift = rng() & (total - 1);
  const double skip = attempt == 0 ? 0.0 : std::uniform_real_distribution<double>(0.0, 0.08)(rng);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  auto relabel = [&](std::uint64_t v) {
    std::uint64_t out = 0;
    for (std::size_t b = 0; b < n; ++b) {
      if ((v >> b) & 1U) out |= std::uint64_t{1} << perm[b];
    }
    return out ^ shift;
  };
  auto compatible = [&](const Words& code, std::uint64_t w) {
    for (auto c : code) {
      if (popcount(c ^ w) < dmin) return false;
    }
    return true;
  };
  Words code;
  for (std::uint64_t v = 0; v < total && code.size() < size; ++v) {
    const auto w = relabel(v);
    if (compatible(code, w) && !(skip > 0 && coin(rng) < skip)) code.push_back(w);
  }
  // Swap phase: drop one word, add as many as fit.
  for (int iter = 0; iter < 400 && code.size() < size; ++iter) {
    const std::size_t drop = rng() % code.size();
    Words trial = code;
    trial.erase(trial.begin() + static_cast<std::ptrdiff_t>(drop));
    const std::uint64_t offset = rng() & (total - 1);
    std::size_t added = 0;
    for (std::uint64_t v = 0; v < total && trial.size() < size; ++v) {
      const auto w = (v + offset) & (total - 1);
      if (w != code[drop] && compatible(trial, w)) {
        trial.push_back(w);
        ++added;
      }
    }
    if (added >= 2 || (added == 1 && trial.size() >= size)) code = std::move(trial);
  }
  if (code.size() < size) return std::nullopt;
  code.resize(size);
  std::sort(code.begin(), code.end());
  return code;
}

std::size_t heuristic_state_cap(std::size_t size) { return size >= 64 ? 2'000 : kDefaultStateCap; }

CodeSearchResult run_heuristic(const CodeSearchOptions& o, bool parallel) {
  const auto start = std::chrono::steady_clock::now();
  const auto problem = problem_id(o);
  std::set<Words> results;
  CodeSearchStats stats;
  bool resumed = false;
  if (auto c = load_matching(o.checkpoint, problem)) {
    stats = c->stats;
    results.insert(c->results.begin(), c->results.end());
    resumed = true;
  }
  const std::uint64_t first = stats.attempts;
  const std::uint64_t last = std::min<std::uint64_t>(o.attempts, first + o.budget);
  const auto count = static_cast<std::int64_t>(last > first ? last - first : 0);
  std::vector<std::optional<Words>> found(static_cast<std::size_t>(count));
  std::vector<char> canonical(static_cast<std::size_t>(count), 1);
  const int threads = parallel ? resolve_threads(o.par) : 1;
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (std::int64_t i = 0; i < count; ++i) {
    auto w = heuristic_attempt(o.n, o.size, o.dmin, o.seed, first + static_cast<std::uint64_t>(i));
    if (!w) continue;
    auto cf = canonical_form(Code::from_values(o.n, *w), heuristic_state_cap(o.size));
    canonical[static_cast<std::size_t>(i)] = cf.canonical ? 1 : 0;
    found[static_cast<std::size_t>(i)] = cf.code.values();
  }
  for (std::int64_t i = 0; i < count; ++i) {
    if (found[static_cast<std::size_t>(i)]) results.insert(*found[static_cast<std::size_t>(i)]);
    if (!canonical[static_cast<std::size_t>(i)]) ++stats.canonical_failures;
  }
  stats.attempts = last > first ? last : first;
  stats.nodes = stats.attempts;
  if (!o.checkpoint.empty()) write_checkpoint(o.checkpoint, make_checkpoint(problem, stats, {}, results));
  auto r = finish_result(results, o.n);
  r.complete = false;
  r.all_canonical = stats.canonical_failures == 0;
  r.stats = stats;
  r.resumed = resumed;
  r.elapsed_ms = ms_since(start);
  return r;
}

// ------------------------------------------------------------ exhaustive

struct ExhaustiveState {
  std::vector<FrontierRecord> frontier;
  std::set<Words> results;
  CodeSearchStats stats;
  bool resumed = false;
  bool fresh = true;
};

ExhaustiveState load_exhaustive(const CodeSearchOptions& o, const std::string& problem) {
  ExhaustiveState st;
  if (auto c = load_matching(o.checkpoint, problem)) {
    st.frontier = std::move(c->frontier);
    st.results.insert(c->results.begin(), c->results.end());
    st.stats = c->stats;
    st.resumed = true;
    st.fresh = false;
  } else {
    st.frontier.push_back({{0}, 1});
  }
  return st;
}

CodeSearchResult finish_exhaustive(const CodeSearchOptions& o, const std::string& problem, ExhaustiveState& st,
                                   bool complete, std::chrono::steady_clock::time_point start) {
  if (!o.checkpoint.empty()) {
    write_checkpoint(o.checkpoint, make_checkpoint(problem, st.stats, st.frontier, st.results));
  }
  auto r = finish_result(st.results, o.n);
  r.complete = complete;
  r.stats = st.stats;
  r.resumed = st.resumed;
  r.elapsed_ms = ms_since(start);
  return r;
}

}  // namespace

namespace serial {

CodeSearchResult search_codes(const CodeSearchOptions& o) {
  check_search_args(o);
  if (o.mode == SearchMode::Heuristic) return run_heuristic(o, false);
  const auto start = std::chrono::steady_clock::now();
  const auto problem = problem_id(o);
  auto st = load_exhaustive(o, problem);
  Orderly engine(o.n, o.size, o.dmin);
  std::atomic<std::uint64_t> nodes{0};
  // The stack is processed from its back; the frontier is stored in the
  // same orientation.
  const bool done = engine.run(st.frontier, st.results, nodes, o.budget);
  st.stats.nodes += std::min<std::uint64_t>(nodes.load(), o.budget);
  return finish_exhaustive(o, problem, st, done, start);
}

}  // namespace serial

CodeSearchResult search_codes(const CodeSearchOptions& o) {
  check_search_args(o);
  if (o.mode == SearchMode::Heuristic) return run_heuristic(o, true);
  const auto start = std::chrono::steady_clock::now();
  const auto problem = problem_id(o);
  auto st = load_exhaustive(o, problem);
  Orderly engine(o.n, o.size, o.dmin);
  const int threads = resolve_threads(o.par);
  std::atomic<std::uint64_t> nodes{0};

  // Split into independent subtrees by full expansion, breadth first.
  std::vector<FrontierRecord> units = std::move(st.frontier);
  const std::size_t want = static_cast<std::size_t>(std::max(1, threads)) * 8;
  while (!units.empty() && units.size() < want && nodes.load() < o.budget) {
    std::vector<FrontierRecord> next;
    for (const auto& u : units) {
      nodes.fetch_add(1);
      auto kids = engine.expand(u, st.results);
      for (auto& k : kids) next.push_back(std::move(k));
    }
    if (next.size() <= units.size() && next.size() >= want) {
      units = std::move(next);
      break;
    }
    units = std::move(next);
  }

  // Each unit is searched depth first; leftovers form the new frontier.
  const auto count = static_cast<std::int64_t>(units.size());
  std::vector<std::vector<FrontierRecord>> left(units.size());
  std::vector<std::set<Words>> found(units.size());
  std::atomic<bool> all_done{true};
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (std::int64_t i = 0; i < count; ++i) {
    auto& stack = left[static_cast<std::size_t>(i)];
    // Reverse so the record sits at the back of its stack.
    stack.push_back(units[static_cast<std::size_t>(i)]);
    if (!engine.run(stack, found[static_cast<std::size_t>(i)], nodes, o.budget)) all_done = false;
  }
  std::vector<FrontierRecord> frontier;
  // Stacks pop from the back; keep unit order so a serial resume visits the
  // earliest unit first.
  for (std::size_t i = units.size(); i-- > 0;) {
    for (auto& r : left[i]) frontier.push_back(std::move(r));
  }
  for (auto& f : found) st.results.insert(f.begin(), f.end());
  st.frontier = std::move(frontier);
  st.stats.nodes += std::min<std::uint64_t>(nodes.load(), o.budget);
  const bool complete = all_done.load() && st.frontier.empty();
  return finish_exhaustive(o, problem, st, complete, start);
}

// ============================================================= open problem

namespace {

std::string hunt_problem(const HuntOptions& o) {
  nlohmann::ordered_json j;
  j["kind"] = "open_hunt";
  j["n"] = o.n;
  j["size"] = o.size;
  j["seed"] = o.seed;
  return j.dump();
}

}  // namespace

HuntReport open11_hunt(const HuntOptions& o) {
  if (o.n < 3 || o.n > 16) throw UsageError("hunt length must be between 3 and 16");
  if (o.size < 2 || !std::has_single_bit(o.size) || o.size > kMaxFunctionCodeSize) {
    throw UsageError("hunt size must be a power of two up to 256");
  }
  const auto start = std::chrono::steady_clock::now();
  const auto problem = hunt_problem(o);
  std::vector<std::string> log;
  CodeSearchStats stats;
  HuntReport rep;
  rep.n = o.n;
  rep.size = o.size;
  if (!o.checkpoint.empty() && std::filesystem::exists(o.checkpoint)) {
    auto c = read_checkpoint(o.checkpoint);
    if (c.problem != problem) throw CheckpointError("checkpoint belongs to another problem: " + c.problem);
    log = std::move(c.log);
    stats = c.stats;
    rep.resumed = true;
  }
  const std::uint64_t first = stats.attempts;
  for (std::uint64_t a = first; a < first + o.budget; ++a) {
    auto words = heuristic_attempt(o.n, o.size, 3, o.seed, a);
    nlohmann::ordered_json entry;
    entry["attempt"] = a;
    if (!words) {
      entry["status"] = "no_code";
      log.push_back(entry.dump());
      continue;
    }
    EncoderSearchOptions eo;
    eo.triple_budget = o.triple_budget;
    eo.node_budget = o.node_budget;
    eo.par = o.par;
    const auto code = Code::from_values(o.n, *words);
    const auto res = encoder_exists_3pir(code, eo);
    entry["status"] = to_string(res.status);
    entry["functions"] = res.candidate_functions;
    if (res.candidate_functions >= o.witness_threshold || res.status == Existence::Found) entry["words"] = *words;
    log.push_back(entry.dump());
  }
  stats.attempts = first + o.budget;
  stats.nodes = stats.attempts;
  if (!o.checkpoint.empty()) {
    Checkpoint c;
    c.problem = problem;
    c.stats = stats;
    c.log = log;
    write_checkpoint(o.checkpoint, c);
  }
  for (const auto& line : log) {
    const auto j = nlohmann::json::parse(line);
    const auto status = j.at("status").get<std::string>();
    if (status == "no_code") continue;
    ++rep.codes_examined;
    if (status == "found") ++rep.encoders_found;
    if (status == "none") ++rep.proven_none;
    if (status == "unknown") ++rep.unknown;
    if (j.contains("words")) {
      HuntEntry e;
      e.attempt = j.at("attempt").get<std::uint64_t>();
      e.words = j.at("words").get<std::vector<std::uint64_t>>();
      e.candidate_functions = j.at("functions").get<std::size_t>();
      e.status = status == "found" ? Existence::Found : status == "none" ? Existence::None : Existence::Unknown;
      rep.logged.push_back(std::move(e));
    }
  }
  rep.elapsed_ms = ms_since(start);
  return rep;
}

}  // namespace pirc
