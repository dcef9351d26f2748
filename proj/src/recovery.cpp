#include "pirc/recovery.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <map>
#include <numeric>
#include <sstream>

#include "pirc/error.hpp"

namespace pirc {

PositionSet::PositionSet(std::initializer_list<int> positions)
    : mask_(mask_of(std::span<const int>(positions.begin(), positions.size()))) {}

PositionSet PositionSet::from(std::span<const int> positions) { return PositionSet(mask_of(positions)); }

std::size_t PositionSet::size() const { return static_cast<std::size_t>(std::popcount(mask_)); }

bool PositionSet::contains(int pos) const {
  return pos >= 1 && pos <= 64 && ((mask_ >> (pos - 1)) & 1U) != 0;
}

// ---------------------------------------------------------------- Encoder

namespace {
constexpr std::size_t kMaxTableDimension = 20;
}

Encoder Encoder::linear(BitMatrix generator) {
  if (generator.cols() > kPackedBits || generator.rows() > kPackedBits) {
    throw UsageError("encoders support at most 64 data bits and 64 positions");
  }
  if (generator.rank() != generator.rows()) throw UsageError("generator matrix must have full row rank");
  Encoder e;
  e.k_ = generator.rows();
  e.n_ = generator.cols();
  e.columns_.reserve(e.n_);
  for (std::size_t c = 1; c <= e.n_; ++c) e.columns_.push_back(generator.column(c).packed());
  e.generator_ = std::move(generator);
  if (e.k_ <= kMaxTableDimension) e.build_table();
  return e;
}

Encoder Encoder::from_table(std::size_t k, std::vector<Word> table) {
  if (k > kMaxTableDimension) throw UsageError("explicit encoders support at most 20 data bits");
  if (table.size() != (std::size_t{1} << k)) throw UsageError("explicit encoder table must have 2^k entries");
  Encoder e;
  e.k_ = k;
  e.n_ = table.front().size();
  if (e.n_ > kPackedBits) throw UsageError("encoders support at most 64 positions");
  e.table_.reserve(table.size());
  for (const auto& w : table) {
    if (w.size() != e.n_) throw UsageError("explicit encoder codewords differ in length");
    e.table_.push_back(w.packed());
  }
  auto sorted = e.table_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw UsageError("explicit encoder is not one-to-one");
  }
  return e;
}

void Encoder::build_table() {
  const std::size_t count = std::size_t{1} << k_;
  table_.assign(count, 0);
  // table[a] = xor of the generator rows selected by a; row j is data bit j.
  std::vector<Packed> rows(k_);
  for (std::size_t r = 1; r <= k_; ++r) rows[r - 1] = generator_->row(r).packed();
  for (std::size_t a = 1; a < count; ++a) {
    const auto low = static_cast<std::size_t>(std::countr_zero(a));
    table_[a] = table_[a & (a - 1)] ^ rows[k_ - 1 - low];
  }
}

const BitMatrix& Encoder::generator() const {
  if (!generator_) throw UsageError("explicit encoder has no generator matrix");
  return *generator_;
}

Word Encoder::encode(std::uint64_t data) const {
  if (k_ < 64 && (data >> k_) != 0) throw UsageError("data word out of range");
  if (!table_.empty()) return Word::from_packed(table_[data], n_);
  return generator_->left_multiply(Word::from_value(data, k_));
}

const std::vector<Packed>& Encoder::table() const {
  if (table_.empty()) throw UsageError("encoder table is only available for k <= 20");
  return table_;
}

Code Encoder::code() const {
  std::vector<Word> words;
  words.reserve(table().size());
  for (auto c : table()) words.push_back(Word::from_packed(c, n_));
  return Code(n_, std::move(words));
}

Encoder Encoder::to_explicit() const {
  std::vector<Word> words;
  words.reserve(table().size());
  for (auto c : table()) words.push_back(Word::from_packed(c, n_));
  return from_table(k_, std::move(words));
}

Encoder read_encoder(std::istream& in) {
  std::string line;
  std::vector<std::pair<std::string, std::string>> rows;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string data;
    std::string code;
    if (!(ls >> data) || data.front() == '#') continue;
    if (!(ls >> code)) throw InputError("encoder line needs 'dataword codeword': " + line);
    rows.emplace_back(data, code);
  }
  if (rows.empty()) throw InputError("encoder file is empty");
  const std::size_t k = rows.front().first.size();
  if (rows.size() != (std::size_t{1} << k)) throw InputError("encoder file must list all 2^k data words");
  std::vector<Word> table;
  for (std::size_t a = 0; a < rows.size(); ++a) {
    const auto data = Word::from_string(rows[a].first);
    if (data.size() != k || data.value() != a) throw InputError("encoder data words must be listed in ascending order");
    table.push_back(Word::from_string(rows[a].second));
  }
  try {
    return Encoder::from_table(k, std::move(table));
  } catch (const UsageError& e) {
    throw InputError(std::string("invalid encoder file: ") + e.what());
  }
}

void write_encoder(std::ostream& out, const Encoder& e) {
  const auto& t = e.table();
  for (std::size_t a = 0; a < t.size(); ++a) {
    out << Word::from_value(a, e.k()).to_string() << ' ' << Word::from_packed(t[a], e.n()).to_string() << '\n';
  }
}

std::string to_string(SearchStatus s) {
  switch (s) {
    case SearchStatus::Found: return "found";
    case SearchStatus::ProvenImpossible: return "proven_impossible";
    case SearchStatus::BudgetExhausted: return "budget_exhausted";
  }
  return "unknown";
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Holds: return "holds";
    case Verdict::Fails: return "fails";
    case Verdict::Unknown: return "unknown";
  }
  return "unknown";
}

ServingPlan ServingPlan::from_sets(std::vector<PositionSet> sets) {
  ServingPlan plan;
  std::array<std::size_t, 64> use{};
  for (const auto& s : sets) {
    plan.width = std::max(plan.width, s.size());
    for (int p : s.positions()) plan.multiplicity = std::max(plan.multiplicity, ++use[p - 1]);
  }
  plan.sets = std::move(sets);
  return plan;
}

// ------------------------------------------------------- recovery checks

namespace {

void check_bit(const Encoder& e, std::size_t j) {
  if (j < 1 || j > e.k()) {
    throw UsageError("data index " + std::to_string(j) + " out of range 1.." + std::to_string(e.k()));
  }
}

void check_positions(const Encoder& e, PositionSet s) {
  if (s.empty()) throw UsageError("recovery sets must be nonempty");
  if (e.n() < 64 && (s.mask() >> e.n()) != 0) throw UsageError("recovery set position out of range");
}

// e_j in the span of the selected generator columns.
bool linear_recovers(const Encoder& e, std::size_t j, Packed positions) {
  std::array<Packed, 64> basis{};
  for (Packed m = positions; m != 0; m &= m - 1) {
    Packed v = e.column(static_cast<std::size_t>(std::countr_zero(m)) + 1);
    while (v != 0) {
      const int top = 63 - std::countl_zero(v);
      if (basis[top] == 0) {
        basis[top] = v;
        break;
      }
      v ^= basis[top];
    }
  }
  Packed target = Packed{1} << (j - 1);
  while (target != 0) {
    const int top = 63 - std::countl_zero(target);
    if (basis[top] == 0) return false;
    target ^= basis[top];
  }
  return true;
}

// No two codewords with different bit j agree on the positions.
bool table_recovers(const Encoder& e, std::size_t j, Packed positions) {
  thread_local std::vector<Packed> zeros;
  thread_local std::vector<Packed> ones;
  zeros.clear();
  ones.clear();
  const auto& t = e.table();
  for (std::size_t a = 0; a < t.size(); ++a) {
    (Encoder::data_bit(a, e.k(), j) ? ones : zeros).push_back(t[a] & positions);
  }
  std::sort(zeros.begin(), zeros.end());
  for (auto r : ones) {
    if (std::binary_search(zeros.begin(), zeros.end(), r)) return false;
  }
  return true;
}

bool recovers(const Encoder& e, std::size_t j, Packed positions) {
  return e.is_linear() ? linear_recovers(e, j, positions) : table_recovers(e, j, positions);
}

bool is_minimal(const Encoder& e, std::size_t j, Packed s) {
  if (!recovers(e, j, s)) return false;
  for (Packed m = s; m != 0; m &= m - 1) {
    if (recovers(e, j, s & ~(m & (~m + 1)))) return false;
  }
  return true;
}

std::vector<PositionSet> inclusion_minimal(std::vector<Packed> supports) {
  std::sort(supports.begin(), supports.end(), position_set_less);
  std::vector<PositionSet> kept;
  for (auto s : supports) {
    bool dominated = false;
    for (auto k : kept) {
      if ((k.mask() & ~s) == 0) {
        dominated = true;
        break;
      }
    }
    if (!dominated) kept.emplace_back(s);
  }
  return kept;
}

// Lexicographic subsets by size with superset pruning.
MinimalSets minimal_by_subsets(const Encoder& e, std::size_t j, std::size_t width, std::uint64_t budget) {
  MinimalSets out;
  const std::size_t n = e.n();
  std::vector<std::size_t> idx;
  for (std::size_t s = 1; s <= width; ++s) {
    idx.resize(s);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
      Packed m = 0;
      for (auto i : idx) m |= Packed{1} << i;
      bool dominated = false;
      for (auto k : out.sets) {
        if ((k.mask() & ~m) == 0) {
          dominated = true;
          break;
        }
      }
      if (!dominated) {
        if (++out.nodes > budget) {
          out.complete = false;
          return out;
        }
        if (recovers(e, j, m)) out.sets.emplace_back(m);
      }
      // next combination
      std::size_t i = s;
      while (i > 0 && idx[i - 1] == n - s + i - 1) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t q = i; q < s; ++q) idx[q] = idx[q - 1] + 1;
    }
  }
  std::sort(out.sets.begin(), out.sets.end());
  return out;
}

// Minimal supports over the solution coset x0 + ker G.
MinimalSets minimal_by_coset(const Encoder& e, std::size_t j, std::size_t width, std::uint64_t budget) {
  MinimalSets out;
  auto sol = solve_unit(e.generator(), j);
  if (!sol) return out;
  Packed x = sol->particular.packed();
  std::vector<Packed> kernel;
  for (const auto& b : sol->kernel) kernel.push_back(b.packed());
  const std::uint64_t total = kernel.size() >= 63 ? ~std::uint64_t{0} : std::uint64_t{1} << kernel.size();
  std::vector<Packed> supports;
  auto visit = [&](Packed v) {
    if (static_cast<std::size_t>(std::popcount(v)) <= width) supports.push_back(v);
  };
  visit(x);
  out.nodes = 1;
  for (std::uint64_t i = 1; i < total; ++i) {
    if (++out.nodes > budget) {
      out.complete = false;
      break;
    }
    x ^= kernel[static_cast<std::size_t>(std::countr_zero(i))];
    visit(x);
  }
  out.sets = inclusion_minimal(std::move(supports));
  if (!out.complete) {
    std::erase_if(out.sets, [&](PositionSet s) { return !is_minimal(e, j, s.mask()); });
  }
  return out;
}

double subset_count(std::size_t n, std::size_t width) {
  double total = 0;
  double c = 1;
  for (std::size_t s = 1; s <= width; ++s) {
    c = c * static_cast<double>(n - s + 1) / static_cast<double>(s);
    total += c;
  }
  return total;
}

}  // namespace

bool is_recovery_set(const Encoder& e, std::size_t j, PositionSet positions) {
  check_bit(e, j);
  check_positions(e, positions);
  return recovers(e, j, positions.mask());
}

bool decode_bit(const Encoder& e, std::size_t j, PositionSet positions, const Word& codeword) {
  check_bit(e, j);
  if (codeword.size() != e.n()) throw UsageError("decode_bit: codeword length mismatch");
  const Packed c = codeword.packed() & positions.mask();
  if (e.is_linear()) {
    // x with support inside the set and G x = e_j gives a_j = <x, c>.
    const auto cols = positions.positions();
    BitMatrix sub(e.k(), cols.size());
    for (std::size_t i = 0; i < cols.size(); ++i) {
      for (std::size_t r = 1; r <= e.k(); ++r) sub.set(r, i + 1, ((e.column(cols[i]) >> (r - 1)) & 1U) != 0);
    }
    auto sol = solve_unit(sub, j);
    if (!sol) throw UsageError("decode_bit: not a recovery set");
    bool bit = false;
    for (std::size_t i = 0; i < cols.size(); ++i) {
      if (sol->particular.get(i + 1) && ((c >> (cols[i] - 1)) & 1U)) bit = !bit;
    }
    return bit;
  }
  const auto& t = e.table();
  for (std::size_t a = 0; a < t.size(); ++a) {
    if ((t[a] & positions.mask()) == c) return Encoder::data_bit(a, e.k(), j);
  }
  throw UsageError("decode_bit: restriction matches no codeword");
}

MinimalSets minimal_recovery_sets(const Encoder& e, std::size_t j, std::optional<std::size_t> max_width,
                                  std::uint64_t budget) {
  check_bit(e, j);
  const std::size_t width = std::min(max_width.value_or(e.n()), e.n());
  if (width == 0) throw UsageError("max_width must be at least 1");
  if (e.is_linear()) {
    const std::size_t kernel_dim = e.n() - e.k();
    const double coset = kernel_dim >= 63 ? 1e19 : static_cast<double>(std::uint64_t{1} << kernel_dim);
    if (coset <= static_cast<double>(budget) || coset <= subset_count(e.n(), width)) {
      return minimal_by_coset(e, j, width, budget);
    }
  }
  return minimal_by_subsets(e, j, width, budget);
}

bool is_valid_family(const Encoder& e, const RecoveryFamily& family) {
  Packed seen = 0;
  for (auto s : family.sets) {
    if (s.empty() || (seen & s.mask()) != 0) return false;
    if (e.n() < 64 && (s.mask() >> e.n()) != 0) return false;
    seen |= s.mask();
    if (!recovers(e, family.bit, s.mask())) return false;
  }
  return family.bit >= 1 && family.bit <= e.k();
}

// ------------------------------------------------------------- serving

namespace {

// Backtracking assignment of candidate sets to requests with per-position
// usage capped at `multiplicity`.
class Server {
 public:
  Server(std::vector<const std::vector<PositionSet>*> options, std::vector<bool> same_as_prev,
         std::size_t multiplicity, std::uint64_t budget)
      : options_(std::move(options)),
        same_as_prev_(std::move(same_as_prev)),
        multiplicity_(multiplicity),
        budget_(budget),
        chosen_(options_.size(), 0) {}

  bool run() { return descend(0); }
  bool exhausted() const { return exhausted_; }
  std::uint64_t nodes() const { return nodes_; }
  PositionSet chosen(std::size_t i) const { return (*options_[i])[chosen_[i]]; }

 private:
  bool fits(Packed s) const {
    if (multiplicity_ == 1) return (used_ & s) == 0;
    for (Packed m = s; m != 0; m &= m - 1) {
      if (use_[static_cast<std::size_t>(std::countr_zero(m))] >= multiplicity_) return false;
    }
    return true;
  }

  void apply(Packed s, int delta) {
    if (multiplicity_ == 1) {
      used_ ^= s;
      return;
    }
    for (Packed m = s; m != 0; m &= m - 1) {
      use_[static_cast<std::size_t>(std::countr_zero(m))] += static_cast<std::size_t>(delta);
    }
  }

  bool descend(std::size_t i) {
    if (i == options_.size()) return true;
    const auto& opts = *options_[i];
    const std::size_t start = same_as_prev_[i] ? chosen_[i - 1] : 0;
    for (std::size_t idx = start; idx < opts.size(); ++idx) {
      if (++nodes_ > budget_) {
        exhausted_ = true;
        return false;
      }
      const Packed s = opts[idx].mask();
      if (!fits(s)) continue;
      apply(s, 1);
      chosen_[i] = idx;
      if (descend(i + 1)) return true;
      apply(s, -1);
      if (exhausted_) return false;
    }
    return false;
  }

  std::vector<const std::vector<PositionSet>*> options_;
  std::vector<bool> same_as_prev_;
  std::size_t multiplicity_;
  std::uint64_t budget_;
  std::vector<std::size_t> chosen_;
  std::array<std::size_t, 64> use_{};
  Packed used_ = 0;
  std::uint64_t nodes_ = 0;
  bool exhausted_ = false;
};

struct BitOptions {
  std::vector<PositionSet> sets;
  bool complete = true;
  std::uint64_t nodes = 0;
};

ServeResult serve_with(const Query& q, const std::map<std::size_t, BitOptions>& per_bit, std::size_t multiplicity,
                       std::uint64_t budget) {
  ServeResult result;
  bool all_complete = true;
  for (auto b : q.requests) all_complete = all_complete && per_bit.at(b).complete;

  // Requests with fewer candidate sets go first; equal requests stay adjacent.
  std::vector<std::size_t> order(q.requests.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto& oa = per_bit.at(q.requests[a]).sets;
    const auto& ob = per_bit.at(q.requests[b]).sets;
    if (oa.size() != ob.size()) return oa.size() < ob.size();
    return q.requests[a] < q.requests[b];
  });
  std::vector<const std::vector<PositionSet>*> options;
  std::vector<bool> same;
  for (std::size_t i = 0; i < order.size(); ++i) {
    options.push_back(&per_bit.at(q.requests[order[i]]).sets);
    same.push_back(i > 0 && q.requests[order[i]] == q.requests[order[i - 1]]);
  }
  Server server(std::move(options), std::move(same), multiplicity, budget);
  const bool ok = server.run();
  result.nodes = server.nodes();
  if (ok) {
    std::vector<PositionSet> sets(q.requests.size());
    for (std::size_t i = 0; i < order.size(); ++i) sets[order[i]] = server.chosen(i);
    result.status = SearchStatus::Found;
    result.plan = ServingPlan::from_sets(std::move(sets));
  } else if (server.exhausted() || !all_complete) {
    result.status = SearchStatus::BudgetExhausted;
  } else {
    result.status = SearchStatus::ProvenImpossible;
  }
  return result;
}

void check_query(const Encoder& e, const Query& q) {
  if (q.requests.empty()) throw UsageError("a query needs at least one request");
  for (auto b : q.requests) check_bit(e, b);
}

}  // namespace

FamilySearch find_disjoint_family(const Encoder& e, std::size_t j, std::size_t t,
                                  std::optional<std::size_t> max_width, std::uint64_t budget) {
  check_bit(e, j);
  if (t == 0) throw UsageError("t must be at least 1");
  FamilySearch out;
  auto sets = minimal_recovery_sets(e, j, max_width, budget);
  out.nodes = sets.nodes;
  std::map<std::size_t, BitOptions> per_bit;
  per_bit[j] = BitOptions{std::move(sets.sets), sets.complete, sets.nodes};
  Query q{std::vector<std::size_t>(t, j)};
  const std::uint64_t left = budget > out.nodes ? budget - out.nodes : 0;
  auto served = serve_with(q, per_bit, 1, left);
  out.nodes += served.nodes;
  out.status = served.status;
  if (served.plan) out.family = RecoveryFamily{j, served.plan->sets};
  return out;
}

ServeResult serve_query(const Encoder& e, const Query& q, std::optional<std::size_t> width, std::size_t multiplicity,
                        std::uint64_t budget) {
  check_query(e, q);
  if (multiplicity == 0) throw UsageError("multiplicity must be at least 1");
  std::map<std::size_t, BitOptions> per_bit;
  std::uint64_t used = 0;
  for (auto b : q.requests) {
    if (per_bit.count(b)) continue;
    const std::uint64_t left = budget > used ? budget - used : 0;
    auto sets = minimal_recovery_sets(e, b, width, left);
    used += sets.nodes;
    per_bit[b] = BitOptions{std::move(sets.sets), sets.complete, sets.nodes};
  }
  auto result = serve_with(q, per_bit, multiplicity, budget > used ? budget - used : 0);
  result.nodes += used;
  return result;
}

bool plan_serves(const Encoder& e, const Query& q, std::span<const PositionSet> sets,
                 std::optional<std::size_t> width, std::size_t multiplicity) {
  if (sets.size() != q.requests.size()) return false;
  std::array<std::size_t, 64> use{};
  for (std::size_t i = 0; i < sets.size(); ++i) {
    const auto s = sets[i];
    if (s.empty() || (e.n() < 64 && (s.mask() >> e.n()) != 0)) return false;
    if (width && s.size() > *width) return false;
    if (q.requests[i] < 1 || q.requests[i] > e.k()) return false;
    if (!recovers(e, q.requests[i], s.mask())) return false;
    for (int p : s.positions()) {
      if (++use[p - 1] > multiplicity) return false;
    }
  }
  return true;
}

// --------------------------------------------------------- verification

namespace {

using Clock = std::chrono::steady_clock;

Verdict combine(const std::vector<QueryOutcome>& outcomes, bool& complete) {
  bool any_fail = false;
  bool any_unknown = false;
  for (const auto& o : outcomes) {
    any_fail = any_fail || o.status == SearchStatus::ProvenImpossible;
    any_unknown = any_unknown || o.status == SearchStatus::BudgetExhausted;
  }
  complete = !any_unknown;
  if (any_fail) return Verdict::Fails;
  return any_unknown ? Verdict::Unknown : Verdict::Holds;
}

const RecoveryFamily* witness_for(std::span<const RecoveryFamily> witnesses, std::size_t bit) {
  for (const auto& w : witnesses) {
    if (w.bit == bit) return &w;
  }
  return nullptr;
}

QueryOutcome pir_outcome(const Encoder& e, std::size_t j, std::size_t t, const VerifyOptions& opts,
                         std::uint64_t& nodes) {
  QueryOutcome o;
  Query q{std::vector<std::size_t>(t, j)};
  o.query = q.requests;
  if (const auto* w = witness_for(opts.witnesses, j)) {
    if (plan_serves(e, q, w->sets, opts.width, opts.multiplicity)) {
      o.status = SearchStatus::Found;
      o.sets = w->sets;
      o.from_witness = true;
      nodes = 0;
      return o;
    }
  }
  auto r = serve_query(e, q, opts.width, opts.multiplicity, opts.budget);
  nodes = r.nodes;
  o.status = r.status;
  if (r.plan) o.sets = r.plan->sets;
  return o;
}

VerificationReport pir_report(std::size_t t, const VerifyOptions& opts) {
  VerificationReport rep;
  rep.property = "pir";
  rep.t = t;
  rep.width = opts.width;
  rep.multiplicity = opts.multiplicity;
  return rep;
}

void check_verify_args(std::size_t t, const VerifyOptions& opts) {
  if (t == 0) throw UsageError("t must be at least 1");
  if (opts.multiplicity == 0) throw UsageError("multiplicity must be at least 1");
  if (opts.width && *opts.width == 0) throw UsageError("width must be at least 1");
}

}  // namespace

std::vector<Query> batch_queries(std::size_t k, std::size_t t) {
  std::vector<Query> out;
  std::vector<std::size_t> cur(t, 1);
  while (true) {
    out.push_back(Query{cur});
    std::size_t i = t;
    while (i > 0 && cur[i - 1] == k) --i;
    if (i == 0) break;
    const std::size_t v = cur[i - 1] + 1;
    for (std::size_t q = i - 1; q < t; ++q) cur[q] = v;
  }
  return out;
}

namespace serial {

VerificationReport verify_pir(const Encoder& e, std::size_t t, const VerifyOptions& opts) {
  check_verify_args(t, opts);
  const auto start = Clock::now();
  auto rep = pir_report(t, opts);
  for (std::size_t j = 1; j <= e.k(); ++j) {
    std::uint64_t nodes = 0;
    rep.outcomes.push_back(pir_outcome(e, j, t, opts, nodes));
    rep.nodes += nodes;
  }
  rep.verdict = combine(rep.outcomes, rep.complete);
  rep.elapsed_ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
  return rep;
}

VerificationReport verify_batch(const Encoder& e, std::size_t t, const VerifyOptions& opts) {
  check_verify_args(t, opts);
  const auto start = Clock::now();
  VerificationReport rep;
  rep.property = "batch";
  rep.t = t;
  rep.width = opts.width;
  rep.multiplicity = opts.multiplicity;
  std::map<std::size_t, BitOptions> per_bit;
  for (std::size_t j = 1; j <= e.k(); ++j) {
    auto sets = minimal_recovery_sets(e, j, opts.width, opts.budget);
    rep.nodes += sets.nodes;
    per_bit[j] = BitOptions{std::move(sets.sets), sets.complete, sets.nodes};
  }
  for (const auto& q : batch_queries(e.k(), t)) {
    auto r = serve_with(q, per_bit, opts.multiplicity, opts.budget);
    QueryOutcome o{q.requests, r.status, {}, false};
    if (r.plan) o.sets = r.plan->sets;
    rep.nodes += r.nodes;
    rep.outcomes.push_back(std::move(o));
  }
  rep.verdict = combine(rep.outcomes, rep.complete);
  rep.elapsed_ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
  return rep;
}

}  // namespace serial

VerificationReport verify_pir(const Encoder& e, std::size_t t, const VerifyOptions& opts) {
  check_verify_args(t, opts);
  const auto start = Clock::now();
  auto rep = pir_report(t, opts);
  const auto k = static_cast<std::ptrdiff_t>(e.k());
  std::vector<QueryOutcome> outcomes(e.k());
  std::vector<std::uint64_t> nodes(e.k(), 0);
#pragma omp parallel for schedule(dynamic) num_threads(resolve_threads(opts.par))
  for (std::ptrdiff_t i = 0; i < k; ++i) {
    outcomes[i] = pir_outcome(e, static_cast<std::size_t>(i) + 1, t, opts, nodes[i]);
  }
  rep.outcomes = std::move(outcomes);
  rep.nodes = std::accumulate(nodes.begin(), nodes.end(), std::uint64_t{0});
  rep.verdict = combine(rep.outcomes, rep.complete);
  rep.elapsed_ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
  return rep;
}

VerificationReport verify_batch(const Encoder& e, std::size_t t, const VerifyOptions& opts) {
  check_verify_args(t, opts);
  const auto start = Clock::now();
  VerificationReport rep;
  rep.property = "batch";
  rep.t = t;
  rep.width = opts.width;
  rep.multiplicity = opts.multiplicity;
  const int threads = resolve_threads(opts.par);

  const auto k = static_cast<std::ptrdiff_t>(e.k());
  std::vector<BitOptions> options(e.k());
#pragma omp parallel for schedule(dynamic) num_threads(threads)
  for (std::ptrdiff_t i = 0; i < k; ++i) {
    auto sets = minimal_recovery_sets(e, static_cast<std::size_t>(i) + 1, opts.width, opts.budget);
    options[i] = BitOptions{std::move(sets.sets), sets.complete, sets.nodes};
  }
  std::map<std::size_t, BitOptions> per_bit;
  for (std::size_t j = 1; j <= e.k(); ++j) {
    rep.nodes += options[j - 1].nodes;
    per_bit[j] = std::move(options[j - 1]);
  }

  const auto queries = batch_queries(e.k(), t);
  const auto count = static_cast<std::ptrdiff_t>(queries.size());
  std::vector<QueryOutcome> outcomes(queries.size());
  std::vector<std::uint64_t> nodes(queries.size(), 0);
#pragma omp parallel for schedule(dynamic) num_threads(threads)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    auto r = serve_with(queries[i], per_bit, opts.multiplicity, opts.budget);
    outcomes[i] = QueryOutcome{queries[i].requests, r.status, {}, false};
    if (r.plan) outcomes[i].sets = r.plan->sets;
    nodes[i] = r.nodes;
  }
  rep.outcomes = std::move(outcomes);
  rep.nodes += std::accumulate(nodes.begin(), nodes.end(), std::uint64_t{0});
  rep.verdict = combine(rep.outcomes, rep.complete);
  rep.elapsed_ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
  return rep;
}

}  // namespace pirc
