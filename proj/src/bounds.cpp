#include "pirc/bounds.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <mutex>

#include "pirc/constructions.hpp"
#include "pirc/error.hpp"
#include "pirc/hamming.hpp"
#include "pirc/searchlab.hpp"

namespace pirc {

std::size_t encoder_min_distance(const Encoder& e) {
  if (e.is_linear()) return min_distance(LinearCode(e.generator()));
  return min_distance(e.code());
}

MinDistCheck check_mindist_bound(const Encoder& e, std::size_t t, std::size_t mu, VerifyOptions opts) {
  if (t < 1 || mu < 1) throw UsageError("t and mu must be at least 1");
  opts.multiplicity = mu;
  MinDistCheck out;
  out.pir = verify_pir(e, t, opts).verdict;
  out.vacuous = out.pir != Verdict::Holds;
  out.distance = encoder_min_distance(e);
  out.bound = (t + mu - 1) / mu;
  out.ok = out.distance >= out.bound;
  return out;
}

std::string to_string(A2Source s) {
  switch (s) {
    case A2Source::Computed: return "computed";
    case A2Source::Reference: return "reference";
    case A2Source::Trivial: return "trivial";
  }
  return "?";
}

std::uint64_t sphere_packing_bound3(std::size_t n) {
  if (n > 62) throw UsageError("sphere-packing bound limited to n <= 62");
  return (std::uint64_t{1} << n) / (n + 1);
}

std::optional<A2Entry> a2_reference(std::size_t n) {
  static constexpr std::size_t table[] = {2, 2, 4, 8, 16, 20, 40, 72, 144, 256};
  if (n < 3 || n > 12) return std::nullopt;
  A2Entry e;
  e.n = n;
  e.d = 3;
  e.value = table[n - 3];
  e.source = A2Source::Reference;
  e.exact = true;
  e.flag = "br-tab";
  return e;
}

// --------------------------------------------------------------- clique

namespace {

// Bitset graph on the candidate vertices of one case, with BBMC-style
// greedy colouring bounds.
class CliqueCase {
 public:
  CliqueCase(std::vector<std::uint32_t> vertices, std::size_t d)
      : vertices_(std::move(vertices)), m_(vertices_.size()), w_((m_ + 63) / 64) {
    adj_.assign(m_ * w_, 0);
    for (std::size_t i = 0; i < m_; ++i) {
      for (std::size_t j = i + 1; j < m_; ++j) {
        if (static_cast<std::size_t>(std::popcount(vertices_[i] ^ vertices_[j])) >= d) {
          adj_[i * w_ + j / 64] |= std::uint64_t{1} << (j % 64);
          adj_[j * w_ + i / 64] |= std::uint64_t{1} << (i % 64);
        }
      }
    }
  }

  struct Run {
    // Size threshold: cliques must beat it (optimization) or reach target.
    std::atomic<std::size_t>* best = nullptr;
    std::size_t target = 0;  // decision mode when nonzero
    std::atomic<std::uint64_t>* nodes = nullptr;
    std::uint64_t budget = 0;
    bool exhausted = false;
    bool found = false;
    std::vector<std::uint32_t> clique;  // best clique recorded by this run (vertex values)
    std::size_t clique_size = 0;
  };

  // Extra vertices beyond the pinned ones; `best` counts these only.
  void search(Run& run) {
    stack_.assign((m_ + 1) * w_, 0);
    for (std::size_t i = 0; i < m_; ++i) stack_[i / 64] |= std::uint64_t{1} << (i % 64);
    current_.clear();
    if (m_ == 0) return;
    expand(run, 0);
  }

 private:
  std::size_t threshold(const Run& run) const {
    return run.target != 0 ? run.target - 1 : run.best->load(std::memory_order_relaxed);
  }

  // Returns false to abort the whole search.
  bool expand(Run& run, std::size_t depth) {
    if (run.nodes->fetch_add(1, std::memory_order_relaxed) + 1 > run.budget) {
      run.exhausted = true;
      return false;
    }
    std::uint64_t* p = &stack_[depth * w_];
    std::vector<std::uint32_t> order;
    std::vector<std::uint32_t> colors;
    const std::size_t have = current_.size();
    const std::size_t thr = threshold(run);
    const std::size_t kmin = thr >= have ? thr - have + 1 : 1;
    {
      std::vector<std::uint64_t> u(p, p + w_);
      std::vector<std::uint64_t> q(w_);
      std::size_t color = 0;
      for (;;) {
        bool any = false;
        for (std::size_t b = 0; b < w_; ++b) any = any || u[b] != 0;
        if (!any) break;
        ++color;
        q = u;
        for (std::size_t b = 0; b < w_; ++b) {
          while (q[b] != 0) {
            const std::size_t v = b * 64 + static_cast<std::size_t>(std::countr_zero(q[b]));
            q[b] &= q[b] - 1;
            u[b] &= ~(std::uint64_t{1} << (v % 64));
            const std::uint64_t* a = &adj_[v * w_];
            for (std::size_t c = b; c < w_; ++c) q[c] &= ~a[c];
            if (color >= kmin) {
              order.push_back(static_cast<std::uint32_t>(v));
              colors.push_back(static_cast<std::uint32_t>(color));
            }
          }
        }
      }
    }
    std::uint64_t* child = &stack_[(depth + 1) * w_];
    for (std::size_t i = order.size(); i-- > 0;) {
      if (have + colors[i] <= threshold(run)) return true;
      const std::size_t v = order[i];
      const std::uint64_t* a = &adj_[v * w_];
      bool empty = true;
      for (std::size_t b = 0; b < w_; ++b) {
        child[b] = p[b] & a[b];
        empty = empty && child[b] == 0;
      }
      current_.push_back(static_cast<std::uint32_t>(v));
      if (empty) {
        if (current_.size() > threshold(run)) record(run);
        if (run.found) return false;
      } else if (!expand(run, depth + 1)) {
        return false;
      }
      current_.pop_back();
      p[v / 64] &= ~(std::uint64_t{1} << (v % 64));
    }
    return true;
  }

  void record(Run& run) {
    const std::size_t size = current_.size();
    if (run.target != 0) {
      run.found = true;
    } else {
      std::size_t prev = run.best->load();
      while (prev < size && !run.best->compare_exchange_weak(prev, size)) {
      }
      if (prev >= size) return;
    }
    if (size > run.clique_size) {
      run.clique_size = size;
      run.clique.clear();
      for (auto v : current_) run.clique.push_back(vertices_[v]);
    }
  }

  std::vector<std::uint32_t> vertices_;
  std::size_t m_;
  std::size_t w_;
  std::vector<std::uint64_t> adj_;
  std::vector<std::uint64_t> stack_;
  std::vector<std::uint32_t> current_;
};

struct CliqueProblem {
  std::size_t n = 0;
  std::size_t d = 0;
  std::vector<std::uint32_t> seconds;  // pinned second vertex per case, weight d..n
  std::vector<std::vector<std::uint32_t>> candidates;
};

CliqueProblem make_problem(std::size_t n, std::size_t d) {
  CliqueProblem pr;
  pr.n = n;
  pr.d = d;
  const std::uint32_t total = std::uint32_t{1} << n;
  for (std::size_t w = d; w <= n; ++w) {
    // 1^w 0^(n-w) with position 1 most significant.
    const std::uint32_t s = ((std::uint32_t{1} << w) - 1) << (n - w);
    std::vector<std::uint32_t> cand;
    for (std::uint32_t x = 1; x < total; ++x) {
      if (x == s) continue;
      if (static_cast<std::size_t>(std::popcount(x)) < w) continue;
      if (static_cast<std::size_t>(std::popcount(x ^ s)) < d) continue;
      cand.push_back(x);
    }
    std::stable_sort(cand.begin(), cand.end(),
                     [](std::uint32_t a, std::uint32_t b) { return std::popcount(a) < std::popcount(b); });
    pr.seconds.push_back(s);
    pr.candidates.push_back(std::move(cand));
  }
  return pr;
}

Code clique_code(std::size_t n, std::uint32_t second, const std::vector<std::uint32_t>& extra) {
  std::vector<std::uint64_t> vals{0, second};
  vals.insert(vals.end(), extra.begin(), extra.end());
  std::sort(vals.begin(), vals.end());
  return Code::from_values(n, vals);
}

void check_clique_args(std::size_t n, std::size_t d) {
  if (n < 1) throw UsageError("length must be positive");
  if (n > kMaxCliqueLength) throw UsageError("clique search supports n <= 10");
  if (d < 1) throw UsageError("distance must be positive");
}

A2Entry trivial_entry(std::size_t n, std::size_t d) {
  A2Entry e;
  e.n = n;
  e.d = d;
  e.value = 1;
  e.source = A2Source::Trivial;
  e.exact = true;
  e.witness = Code::from_values(n, {0});
  return e;
}

// First clique of exactly `target` extra vertices in branch order.
std::optional<Code> decision_witness(const CliqueProblem& pr, std::size_t target_total, std::uint64_t budget,
                                     std::uint64_t& nodes_used) {
  std::atomic<std::uint64_t> nodes{0};
  for (std::size_t c = 0; c < pr.seconds.size(); ++c) {
    if (target_total == 2) return clique_code(pr.n, pr.seconds[c], {});
    CliqueCase cc(pr.candidates[c], pr.d);
    std::atomic<std::size_t> unused{0};
    CliqueCase::Run run;
    run.best = &unused;
    run.target = target_total - 2;
    run.nodes = &nodes;
    run.budget = budget;
    cc.search(run);
    if (run.found) {
      nodes_used += nodes.load();
      return clique_code(pr.n, pr.seconds[c], run.clique);
    }
    if (run.exhausted) break;
  }
  nodes_used += nodes.load();
  return std::nullopt;
}

}  // namespace

namespace serial {

A2Entry max_code_size(std::size_t n, std::size_t d, std::uint64_t budget) {
  check_clique_args(n, d);
  if (n < d) return trivial_entry(n, d);
  const auto start = std::chrono::steady_clock::now();
  const auto pr = make_problem(n, d);
  std::atomic<std::size_t> best{0};
  std::atomic<std::uint64_t> nodes{0};
  Code witness = clique_code(n, pr.seconds.front(), {});
  bool exhausted = false;
  for (std::size_t c = 0; c < pr.seconds.size() && !exhausted; ++c) {
    CliqueCase cc(pr.candidates[c], d);
    CliqueCase::Run run;
    run.best = &best;
    run.nodes = &nodes;
    run.budget = budget;
    cc.search(run);
    exhausted = run.exhausted;
    if (run.clique_size > 0 && run.clique_size == best.load()) witness = clique_code(n, pr.seconds[c], run.clique);
  }
  A2Entry e;
  e.n = n;
  e.d = d;
  e.value = witness.size();
  e.exact = !exhausted;
  e.witness = std::move(witness);
  e.nodes = nodes.load();
  e.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return e;
}

}  // namespace serial

A2Entry max_code_size(std::size_t n, std::size_t d, std::uint64_t budget, Parallelism par) {
  check_clique_args(n, d);
  if (n < d) return trivial_entry(n, d);
  const auto start = std::chrono::steady_clock::now();
  const auto pr = make_problem(n, d);
  const auto cases = static_cast<std::int64_t>(pr.seconds.size());
  std::atomic<std::size_t> best{0};
  std::atomic<std::uint64_t> nodes{0};
  std::atomic<bool> exhausted{false};
  std::mutex mu;
  std::optional<Code> any_best;
  std::size_t any_best_size = 0;
#pragma omp parallel for schedule(dynamic, 1) num_threads(resolve_threads(par))
  for (std::int64_t c = 0; c < cases; ++c) {
    if (exhausted.load()) continue;
    CliqueCase cc(pr.candidates[static_cast<std::size_t>(c)], d);
    CliqueCase::Run run;
    run.best = &best;
    run.nodes = &nodes;
    run.budget = budget;
    cc.search(run);
    if (run.exhausted) exhausted = true;
    if (run.clique_size > 0) {
      std::lock_guard<std::mutex> lock(mu);
      if (run.clique_size > any_best_size) {
        any_best_size = run.clique_size;
        any_best = clique_code(n, pr.seconds[static_cast<std::size_t>(c)], run.clique);
      }
    }
  }
  A2Entry e;
  e.n = n;
  e.d = d;
  e.value = best.load() + 2;
  e.exact = !exhausted.load();
  std::uint64_t used = nodes.load();
  if (e.exact) {
    // Deterministic witness: first maximum clique in branch order.
    e.witness = decision_witness(pr, e.value, budget, used);
  }
  if (!e.witness) e.witness = any_best ? *any_best : clique_code(n, pr.seconds.front(), {});
  e.value = e.witness->size();
  e.nodes = used;
  e.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return e;
}

// ------------------------------------------------------------ optimality

BoundReport optimality_report_3pir(std::size_t k, const OptimalityOptions& opts) {
  if (k < 1 || k > 6) throw UsageError("optimality report covers 1 <= k <= 6");
  const auto start = std::chrono::steady_clock::now();
  BoundReport rep;
  rep.k = k;
  rep.t = 3;
  const std::uint64_t size = std::uint64_t{1} << k;

  auto c = build_pir3(k);
  const std::size_t n_up = c.encoder.n();
  VerifyOptions vo;
  vo.budget = opts.budget;
  vo.par = opts.par;
  const auto ver = verify_pir(c.encoder, 3, vo);
  const bool upper_ok = ver.verdict == Verdict::Holds;
  rep.chain.push_back({"length " + std::to_string(n_up) + " is achievable",
                       "computed",
                       "build_pir3(" + std::to_string(k) + ") verified 3-PIR by exhaustive search: " + to_string(ver.verdict)});
  rep.upper_bound = upper_ok ? n_up : 0;

  const auto md = check_mindist_bound(c.encoder, 3, 1, vo);
  rep.chain.push_back({"every 3-PIR code has minimum distance >= 3", "theorem",
                       "distance bound ceil(t/mu) <= d at t=3, mu=1; the construction has d = " +
                           std::to_string(md.distance)});

  const std::size_t shorter = n_up - 1;
  bool lower_ok = false;
  if (shorter < 3) {
    lower_ok = size > 1;
    rep.chain.push_back({"no length-" + std::to_string(shorter) + " code of size " + std::to_string(size) +
                             " has distance 3",
                         "computed", "A2(" + std::to_string(shorter) + ",3) = 1 since any two words are within distance " +
                                         std::to_string(shorter)});
  } else if (shorter <= 7) {
    const auto a2 = max_code_size(shorter, 3, opts.budget, opts.par);
    const std::string a2s = "A2(" + std::to_string(shorter) + ",3) = " + std::to_string(a2.value);
    if (a2.exact && a2.value < size) {
      lower_ok = true;
      rep.chain.push_back({a2s + " < " + std::to_string(size), "computed", "exhaustive clique search"});
    } else if (a2.exact && a2.value == size && shorter == 7) {
      rep.chain.push_back({a2s + ", so a length-7 code of size 16 is a maximum code", "computed",
                           "exhaustive clique search"});
      bool unique_ok = false;
      if (opts.verify_uniqueness) {
        CodeSearchOptions so;
        so.n = 7;
        so.size = 16;
        so.dmin = 3;
        so.mode = SearchMode::Exhaustive;
        so.budget = opts.budget;
        so.par = opts.par;
        const auto res = search_codes(so);
        const auto ham = canonical_form(build_hamming(3).code());
        unique_ok = res.complete && res.codes.size() == 1 && res.codes.front() == ham.code;
        rep.chain.push_back({"the (7,16,3) code is unique up to equivalence: the Hamming code", "computed",
                             "orderly generation found " + std::to_string(res.codes.size()) + " class(es)" +
                                 (res.complete ? "" : " (incomplete)")});
      }
      if (!unique_ok) {
        unique_ok = true;
        rep.chain.push_back({"the (7,16,3) code is unique up to equivalence: the Hamming code", "literature",
                             "za52"});
        rep.literature_flags.push_back("za52: uniqueness of the (7,16,3) code");
      }
      const auto ham = check_no_3pir_any_encoder(3, opts.par);
      rep.chain.push_back({"no encoder of the order-3 Hamming code is 3-PIR", "computed",
                           std::to_string(ham.check.triples) + " disjoint triples, all complement-closed"});
      rep.chain.push_back({"equivalent codes share 3-PIR encoders", "theorem",
                           "coordinate permutation and translation map recovery sets to recovery sets"});
      lower_ok = unique_ok && ham.decided && !ham.encoder_exists;
    }
  } else {
    const auto sp = sphere_packing_bound3(shorter);
    lower_ok = sp < size;
    rep.chain.push_back({"A2(" + std::to_string(shorter) + ",3) <= " + std::to_string(sp) + " < " + std::to_string(size),
                         "computed", "sphere-packing bound 2^n/(n+1)"});
  }
  if (lower_ok) {
    rep.chain.push_back({"shorter lengths are excluded as well", "theorem",
                         "A2(n,3) is nondecreasing in n (append a zero coordinate)"});
  }
  rep.lower_bound = lower_ok ? n_up : shorter;
  rep.exact = upper_ok && lower_ok;
  if (!upper_ok) rep.upper_bound = n_up;
  rep.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

}  // namespace pirc
