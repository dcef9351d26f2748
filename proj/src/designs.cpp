#include "pirc/designs.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <limits>
#include <map>
#include <sstream>
#include <string>

#include "pirc/error.hpp"

namespace pirc {

// ----------------------------------------------------------- validation

namespace {

void for_each_subset(const Block& b, int t, std::vector<int>& cur, std::size_t from,
                     const auto& visit) {
  if (static_cast<int>(cur.size()) == t) {
    visit(cur);
    return;
  }
  for (std::size_t i = from; i < b.size(); ++i) {
    cur.push_back(b[i]);
    for_each_subset(b, t, cur, i + 1, visit);
    cur.pop_back();
  }
}

void check_shape(const PackingDesign& d) {
  if (d.v < 1 || d.blocksize < 1 || d.strength < 1 || d.lambda < 1) {
    throw UsageError("packing parameters must be positive");
  }
  if (d.blocksize > d.v) throw UsageError("block size exceeds point count");
  if (d.strength > d.blocksize) throw UsageError("strength exceeds block size");
  for (const auto& b : d.blocks) {
    if (static_cast<int>(b.size()) != d.blocksize) throw UsageError("block has wrong size");
    for (std::size_t i = 0; i < b.size(); ++i) {
      if (b[i] < 1 || b[i] > d.v) throw UsageError("block point out of range");
      if (i > 0 && b[i] <= b[i - 1]) throw UsageError("block points must be strictly ascending");
    }
  }
}

}  // namespace

PackingCheck is_packing(const PackingDesign& d) {
  check_shape(d);
  std::map<std::vector<int>, int> cover;
  std::vector<int> cur;
  for (const auto& b : d.blocks) {
    for_each_subset(b, d.strength, cur, 0, [&](const std::vector<int>& s) { ++cover[s]; });
  }
  for (const auto& [subset, count] : cover) {
    if (count > d.lambda) return {false, subset};
  }
  return {};
}

// ------------------------------------------------------------- formula

std::int64_t packing_bound_u(std::int64_t r) { return (r * ((r - 1) / 3)) / 4; }

std::int64_t packing_bound_j(std::int64_t r) {
  const auto u = packing_bound_u(r);
  return (r % 12 == 7 || r % 12 == 10) ? u - 1 : u;
}

std::int64_t packing_number_formula(std::int64_t r) {
  if (r < 4) throw UsageError("packing_number_formula needs r >= 4");
  std::int64_t eps = 0;
  if (r == 9 || r == 10 || r == 17) eps = 1;
  if (r == 8 || r == 11 || r == 19) eps = 2;
  return packing_bound_j(r) - eps;
}

// --------------------------------------------------------------- greedy

namespace {

using PairMask = std::array<std::uint64_t, 4>;

int pair_index(int a, int b, int v) {
  // a < b, 1-based; row-major over the upper triangle.
  return (a - 1) * v - (a - 1) * a / 2 + (b - a) - 1;
}

struct Candidate {
  Block points;
  std::uint32_t point_mask = 0;
  PairMask pairs{};
};

bool disjoint(const PairMask& a, const PairMask& b) {
  return ((a[0] & b[0]) | (a[1] & b[1]) | (a[2] & b[2]) | (a[3] & b[3])) == 0;
}

std::vector<Candidate> all_blocks(int v, int blocksize) {
  std::vector<Candidate> out;
  Block cur(static_cast<std::size_t>(blocksize));
  for (int i = 0; i < blocksize; ++i) cur[i] = i + 1;
  while (true) {
    Candidate c;
    c.points = cur;
    for (int p : cur) c.point_mask |= std::uint32_t{1} << (p - 1);
    for (std::size_t i = 0; i < cur.size(); ++i) {
      for (std::size_t j = i + 1; j < cur.size(); ++j) {
        const int idx = pair_index(cur[i], cur[j], v);
        c.pairs[idx / 64] |= std::uint64_t{1} << (idx % 64);
      }
    }
    out.push_back(std::move(c));
    int i = blocksize;
    while (i > 0 && cur[i - 1] == v - blocksize + i) --i;
    if (i == 0) break;
    ++cur[i - 1];
    for (int q = i; q < blocksize; ++q) cur[q] = cur[q - 1] + 1;
  }
  return out;
}

void check_search_args(int v, int blocksize) {
  if (blocksize < 2 || blocksize > v) throw UsageError("need 2 <= blocksize <= v");
  if (v > kMaxPackingPoints) throw UsageError("packing constructors support at most 22 points");
}

}  // namespace

PackingDesign greedy_packing(int v, int blocksize) {
  check_search_args(v, blocksize);
  PackingDesign d{v, blocksize, 2, 1, {}};
  PairMask covered{};
  for (const auto& c : all_blocks(v, blocksize)) {
    if (!disjoint(covered, c.pairs)) continue;
    for (int w = 0; w < 4; ++w) covered[w] |= c.pairs[w];
    d.blocks.push_back(c.points);
  }
  return d;
}

// --------------------------------------------------------- exact search

namespace {

class PackingSearcher {
 public:
  PackingSearcher(const std::vector<Candidate>& blocks, int v, int blocksize, std::uint64_t budget,
                  std::atomic<std::uint64_t>& nodes, const std::atomic<std::size_t>* found_branch,
                  std::size_t branch)
      : blocks_(blocks),
        v_(v),
        blocksize_(blocksize),
        budget_(budget),
        nodes_(nodes),
        found_branch_(found_branch),
        branch_(branch) {}

  // Extends `chosen` by `need` blocks drawn in order from `cands`.
  bool run(std::vector<int>& chosen, const std::vector<int>& cands, int need) {
    chosen_ = &chosen;
    degree_.fill(0);
    for (int b : chosen) {
      for (int p : blocks_[b].points) ++degree_[p - 1];
    }
    return descend(cands, need);
  }

  bool exhausted() const { return exhausted_; }

 private:
  bool should_stop() {
    if (nodes_.fetch_add(1, std::memory_order_relaxed) + 1 > budget_) {
      exhausted_ = true;
      return true;
    }
    return found_branch_ != nullptr && found_branch_->load(std::memory_order_relaxed) < branch_;
  }

  // Points through which `need` further blocks can still pass.
  bool degree_bound_ok(const std::vector<int>& cands, int need) const {
    std::array<int, kMaxPackingPoints> avail{};
    for (int c : cands) {
      for (std::uint32_t m = blocks_[c].point_mask; m != 0; m &= m - 1) ++avail[std::countr_zero(m)];
    }
    int total = 0;
    for (int p = 0; p < v_; ++p) {
      const int free_pairs = (v_ - 1) - (blocksize_ - 1) * degree_[p];
      total += std::min(avail[p], free_pairs / (blocksize_ - 1));
    }
    return total >= need * blocksize_;
  }

  bool descend(const std::vector<int>& cands, int need) {
    if (need == 0) return true;
    if (static_cast<int>(cands.size()) < need || !degree_bound_ok(cands, need)) return false;
    std::vector<int> next;
    for (std::size_t i = 0; i + static_cast<std::size_t>(need) <= cands.size(); ++i) {
      if (should_stop()) return false;
      const auto& b = blocks_[cands[i]];
      next.clear();
      for (std::size_t j = i + 1; j < cands.size(); ++j) {
        if (disjoint(blocks_[cands[j]].pairs, b.pairs)) next.push_back(cands[j]);
      }
      chosen_->push_back(cands[i]);
      for (int p : b.points) ++degree_[p - 1];
      if (descend(next, need - 1)) return true;
      for (int p : b.points) --degree_[p - 1];
      chosen_->pop_back();
      if (exhausted_) return false;
    }
    return false;
  }

  const std::vector<Candidate>& blocks_;
  int v_;
  int blocksize_;
  std::uint64_t budget_;
  std::atomic<std::uint64_t>& nodes_;
  const std::atomic<std::size_t>* found_branch_;
  std::size_t branch_;
  std::vector<int>* chosen_ = nullptr;
  std::array<int, kMaxPackingPoints> degree_{};
  bool exhausted_ = false;
};

struct Root {
  std::vector<Candidate> blocks;
  std::vector<int> second;  // candidates compatible with block 0
};

Root make_root(int v, int blocksize) {
  Root r{all_blocks(v, blocksize), {}};
  for (int i = 1; i < static_cast<int>(r.blocks.size()); ++i) {
    if (disjoint(r.blocks[0].pairs, r.blocks[i].pairs)) r.second.push_back(i);
  }
  return r;
}

std::vector<int> branch_candidates(const Root& root, std::size_t idx) {
  std::vector<int> out;
  const auto& b = root.blocks[root.second[idx]];
  for (std::size_t j = idx + 1; j < root.second.size(); ++j) {
    if (disjoint(root.blocks[root.second[j]].pairs, b.pairs)) out.push_back(root.second[j]);
  }
  return out;
}

PackingDesign to_design(const Root& root, int v, int blocksize, const std::vector<int>& chosen) {
  PackingDesign d{v, blocksize, 2, 1, {}};
  for (int b : chosen) d.blocks.push_back(root.blocks[b].points);
  return d;
}

PackingSearch trivial_search(int v, int blocksize, int target) {
  PackingSearch out;
  out.status = PackingStatus::Found;
  Block first(static_cast<std::size_t>(blocksize));
  for (int i = 0; i < blocksize; ++i) first[i] = i + 1;
  out.design = PackingDesign{v, blocksize, 2, 1, {}};
  if (target == 1) out.design->blocks.push_back(first);
  return out;
}

}  // namespace

namespace serial {

PackingSearch exact_packing(int v, int blocksize, int target, std::uint64_t budget) {
  check_search_args(v, blocksize);
  if (target < 1) throw UsageError("target must be at least 1");
  if (target == 1) return trivial_search(v, blocksize, target);
  const auto root = make_root(v, blocksize);
  std::atomic<std::uint64_t> nodes{0};
  bool exhausted = false;
  for (std::size_t idx = 0; idx < root.second.size(); ++idx) {
    std::vector<int> chosen{0, root.second[idx]};
    PackingSearcher s(root.blocks, v, blocksize, budget, nodes, nullptr, idx);
    if (s.run(chosen, branch_candidates(root, idx), target - 2)) {
      return {PackingStatus::Found, to_design(root, v, blocksize, chosen), nodes.load()};
    }
    if (s.exhausted()) {
      exhausted = true;
      break;
    }
  }
  return {exhausted ? PackingStatus::Unknown : PackingStatus::ProvenImpossible, std::nullopt, nodes.load()};
}

}  // namespace serial

PackingSearch exact_packing(int v, int blocksize, int target, std::uint64_t budget, Parallelism par) {
  check_search_args(v, blocksize);
  if (target < 1) throw UsageError("target must be at least 1");
  if (target == 1) return trivial_search(v, blocksize, target);
  const auto root = make_root(v, blocksize);
  const auto branches = static_cast<std::ptrdiff_t>(root.second.size());
  std::atomic<std::uint64_t> nodes{0};
  std::atomic<std::size_t> found_branch{std::numeric_limits<std::size_t>::max()};
  std::vector<std::vector<int>> solutions(root.second.size());
  std::vector<char> exhausted(root.second.size(), 0);

#pragma omp parallel for schedule(dynamic, 1) num_threads(resolve_threads(par))
  for (std::ptrdiff_t i = 0; i < branches; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    if (found_branch.load() < idx) continue;
    std::vector<int> chosen{0, root.second[idx]};
    PackingSearcher s(root.blocks, v, blocksize, budget, nodes, &found_branch, idx);
    if (s.run(chosen, branch_candidates(root, idx), target - 2)) {
      solutions[idx] = chosen;
      std::size_t cur = found_branch.load();
      while (idx < cur && !found_branch.compare_exchange_weak(cur, idx)) {
      }
    } else if (s.exhausted()) {
      exhausted[idx] = 1;
    }
  }

  PackingSearch out;
  out.nodes = nodes.load();
  const auto best = found_branch.load();
  if (best != std::numeric_limits<std::size_t>::max()) {
    out.status = PackingStatus::Found;
    out.design = to_design(root, v, blocksize, solutions[best]);
    return out;
  }
  const bool any_exhausted = std::any_of(exhausted.begin(), exhausted.end(), [](char c) { return c != 0; });
  out.status = any_exhausted ? PackingStatus::Unknown : PackingStatus::ProvenImpossible;
  return out;
}

// ------------------------------------------------------------------ I/O

PackingDesign read_packing(std::istream& in) {
  std::string line;
  PackingDesign d;
  bool header = false;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos || line.front() == '#') continue;
    std::istringstream ls(line);
    if (!header) {
      if (!(ls >> d.v >> d.blocksize >> d.lambda)) throw InputError("packing header must be 'v blocksize lambda'");
      header = true;
      continue;
    }
    Block b;
    int p = 0;
    while (ls >> p) b.push_back(p);
    d.blocks.push_back(std::move(b));
  }
  if (!header) throw InputError("packing file is empty");
  try {
    check_shape(d);
  } catch (const UsageError& e) {
    throw InputError(std::string("invalid packing file: ") + e.what());
  }
  return d;
}

void write_packing(std::ostream& out, const PackingDesign& d) {
  out << d.v << ' ' << d.blocksize << ' ' << d.lambda << '\n';
  for (const auto& b : d.blocks) {
    for (std::size_t i = 0; i < b.size(); ++i) out << (i ? " " : "") << b[i];
    out << '\n';
  }
}

}  // namespace pirc
