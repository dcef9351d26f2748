#pragma once

#include <cstddef>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <vector>

#include "pirc/parallel.hpp"

namespace pirc {

using Block = std::vector<int>;  // ascending 1-based points

// t-(v, blocksize, lambda) packing: every t-subset of the v points lies in at
// most lambda blocks.
struct PackingDesign {
  int v = 0;
  int blocksize = 0;
  int strength = 2;
  int lambda = 1;
  std::vector<Block> blocks;
};

struct PackingCheck {
  bool ok = true;
  std::vector<int> violator;  // lexicographically first over-covered t-subset
};

PackingCheck is_packing(const PackingDesign& d);

// floor((r/4) * floor((r-1)/3))
std::int64_t packing_bound_u(std::int64_t r);
// U - 1 when r = 7 or 10 (mod 12), else U.
std::int64_t packing_bound_j(std::int64_t r);
// D(r,4,2): the packing number for block size 4, pairs covered at most once.
std::int64_t packing_number_formula(std::int64_t r);

// Lexicographic greedy pair packing.
PackingDesign greedy_packing(int v, int blocksize);

enum class PackingStatus { Found, ProvenImpossible, Unknown };

struct PackingSearch {
  PackingStatus status = PackingStatus::Unknown;
  std::optional<PackingDesign> design;
  std::uint64_t nodes = 0;
};

inline constexpr int kMaxPackingPoints = 22;

// Backtracking for a 2-(v, blocksize, 1) packing with `target` blocks. The
// first block is fixed to {1..blocksize}; later blocks ascend
// lexicographically. Work splits on the second block.
PackingSearch exact_packing(int v, int blocksize, int target, std::uint64_t budget, Parallelism par = {});

namespace serial {
PackingSearch exact_packing(int v, int blocksize, int target, std::uint64_t budget);
}

// Header "v blocksize lambda", then one block per line.
PackingDesign read_packing(std::istream& in);
void write_packing(std::ostream& out, const PackingDesign& d);

}  // namespace pirc
