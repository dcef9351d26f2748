#include "pirc/constructions.hpp"

#include <algorithm>

#include "pirc/error.hpp"

namespace pirc {

namespace {

// Generator (I_k | P) from k blocks on r points, plus the recovery witnesses
// {j} and, per point p of block j, {k+p} together with every other row
// whose block contains p.
ConstructedCode systematic_code(std::size_t k, std::size_t r, const std::vector<Block>& blocks, std::size_t t,
                                std::string name) {
  const std::size_t n = k + r;
  if (n > kPackedBits) throw UsageError("constructed code would exceed 64 positions");
  BitMatrix g(k, n);
  for (std::size_t j = 1; j <= k; ++j) {
    g.set(j, j);
    for (int p : blocks[j - 1]) g.set(j, k + static_cast<std::size_t>(p));
  }
  std::vector<RecoveryFamily> witnesses;
  for (std::size_t j = 1; j <= k; ++j) {
    RecoveryFamily fam{j, {PositionSet{static_cast<int>(j)}}};
    for (int p : blocks[j - 1]) {
      std::vector<int> set{static_cast<int>(k) + p};
      for (std::size_t other = 1; other <= k; ++other) {
        const auto& b = blocks[other - 1];
        if (other != j && std::binary_search(b.begin(), b.end(), p)) set.push_back(static_cast<int>(other));
      }
      fam.sets.push_back(PositionSet::from(set));
    }
    witnesses.push_back(std::move(fam));
  }
  return ConstructedCode{Encoder::linear(std::move(g)), std::move(witnesses), t, std::move(name), r};
}

}  // namespace

std::size_t pir3_redundancy(std::size_t k) {
  if (k < 1) throw UsageError("k must be at least 1");
  std::size_t r = 2;
  while (r * (r - 1) / 2 < k) ++r;
  return r;
}

ConstructedCode build_pir3(std::size_t k) {
  const std::size_t r = pir3_redundancy(k);
  std::vector<Block> pairs;
  for (int a = 1; a <= static_cast<int>(r) && pairs.size() < k; ++a) {
    for (int b = a + 1; b <= static_cast<int>(r) && pairs.size() < k; ++b) pairs.push_back({a, b});
  }
  return systematic_code(k, r, pairs, 3, "pir3");
}

ConstructedCode build_packing_pir(std::size_t k, std::size_t t, const PackingDesign& design) {
  if (k < 1) throw UsageError("k must be at least 1");
  if (t < 3) throw UsageError("packing construction needs t >= 3");
  if (design.strength != 2 || design.lambda != 1) throw UsageError("design must be a 2-(r, t-1, 1) packing");
  if (static_cast<std::size_t>(design.blocksize) != t - 1) throw UsageError("design block size must be t-1");
  if (design.blocks.size() < k) throw UsageError("design has fewer than k blocks");
  if (!is_packing(design).ok) throw UsageError("design is not a valid packing");
  auto blocks = design.blocks;
  std::sort(blocks.begin(), blocks.end());
  blocks.resize(k);
  return systematic_code(k, static_cast<std::size_t>(design.v), blocks, t, "packing-pir");
}

ConstructedCode extend_for_even_t(const ConstructedCode& code) {
  const auto& g = code.encoder.generator();
  const std::size_t n = g.cols();
  if (n + 1 > kPackedBits) throw UsageError("extended code would exceed 64 positions");
  Word parity(g.rows());
  for (std::size_t r = 1; r <= g.rows(); ++r) {
    if (g.row(r).weight() % 2 == 1) parity.set(r);
  }
  const Packed all = n + 1 == 64 ? ~Packed{0} : (Packed{1} << (n + 1)) - 1;
  std::vector<RecoveryFamily> witnesses;
  for (const auto& fam : code.witnesses) {
    Packed used = 0;
    for (auto s : fam.sets) used |= s.mask();
    RecoveryFamily ext = fam;
    ext.sets.emplace_back(all & ~used);
    witnesses.push_back(std::move(ext));
  }
  return ConstructedCode{Encoder::linear(g.with_column(parity)), std::move(witnesses), code.t + 1,
                         code.construction + "+parity", code.redundancy + 1};
}

std::vector<std::pair<std::size_t, std::size_t>> linear_length_table(std::size_t t, std::size_t kmax) {
  if (t != 3) throw UsageError("linear_length_table only covers t = 3");
  if (kmax < 1) throw UsageError("kmax must be at least 1");
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t k = 1; k <= kmax; ++k) out.emplace_back(k, k + pir3_redundancy(k));
  return out;
}

std::size_t packing_pir5_redundancy(std::size_t k) {
  if (k < 1) throw UsageError("k must be at least 1");
  std::int64_t r = 4;
  while (packing_number_formula(r) < static_cast<std::int64_t>(k)) ++r;
  return static_cast<std::size_t>(r);
}

}  // namespace pirc
