#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pirc/code.hpp"
#include "pirc/parallel.hpp"
#include "pirc/recovery.hpp"

namespace pirc {

// A (t, w, mu)-PIR code has minimum distance at least ceil(t / mu). The
// check runs the verifier first; if the encoder is not PIR at these
// parameters the comparison is vacuous and reported as such.
struct MinDistCheck {
  std::size_t distance = 0;
  std::size_t bound = 0;
  bool ok = false;
  bool vacuous = false;
  Verdict pir = Verdict::Unknown;
};

MinDistCheck check_mindist_bound(const Encoder& e, std::size_t t, std::size_t mu, VerifyOptions opts = {});

// Minimum distance of the encoder's code (linear codes by weight enumeration).
std::size_t encoder_min_distance(const Encoder& e);

// ------------------------------------------------------------------ A2(n,d)

enum class A2Source { Computed, Reference, Trivial };
std::string to_string(A2Source s);

struct A2Entry {
  std::size_t n = 0;
  std::size_t d = 3;
  std::size_t value = 0;
  A2Source source = A2Source::Computed;
  // Computed: no larger clique exists (search finished). Reference: value
  // taken from the literature table.
  bool exact = false;
  std::optional<Code> witness;
  std::uint64_t nodes = 0;
  double elapsed_ms = 0.0;
  std::string flag;  // literature tag for reference entries
};

inline constexpr std::size_t kMaxCliqueLength = 10;

// Largest code of length n and minimum distance >= d, as a maximum clique in
// the distance graph. The zero word is pinned, and the search splits on the
// lowest-weight nonzero codeword, which coordinate permutations move to
// 1^w 0^(n-w). Vertices are ordered by weight, then value. The witness is the
// first maximum clique in branch order.
A2Entry max_code_size(std::size_t n, std::size_t d = 3, std::uint64_t budget = kDefaultBudget, Parallelism par = {});

namespace serial {
A2Entry max_code_size(std::size_t n, std::size_t d = 3, std::uint64_t budget = kDefaultBudget);
}

// Table values of A2(n,3) for 3 <= n <= 12, tagged as literature data.
std::optional<A2Entry> a2_reference(std::size_t n);

// floor(2^n / (n + 1)), the sphere-packing bound for d = 3.
std::uint64_t sphere_packing_bound3(std::size_t n);

// --------------------------------------------------------------- optimality

struct ChainStep {
  std::string claim;
  std::string source;  // "computed", "theorem" or "literature"
  std::string detail;
};

struct BoundReport {
  std::size_t k = 0;
  std::size_t t = 3;
  std::size_t lower_bound = 0;
  std::size_t upper_bound = 0;
  bool exact = false;
  std::vector<ChainStep> chain;
  std::vector<std::string> literature_flags;
  double elapsed_ms = 0.0;
};

struct OptimalityOptions {
  // Replace the uniqueness of the (7,16,3) code by an exhaustive class count.
  bool verify_uniqueness = false;
  std::uint64_t budget = kDefaultBudget;
  Parallelism par;
};

// Smallest length of a (possibly nonlinear) binary 3-PIR code of size 2^k,
// 1 <= k <= 6.
BoundReport optimality_report_3pir(std::size_t k, const OptimalityOptions& opts = {});

}  // namespace pirc
