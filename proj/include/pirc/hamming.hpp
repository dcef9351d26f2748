#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pirc/bit_matrix.hpp"
#include "pirc/code.hpp"
#include "pirc/parallel.hpp"
#include "pirc/recovery.hpp"

namespace pirc {

// Binary Hamming code of order r. Position i (1-based) is labelled by the
// r-bit vector with integer value i, so the parity-check columns run through
// the nonzero vectors in ascending order (row 1 holds the most significant
// bit).
struct HammingCode {
  int order = 0;
  BitMatrix parity_check;  // r x (2^r - 1)
  BitMatrix generator;     // reduced row echelon form, k x n

  std::size_t length() const { return parity_check.cols(); }
  std::size_t dimension() const { return generator.rows(); }
  bool is_codeword(const Word& w) const;
  Code code() const;
  Encoder encoder() const { return Encoder::linear(generator); }
};

HammingCode build_hamming(int r);

// A line {a, b, a^b} of PG(r-1, 2); points are nonzero r-bit integers, which
// double as codeword positions.
struct Line {
  std::array<std::uint32_t, 3> points{};  // ascending
  Word indicator(std::size_t length) const;
};

std::vector<Line> lines_pg(int r);

// Exhaustive test that no encoder of a code can be a 3-PIR code, by showing
// that every data-bit function recoverable from three disjoint position sets
// is invariant under c -> 1+c.
//
// For each unordered triple of disjoint nonempty position sets, codewords
// agreeing on any one set are merged; a data bit with those recovery sets is
// constant on the resulting components, and it is balanced because an
// encoder is a bijection. Complementation maps components onto components.
// A balanced union of components that is not closed under complementation
// exists iff some complement-swapped pair of components can be split while
// still reaching half the code; a subset-sum over the component orbits
// decides this. If no triple admits such a split, every data bit of every
// 3-PIR encoder would satisfy f(c) = f(1+c), contradicting injectivity.
struct ComplementCheck {
  bool all_closed = true;  // true: no 3-PIR encoder exists
  std::uint64_t triples = 0;
  std::uint64_t splittable_triples = 0;
  // Lexicographically first triple admitting a non-closed balanced split.
  std::optional<std::array<PositionSet, 3>> counterexample;
  // histogram[m] = triples whose union partition has m components
  std::vector<std::uint64_t> component_histogram;
  double elapsed_ms = 0.0;
};

// The code must be closed under complementation and have 2^k words.
ComplementCheck check_complement_obstruction(const Code& code, Parallelism par = {});

namespace serial {
ComplementCheck check_complement_obstruction(const Code& code);
}

struct HammingVerdict {
  int order = 0;
  bool encoder_exists = false;  // meaningful only when `decided`
  bool decided = false;
  ComplementCheck check;
};

// r = 2 or 3; larger orders are outside the exhaustive regime.
HammingVerdict check_no_3pir_any_encoder(int r, Parallelism par = {});

// Claims about three disjoint minimal recovery sets of a Hamming code:
// (1) a line meeting two of the sets meets the third; (2) no set contains a
// line; (3) the unused points with zero form a subspace H and each set is a
// coset of H of size 2^(r-2).
struct ClaimReport {
  bool lines_meet_all_three = true;
  std::optional<Line> claim1_violation;
  bool no_set_contains_line = true;
  std::optional<Line> claim2_violation;
  bool unused_is_subspace = true;
  bool sets_are_cosets = true;
  bool sizes_match = true;
  bool all_hold() const {
    return lines_meet_all_three && no_set_contains_line && unused_is_subspace && sets_are_cosets && sizes_match;
  }
};

ClaimReport check_theorem6_claims(int r, const std::array<PositionSet, 3>& triple);

// Triples formed by the three cosets other than H of a subspace H of
// dimension r-2 (all such subspaces, in ascending order of their bases).
std::vector<std::array<PositionSet, 3>> coset_triples(int r);

}  // namespace pirc
