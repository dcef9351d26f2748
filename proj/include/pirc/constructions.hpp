#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "pirc/designs.hpp"
#include "pirc/recovery.hpp"

namespace pirc {

// A systematic linear code (I_k | P) together with t disjoint recovery sets
// for every data bit, emitted by the construction itself.
struct ConstructedCode {
  Encoder encoder;
  std::vector<RecoveryFamily> witnesses;  // witnesses[j-1] is bit j
  std::size_t t = 0;
  std::string construction;
  std::size_t redundancy = 0;  // columns of P
};

// Smallest r with r(r-1)/2 >= k.
std::size_t pir3_redundancy(std::size_t k);

// P has as rows the first k weight-2 vectors of length r (pairs in
// lexicographic order).
ConstructedCode build_pir3(std::size_t k);

// P is the incidence matrix of the first k blocks (lexicographic) of a
// 2-(r, t-1, 1) packing.
ConstructedCode build_packing_pir(std::size_t k, std::size_t t, const PackingDesign& design);

// Appends an overall parity position and a (t+1)-th recovery set per bit:
// every position not used by the existing t sets.
ConstructedCode extend_for_even_t(const ConstructedCode& code);

// (k, n) with n = k + pir3_redundancy(k); only t = 3 is tabulated.
std::vector<std::pair<std::size_t, std::size_t>> linear_length_table(std::size_t t, std::size_t kmax);

// Smallest r with packing_number_formula(r) >= k (block size 4, so t = 5).
std::size_t packing_pir5_redundancy(std::size_t k);

}  // namespace pirc
