#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "pirc/bit_matrix.hpp"
#include "pirc/code.hpp"
#include "pirc/parallel.hpp"
#include "pirc/word.hpp"

namespace pirc {

// Set of 1-based codeword positions (1..64).
class PositionSet {
 public:
  PositionSet() = default;
  explicit PositionSet(Packed mask) : mask_(mask) {}
  PositionSet(std::initializer_list<int> positions);
  static PositionSet from(std::span<const int> positions);

  Packed mask() const { return mask_; }
  std::size_t size() const;
  bool empty() const { return mask_ == 0; }
  bool contains(int pos) const;
  bool intersects(PositionSet other) const { return (mask_ & other.mask_) != 0; }
  bool subset_of(PositionSet other) const { return (mask_ & ~other.mask_) == 0; }
  std::vector<int> positions() const { return positions_of(mask_); }

  friend bool operator==(PositionSet, PositionSet) = default;
  // By size, then lexicographic on sorted positions.
  friend bool operator<(PositionSet a, PositionSet b) { return position_set_less(a.mask_, b.mask_); }

 private:
  Packed mask_ = 0;
};

// One-to-one map from k-bit data words to length-n codewords. Data word `a`
// is an integer whose bit for data index j (1-based) is (a >> (k - j)) & 1.
class Encoder {
 public:
  static Encoder linear(BitMatrix generator);
  // table[a] is the codeword of data word a; 2^k distinct entries.
  static Encoder from_table(std::size_t k, std::vector<Word> table);

  bool is_linear() const { return generator_.has_value(); }
  std::size_t k() const { return k_; }
  std::size_t n() const { return n_; }
  const BitMatrix& generator() const;

  Word encode(std::uint64_t data) const;
  // Codeword of every data word, indexed by data (k <= 24).
  const std::vector<Packed>& table() const;
  Code code() const;
  Encoder to_explicit() const;

  static bool data_bit(std::uint64_t data, std::size_t k, std::size_t j) { return ((data >> (k - j)) & 1U) != 0; }

  // Column c of the generator packed with bit (r-1) for row r.
  Packed column(std::size_t c) const { return columns_.at(c - 1); }

 private:
  Encoder() = default;
  void build_table();

  std::size_t k_ = 0;
  std::size_t n_ = 0;
  std::optional<BitMatrix> generator_;
  std::vector<Packed> columns_;
  std::vector<Packed> table_;
};

// Explicit encoder file: 2^k lines "dataword codeword", data ascending.
Encoder read_encoder(std::istream& in);
void write_encoder(std::ostream& out, const Encoder& e);

enum class SearchStatus { Found, ProvenImpossible, BudgetExhausted };
std::string to_string(SearchStatus s);

inline constexpr std::uint64_t kDefaultBudget = 50'000'000;

struct RecoveryFamily {
  std::size_t bit = 0;
  std::vector<PositionSet> sets;
};

struct Query {
  std::vector<std::size_t> requests;
};

struct ServingPlan {
  std::vector<PositionSet> sets;
  std::size_t width = 0;
  std::size_t multiplicity = 0;

  static ServingPlan from_sets(std::vector<PositionSet> sets);
};

bool is_recovery_set(const Encoder& e, std::size_t j, PositionSet positions);

// Value of data bit j recovered from codeword c using only positions in I.
// I must be a recovery set for bit j.
bool decode_bit(const Encoder& e, std::size_t j, PositionSet positions, const Word& codeword);

struct MinimalSets {
  std::vector<PositionSet> sets;  // sorted by (size, lexicographic)
  bool complete = true;
  std::uint64_t nodes = 0;
};

// All inclusion-minimal recovery sets of bit j with at most max_width
// positions (nullopt: unbounded).
MinimalSets minimal_recovery_sets(const Encoder& e, std::size_t j, std::optional<std::size_t> max_width = {},
                                  std::uint64_t budget = kDefaultBudget);

struct FamilySearch {
  SearchStatus status = SearchStatus::BudgetExhausted;
  std::optional<RecoveryFamily> family;
  std::uint64_t nodes = 0;
};

FamilySearch find_disjoint_family(const Encoder& e, std::size_t j, std::size_t t,
                                  std::optional<std::size_t> max_width = {},
                                  std::uint64_t budget = kDefaultBudget);

// Disjointness plus per-set recovery check.
bool is_valid_family(const Encoder& e, const RecoveryFamily& family);

struct ServeResult {
  SearchStatus status = SearchStatus::BudgetExhausted;
  std::optional<ServingPlan> plan;
  std::uint64_t nodes = 0;
};

ServeResult serve_query(const Encoder& e, const Query& q, std::optional<std::size_t> width = {},
                        std::size_t multiplicity = 1, std::uint64_t budget = kDefaultBudget);

// Checks that `sets` serve `q` within the width and multiplicity caps.
bool plan_serves(const Encoder& e, const Query& q, std::span<const PositionSet> sets,
                 std::optional<std::size_t> width, std::size_t multiplicity);

enum class Verdict { Holds, Fails, Unknown };
std::string to_string(Verdict v);

struct QueryOutcome {
  std::vector<std::size_t> query;
  SearchStatus status = SearchStatus::BudgetExhausted;
  std::vector<PositionSet> sets;
  bool from_witness = false;
};

struct VerificationReport {
  std::string property;  // "pir" or "batch"
  std::size_t t = 0;
  std::optional<std::size_t> width;
  std::size_t multiplicity = 1;
  Verdict verdict = Verdict::Unknown;
  bool complete = false;
  std::vector<QueryOutcome> outcomes;  // ordered by bit / query
  std::uint64_t nodes = 0;
  double elapsed_ms = 0.0;
};

struct VerifyOptions {
  std::optional<std::size_t> width;
  std::size_t multiplicity = 1;
  // Per-query node budget.
  std::uint64_t budget = kDefaultBudget;
  Parallelism par;
  // Optional per-bit witness families, checked instead of searched.
  std::span<const RecoveryFamily> witnesses;
};

VerificationReport verify_pir(const Encoder& e, std::size_t t, const VerifyOptions& opts = {});
VerificationReport verify_batch(const Encoder& e, std::size_t t, const VerifyOptions& opts = {});

// All multisets of size t over 1..k in lexicographic order.
std::vector<Query> batch_queries(std::size_t k, std::size_t t);

namespace serial {
VerificationReport verify_pir(const Encoder& e, std::size_t t, const VerifyOptions& opts = {});
VerificationReport verify_batch(const Encoder& e, std::size_t t, const VerifyOptions& opts = {});
}  // namespace serial

}  // namespace pirc
