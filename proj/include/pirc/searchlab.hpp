#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "pirc/code.hpp"
#include "pirc/parallel.hpp"
#include "pirc/recovery.hpp"

namespace pirc {

// ------------------------------------------------------------ canonical form

// Equivalence: coordinate permutation composed with translation by a word.
// The canonical representative is the lexicographically smallest sorted word
// sequence over all translations by codewords and all permutations, so it
// always contains the zero word. Computed by ordered column-cell refinement,
// branching on ties.
struct CanonicalResult {
  Code code;
  // False when the state cap was hit; `code` is then only translation
  // normalized (zero word pinned) and not a class invariant.
  bool canonical = true;
  std::uint64_t states = 0;
};

inline constexpr std::size_t kDefaultStateCap = 200'000;

CanonicalResult canonical_form(const Code& code, std::size_t state_cap = kDefaultStateCap);
bool is_canonical(const Code& code);

// -------------------------------------------------- recoverable functions

// Codewords (by index into code.words()) merged by agreement on any one of
// three disjoint position sets.
struct ComponentPartition {
  std::array<PositionSet, 3> triple;
  std::vector<std::uint32_t> labels;  // component of each codeword, numbered by first occurrence
  std::size_t count = 0;
};

ComponentPartition component_partition(const Code& code, const std::array<PositionSet, 3>& triple);

// Indicator over codeword indices; codes of up to 256 words.
using CodeMask = std::array<std::uint64_t, 4>;
inline constexpr std::size_t kMaxFunctionCodeSize = 256;

struct TripleFunctions {
  ComponentPartition partition;
  // Balanced unions of components, normalized to exclude codeword 0.
  std::vector<CodeMask> colorings;
  bool truncated = false;  // component cap hit; colorings not enumerated
};

struct FunctionOptions {
  // Only triples whose union is every position; enough for existence
  // questions because supersets of recovery sets still recover.
  bool covering_only = false;
  std::size_t component_cap = 20;
  // Maximum number of triples examined.
  std::uint64_t budget = kDefaultBudget;
};

struct FunctionStats {
  std::uint64_t triples = 0;
  std::uint64_t truncated = 0;
  bool complete = true;
};

// Triples in canonical order (total size, then lexicographic on the sets).
FunctionStats recoverable_functions(const Code& code, const FunctionOptions& opts,
                                    const std::function<void(const TripleFunctions&)>& sink);

// ------------------------------------------------------ encoder existence

enum class Existence { Found, None, Unknown };
std::string to_string(Existence e);

struct EncoderSearch {
  Existence status = Existence::Unknown;
  std::optional<Encoder> encoder;
  std::vector<RecoveryFamily> witnesses;  // per bit, when found
  std::size_t candidate_functions = 0;
  FunctionStats function_stats;
  std::uint64_t nodes = 0;
  std::string reason;
  double elapsed_ms = 0.0;
};

struct EncoderSearchOptions {
  std::size_t component_cap = 20;
  std::uint64_t triple_budget = kDefaultBudget;
  std::uint64_t node_budget = kDefaultBudget;
  Parallelism par;
};

// Searches for an explicit encoder of `code` that is a 3-PIR code. Any
// returned encoder has been re-validated by verify_pir.
EncoderSearch encoder_exists_3pir(const Code& code, const EncoderSearchOptions& opts = {});

// ---------------------------------------------------------- code search

enum class SearchMode { Exhaustive, Heuristic };
std::string to_string(SearchMode m);

struct CodeSearchOptions {
  std::size_t n = 0;
  std::size_t size = 0;
  std::size_t dmin = 3;
  SearchMode mode = SearchMode::Exhaustive;
  // Exhaustive: nodes this run. Heuristic: attempts this run.
  std::uint64_t budget = kDefaultBudget;
  std::uint64_t seed = 1;
  // Heuristic: total attempts for the whole search.
  std::uint64_t attempts = 32;
  std::string checkpoint;  // empty: no checkpointing
  Parallelism par;
};

struct CodeSearchStats {
  std::uint64_t nodes = 0;        // cumulative across resumed runs
  std::uint64_t attempts = 0;     // heuristic attempts done
  std::uint64_t canonical_failures = 0;
};

struct CodeSearchResult {
  std::vector<Code> codes;  // sorted, distinct
  bool complete = false;    // exhaustive search finished
  bool all_canonical = true;
  CodeSearchStats stats;
  bool resumed = false;
  double elapsed_ms = 0.0;
};

CodeSearchResult search_codes(const CodeSearchOptions& opts);

namespace serial {
CodeSearchResult search_codes(const CodeSearchOptions& opts);
}

// ------------------------------------------------------------- checkpoint

// Little-endian binary layout:
//   8 bytes  magic "PIRCKPT\0"
//   u32      major version, u32 minor version
//   u32 len, len bytes   problem id (JSON text)
//   u64 nodes, u64 attempts, u64 canonical failures
//   u32 count, then per frontier record: u32 next, u32 words, u64 word values
//   u32 count, then per result: u32 words, u64 word values
//   u32 count, then per log entry: u32 len, len bytes (JSON text)
// A major version mismatch is an error; minor versions are compatible.
inline constexpr std::uint32_t kCheckpointMajor = 1;
inline constexpr std::uint32_t kCheckpointMinor = 0;

struct FrontierRecord {
  std::vector<std::uint64_t> words;  // ascending word values
  std::uint32_t next = 0;            // extensions use words >= next
};

struct Checkpoint {
  std::uint32_t major = kCheckpointMajor;
  std::uint32_t minor = kCheckpointMinor;
  std::string problem;
  CodeSearchStats stats;
  std::vector<FrontierRecord> frontier;
  std::vector<std::vector<std::uint64_t>> results;
  std::vector<std::string> log;
};

void write_checkpoint(const std::string& path, const Checkpoint& c);
Checkpoint read_checkpoint(const std::string& path);

// ------------------------------------------------------------ open problem

struct HuntOptions {
  std::size_t n = 11;
  std::size_t size = 128;
  std::uint64_t budget = 4;  // codes examined this run
  std::uint64_t seed = 1;
  std::uint64_t triple_budget = 50'000;
  std::uint64_t node_budget = 200'000;
  std::size_t witness_threshold = 1;  // log codes with at least this many candidate functions
  std::string checkpoint;
  Parallelism par;
};

struct HuntEntry {
  std::uint64_t attempt = 0;
  std::vector<std::uint64_t> words;
  std::size_t candidate_functions = 0;
  Existence status = Existence::Unknown;
};

struct HuntReport {
  std::size_t n = 0;
  std::size_t size = 0;
  std::uint64_t codes_examined = 0;  // cumulative
  std::uint64_t encoders_found = 0;
  std::uint64_t proven_none = 0;
  std::uint64_t unknown = 0;
  std::vector<HuntEntry> logged;
  bool resumed = false;
  double elapsed_ms = 0.0;
};

HuntReport open11_hunt(const HuntOptions& opts);

}  // namespace pirc
