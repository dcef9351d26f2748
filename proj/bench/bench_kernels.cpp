#include <benchmark/benchmark.h>

#include <random>
#include <set>

#include "pirc/bounds.hpp"
#include "pirc/constructions.hpp"
#include "pirc/designs.hpp"
#include "pirc/hamming.hpp"
#include "pirc/searchlab.hpp"

using namespace pirc;

namespace {

Code random_code(std::size_t n, std::size_t m) {
  std::mt19937_64 rng(7);
  std::set<std::uint64_t> vals;
  while (vals.size() < m) vals.insert(rng() & ((std::uint64_t{1} << n) - 1));
  return Code::from_values(n, {vals.begin(), vals.end()});
}

void BM_MinDistanceSerial(benchmark::State& s) {
  auto c = random_code(20, static_cast<std::size_t>(s.range(0)));
  for (auto _ : s) benchmark::DoNotOptimize(serial::min_distance(c));
}
void BM_MinDistanceParallel(benchmark::State& s) {
  auto c = random_code(20, static_cast<std::size_t>(s.range(0)));
  for (auto _ : s) benchmark::DoNotOptimize(min_distance(c));
}
BENCHMARK(BM_MinDistanceSerial)->Arg(1024)->Arg(4096);
BENCHMARK(BM_MinDistanceParallel)->Arg(1024)->Arg(4096);

void BM_VerifyBatchSerial(benchmark::State& s) {
  auto c = build_pir3(static_cast<std::size_t>(s.range(0)));
  for (auto _ : s) benchmark::DoNotOptimize(serial::verify_batch(c.encoder, 3).verdict);
}
void BM_VerifyBatchParallel(benchmark::State& s) {
  auto c = build_pir3(static_cast<std::size_t>(s.range(0)));
  for (auto _ : s) benchmark::DoNotOptimize(verify_batch(c.encoder, 3).verdict);
}
BENCHMARK(BM_VerifyBatchSerial)->Arg(6)->Arg(10);
BENCHMARK(BM_VerifyBatchParallel)->Arg(6)->Arg(10);

void BM_PackingSerial(benchmark::State& s) {
  for (auto _ : s) benchmark::DoNotOptimize(serial::exact_packing(11, 4, 7, kDefaultBudget).status);
}
void BM_PackingParallel(benchmark::State& s) {
  for (auto _ : s) benchmark::DoNotOptimize(exact_packing(11, 4, 7, kDefaultBudget).status);
}
BENCHMARK(BM_PackingSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PackingParallel)->Unit(benchmark::kMillisecond);

void BM_ComplementSerial(benchmark::State& s) {
  auto c = build_hamming(3).code();
  for (auto _ : s) benchmark::DoNotOptimize(serial::check_complement_obstruction(c).all_closed);
}
void BM_ComplementParallel(benchmark::State& s) {
  auto c = build_hamming(3).code();
  for (auto _ : s) benchmark::DoNotOptimize(check_complement_obstruction(c).all_closed);
}
BENCHMARK(BM_ComplementSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ComplementParallel)->Unit(benchmark::kMillisecond);

void BM_CliqueSerial(benchmark::State& s) {
  for (auto _ : s) benchmark::DoNotOptimize(serial::max_code_size(static_cast<std::size_t>(s.range(0))).value);
}
void BM_CliqueParallel(benchmark::State& s) {
  for (auto _ : s) benchmark::DoNotOptimize(max_code_size(static_cast<std::size_t>(s.range(0))).value);
}
BENCHMARK(BM_CliqueSerial)->Arg(7)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CliqueParallel)->Arg(7)->Unit(benchmark::kMillisecond);

void BM_OrderlySerial(benchmark::State& s) {
  CodeSearchOptions o;
  o.n = 7;
  o.size = 16;
  for (auto _ : s) benchmark::DoNotOptimize(serial::search_codes(o).codes.size());
}
void BM_OrderlyParallel(benchmark::State& s) {
  CodeSearchOptions o;
  o.n = 7;
  o.size = 16;
  for (auto _ : s) benchmark::DoNotOptimize(search_codes(o).codes.size());
}
BENCHMARK(BM_OrderlySerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OrderlyParallel)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
