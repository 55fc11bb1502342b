// Serial reference kernels against their OpenMP variants. The second argument
// of each OMP benchmark is the worker count.

#include <benchmark/benchmark.h>

#include "fdk/constructions.hpp"
#include "fdk/euclid.hpp"
#include "fdk/kernels.hpp"
#include "fdk/lattice_kernels.hpp"

using namespace fdk;

namespace {

struct CharacterInput {
  FiniteAbelianGroup group;
  kernels::SparseCounts nu_s;
  std::vector<std::int64_t> nu_t;
  std::int64_t s_size;
  std::int64_t t_size;
};

// A dual Gauss pair, so the scan runs over every character.
CharacterInput character_input(std::int64_t p) {
  const auto pair = gauss_pair(p, 1, 1);
  return {pair.group(), kernels::sparse_differences(pair.group(), pair.s().indices()),
          kernels::dense_differences(pair.group(), pair.t().indices()), pair.s().size(), pair.t().size()};
}

void BM_FirstFailingSerial(benchmark::State& state) {
  const auto in = character_input(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernels::first_failing_character_serial(in.group, in.nu_s, in.nu_t, in.s_size, in.t_size));
  }
}

void BM_FirstFailingOmp(benchmark::State& state) {
  const auto in = character_input(state.range(0));
  const int jobs = static_cast<int>(state.range(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        kernels::first_failing_character_omp(in.group, in.nu_s, in.nu_t, in.s_size, in.t_size, jobs));
  }
}

void BM_EnumerateSerial(benchmark::State& state) {
  const GroupTables tables{FiniteAbelianGroup({4, 4})};
  for (auto _ : state) benchmark::DoNotOptimize(kernels::enumerate_primitive_pairs_serial(tables, 4));
}

void BM_EnumerateOmp(benchmark::State& state) {
  const GroupTables tables{FiniteAbelianGroup({4, 4})};
  const int jobs = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::enumerate_primitive_pairs_omp(tables, 4, jobs));
}

struct CosetInput {
  Eigen::MatrixXd basis;
  Eigen::MatrixXd inverse;
  std::vector<Eigen::VectorXd> translates;
  kernels::GaussianTerm term;
};

CosetInput coset_input() {
  const auto p = realize(gauss_pair(7, 1, 1)).first;
  kernels::GaussianTerm term{Eigen::VectorXd::Zero(2), 0.5, Eigen::VectorXd(), 1};
  return {p.lattice().basis(), p.lattice().inverse(), p.translates(), term};
}

void BM_CosetPairSumsSerial(benchmark::State& state) {
  const auto in = coset_input();
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernels::coset_pair_sums_serial(in.basis, in.inverse, in.translates, in.term, 12));
  }
}

void BM_CosetPairSumsOmp(benchmark::State& state) {
  const auto in = coset_input();
  const int jobs = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernels::coset_pair_sums_omp(in.basis, in.inverse, in.translates, in.term, 12, jobs));
  }
}

}  // namespace

BENCHMARK(BM_FirstFailingSerial)->Arg(31)->Arg(61);
BENCHMARK(BM_FirstFailingOmp)->ArgsProduct({{31, 61}, {1, 2, 4}});
BENCHMARK(BM_EnumerateSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EnumerateOmp)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CosetPairSumsSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CosetPairSumsOmp)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
