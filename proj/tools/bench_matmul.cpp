#include <benchmark/benchmark.h>

#include <random>

#include "abm/qmatrix.hpp"

namespace {

abm::QMatrix random_matrix(int n, unsigned seed) {
    std::mt19937 g(seed);
    std::uniform_int_distribution<int> num(-50, 50), den(1, 9);
    abm::QMatrix m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            abm::Rational r(num(g), den(g));
            r.canonicalize();
            m(i, j) = r;
        }
    return m;
}

void BM_matmul_serial(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const abm::QMatrix a = random_matrix(n, 1), b = random_matrix(n, 2);
    for (auto _ : state) benchmark::DoNotOptimize(abm::matmul_serial(a, b));
}

void BM_matmul_parallel(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const abm::QMatrix a = random_matrix(n, 1), b = random_matrix(n, 2);
    for (auto _ : state) benchmark::DoNotOptimize(abm::matmul_parallel(a, b));
}

}  // namespace

BENCHMARK(BM_matmul_serial)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_matmul_parallel)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
