#include <random>

#include <benchmark/benchmark.h>

#include "cfree/appell.hpp"
#include "cfree/fock.hpp"
#include "cfree/partitions.hpp"
#include "cfree/states.hpp"

using namespace cfree;

namespace {

State random_state(std::size_t d, std::size_t N, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> num(-6, 6), den(1, 3);
    NCSeries s = NCSeries::one(d, N);
    for (std::size_t idx = 1; idx < s.size(); ++idx) {
        const Word w = s.space().word(idx);
        const Word r = reversed(w);
        s.at(idx) = r < w ? s[r] : Scalar(num(rng), den(rng));
    }
    return State(std::move(s));
}

StatePair random_pair(std::size_t d, std::size_t N) { return {random_state(d, N, 1), random_state(d, N, 2)}; }

}  // namespace

static void BM_FreeCumulants(benchmark::State& st) {
    const State s = random_state(static_cast<std::size_t>(st.range(0)), static_cast<std::size_t>(st.range(1)), 7);
    for (auto _ : st) benchmark::DoNotOptimize(free_cumulants(s));
}
BENCHMARK(BM_FreeCumulants)->Args({1, 12})->Args({2, 8})->Args({3, 6});

static void BM_TwoStateCumulants(benchmark::State& st) {
    const StatePair p = random_pair(static_cast<std::size_t>(st.range(0)), static_cast<std::size_t>(st.range(1)));
    for (auto _ : st) benchmark::DoNotOptimize(two_state_cumulants(p));
}
BENCHMARK(BM_TwoStateCumulants)->Args({1, 8})->Args({2, 6});

static void BM_TwoStateCumulantsGenFun(benchmark::State& st) {
    const StatePair p = random_pair(static_cast<std::size_t>(st.range(0)), static_cast<std::size_t>(st.range(1)));
    for (auto _ : st) benchmark::DoNotOptimize(two_state_cumulants_via_generating_function(p));
}
BENCHMARK(BM_TwoStateCumulantsGenFun)->Args({1, 8})->Args({2, 6});

static void BM_PhiMap(benchmark::State& st) {
    const State psi = random_state(static_cast<std::size_t>(st.range(0)), static_cast<std::size_t>(st.range(1)), 3);
    for (auto _ : st) benchmark::DoNotOptimize(phi_map(psi));
}
BENCHMARK(BM_PhiMap)->Args({1, 10})->Args({2, 7});

static void BM_CfreeAppell(benchmark::State& st) {
    const StatePair p = random_pair(2, 5);
    const auto method = static_cast<AppellMethod>(st.range(0));
    for (auto _ : st) benchmark::DoNotOptimize(cfree_appell(p, 5, method));
}
BENCHMARK(BM_CfreeAppell)->Arg(static_cast<int>(AppellMethod::GenFun))->Arg(static_cast<int>(AppellMethod::Recursion))
    ->Arg(static_cast<int>(AppellMethod::Explicit));

static void BM_NonCrossingEnumeration(benchmark::State& st) {
    const auto n = static_cast<std::size_t>(st.range(0));
    for (auto _ : st) {
        std::size_t c = 0;
        for_each_partition(PartitionKind::NonCrossing, n, [&](const SetPartition&) { ++c; });
        benchmark::DoNotOptimize(c);
    }
}
BENCHMARK(BM_NonCrossingEnumeration)->DenseRange(6, 10, 2);

static void BM_KailathSegall(benchmark::State& st) {
    const TestAlgebra alg({Scalar(1, 2), Scalar(1, 3), Scalar(1)}, {Scalar(1), Scalar(2, 3), Scalar(1, 4)});
    std::vector<AlgebraElement> fs;
    for (long i = 0; i < st.range(0); ++i) fs.push_back({Scalar(i + 1), Scalar(-1), Scalar(1, i + 2)});
    const auto method = st.range(1) ? KSMethod::Explicit : KSMethod::Recursion;
    for (auto _ : st) benchmark::DoNotOptimize(ks_poly(alg, fs, method));
}
BENCHMARK(BM_KailathSegall)->Args({4, 0})->Args({4, 1})->Args({6, 0})->Args({6, 1});

static void BM_VacuumExpectation(benchmark::State& st) {
    const TestAlgebra alg({Scalar(1, 2), Scalar(1, 3)}, {Scalar(1), Scalar(2, 3)});
    std::vector<AlgebraElement> fs;
    for (long i = 0; i < st.range(0); ++i) fs.push_back({Scalar(i + 1), Scalar(-1)});
    for (auto _ : st) benchmark::DoNotOptimize(vacuum_expectation(alg, fs));
}
BENCHMARK(BM_VacuumExpectation)->DenseRange(4, 10, 2);
BENCHMARK_MAIN();
