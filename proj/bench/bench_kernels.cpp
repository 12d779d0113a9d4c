// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include <random>

#include "tokhard/encoders.hpp"
#include "tokhard/harness.hpp"
#include "tokhard/oracles.hpp"
#include "tokhard/reductions.hpp"
#include "tokhard/witnesses.hpp"

using namespace tokhard;

namespace {

Exec exec_of(const benchmark::State& st) { return st.range(0) ? Exec::parallel : Exec::serial; }

Dataset random_binary(std::size_t entries, std::size_t len) {
    std::mt19937_64 rng(5);
    std::vector<std::pair<CharString, std::uint64_t>> es;
    for (std::size_t i = 0; i < entries; ++i) {
        std::string s;
        for (std::size_t k = 0; k < len; ++k) s += char('0' + rng() % 2);
        es.push_back({s, 1 + rng() % 4});
    }
    return Dataset::from_strings(Alphabet::binary(), es);
}

const Max2SatInstance& j2() {
    static const Max2SatInstance inst{2, {{1, 2}, {-1, 2}, {1, -2}}, 3};
    return inst;
}

void BM_DirectObjective(benchmark::State& st) {
    auto ds = random_binary(2000, 64);
    Vocabulary v(Alphabet::binary(), {"01", "10", "0110", "1001", "111", "000"});
    for (auto _ : st) benchmark::DoNotOptimize(direct_objective(v, ds, exec_of(st)));
}
BENCHMARK(BM_DirectObjective)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_BottomupObjective(benchmark::State& st) {
    auto ds = random_binary(2000, 64);
    MergeSequence m{{"0", "1"}, {"1", "0"}, {"01", "10"}, {"0", "0"}, {"1", "1"}};
    for (auto _ : st) benchmark::DoNotOptimize(bottomup_objective(m, ds, exec_of(st)));
}
BENCHMARK(BM_BottomupObjective)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_DirectOracleJ2(benchmark::State& st) {
    auto red = reduce_max2sat_to_d2tok(j2());
    for (auto _ : st) benchmark::DoNotOptimize(solve_direct_exact(red.dataset, red.kappa, std::nullopt, {}, exec_of(st)));
}
BENCHMARK(BM_DirectOracleJ2)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_CompliantBottomup(benchmark::State& st) {
    auto red = reduce_max2sat_to_b2tok(j2());
    for (auto _ : st) benchmark::DoNotOptimize(compliant_bottomup_optimum(j2(), red.dataset, exec_of(st)));
}
BENCHMARK(BM_CompliantBottomup)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_UnaryOracle(benchmark::State& st) {
    VcInstance g{4, {{1, 2}, {2, 3}, {3, 4}, {1, 4}}, 2};
    auto red = reduce_vc_to_d1tok(g);
    for (auto _ : st)
        benchmark::DoNotOptimize(
            solve_unary_direct_exact(red.instance.dataset, red.instance.kappa, std::nullopt, {}, exec_of(st)));
}
BENCHMARK(BM_UnaryOracle)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_SumIdentities(benchmark::State& st) {
    SumIdentityOptions o;
    o.exec = exec_of(st);
    for (auto _ : st) benchmark::DoNotOptimize(check_sum_identities(150, o));
}
BENCHMARK(BM_SumIdentities)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
