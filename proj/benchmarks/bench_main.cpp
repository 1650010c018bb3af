#include <benchmark/benchmark.h>

#include "tamecount/counting.hpp"
#include "tamecount/higgs_p1.hpp"
#include "tamecount/lefschetz.hpp"
#include "tamecount/ramification.hpp"

using namespace tamecount;

namespace {

RamificationConfig four_regular(int places) {
    RamificationConfig c{5, {}};
    for (int i = 0; i < places; ++i) c.places.push_back({1, PlaceType::R, {RationalMod1(1, 4), RationalMod1(3, 4)}});
    return c;
}

void BM_grcount(benchmark::State& st) {
    GrConfig g{Integer(static_cast<unsigned long>(st.range(0))), 1, {}, LinePolicy::Free};
    for (int i = 0; i < 8; ++i) g.marked.push_back({1, i % 2 == 0, std::nullopt});
    for (auto _ : st) benchmark::DoNotOptimize(grcount(g));
}
BENCHMARK(BM_grcount)->Arg(2)->Arg(5)->Arg(49);

void BM_grcount_oracle(benchmark::State& st) {
    const FiniteField f(finite_field_make(3, 1));
    GrConfig g{3, 1, {}, LinePolicy::Free};
    for (const auto& p : distinct_closed_points(f, {1, 1, 2, 3})) g.marked.push_back({0, false, p});
    g.marked[0].degree = g.marked[1].degree = 1;
    g.marked[2].degree = 2;
    g.marked[3].degree = 3;
    for (auto _ : st) benchmark::DoNotOptimize(grcount_oracle(f, g));
}
BENCHMARK(BM_grcount_oracle);

void BM_build_PR(benchmark::State& st) {
    const auto c = four_regular(static_cast<int>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(build_PR(c));
}
BENCHMARK(BM_build_PR)->DenseRange(2, 8, 2);

void BM_c_b(benchmark::State& st) {
    const PRState s = build_PR(four_regular(8));
    std::uint64_t k = 1;
    for (auto _ : st) benchmark::DoNotOptimize(c_b(s, k++ % 12 + 1));
}
BENCHMARK(BM_c_b);

void BM_certify_omega(benchmark::State& st) {
    const DegreeMultiset m{{1, 2, 3, 5}};
    const auto f = PeriodicFn::sample(orbit_fn_period(m), [&](std::uint64_t k) { return omega(m, k); });
    for (auto _ : st) benchmark::DoNotOptimize(certify_periodic(f));
}
BENCHMARK(BM_certify_omega);

void BM_count_E2(benchmark::State& st) {
    const auto curve = genus0_curve(5);
    const auto c = four_regular(4);
    for (auto _ : st) benchmark::DoNotOptimize(count_E2(curve, c, P1Auto{}, static_cast<std::uint64_t>(st.range(0))));
}
BENCHMARK(BM_count_E2)->Arg(1)->Arg(6)->Arg(12);

}  // namespace
BENCHMARK_MAIN();
