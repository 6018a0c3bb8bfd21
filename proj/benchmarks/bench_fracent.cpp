#include <benchmark/benchmark.h>

#include <vector>

#include "fracent/bounds.hpp"
#include "fracent/entropy.hpp"
#include "fracent/fitting.hpp"
#include "fracent/specfun.hpp"
#include "fracent/velocity.hpp"

using namespace fracent;

static void BM_UpperIncompleteGamma(benchmark::State& state) {
    double x = 0.01;
    for (auto _ : state) {
        benchmark::DoNotOptimize(specfun::upper_incomplete_gamma(2.5, x).value);
        x = x < 40.0 ? x * 1.1 : 0.01;
    }
}
BENCHMARK(BM_UpperIncompleteGamma);

static void BM_GeneralizedExpIntegral(benchmark::State& state) {
    double n = 0.01;
    for (auto _ : state) {
        benchmark::DoNotOptimize(specfun::generalized_exp_integral(-0.8, n).value);
        n = n < 40.0 ? n * 1.1 : 0.01;
    }
}
BENCHMARK(BM_GeneralizedExpIntegral);

static void BM_FdeNumeric(benchmark::State& state) {
    const DistributionSpec specs[] = {DistributionSpec::exponential(1.0), DistributionSpec::weibull(1, 2),
                                      DistributionSpec::gamma(0.7, 1.0), DistributionSpec::beta(1.0, 1.0)};
    const auto& s = specs[state.range(0)];
    for (auto _ : state) benchmark::DoNotOptimize(fde_numeric(s, Alpha(0.6)).value);
    state.SetLabel(s.to_string());
}
BENCHMARK(BM_FdeNumeric)->DenseRange(0, 3);

static void BM_Table2(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(table2_report().cells.size());
}
BENCHMARK(BM_Table2)->Unit(benchmark::kMillisecond);

static void BM_BoundSuite(benchmark::State& state) {
    SuiteOptions opt;
    opt.draws = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(run_bound_suite(opt).checks.size());
}
BENCHMARK(BM_BoundSuite)->Arg(20)->Unit(benchmark::kMillisecond);

static void BM_CdfQuadrature(benchmark::State& state) {
    const auto p = solve_lagrange_linear(0.6);
    for (auto _ : state) benchmark::DoNotOptimize(cdf_quadrature(0.7, p));
}
BENCHMARK(BM_CdfQuadrature);

static void BM_FitK(benchmark::State& state) {
    const auto p = solve_lagrange_linear(0.65);
    std::vector<ProfileSample> s;
    for (int i = 1; i <= 20; ++i) {
        const double y = i / 20.0;
        s.push_back({y, predict_velocity(y, {p, 0.7}).nu_hat});
    }
    for (auto _ : state) benchmark::DoNotOptimize(fit_k(s, p).k);
}
BENCHMARK(BM_FitK);

BENCHMARK_MAIN();
