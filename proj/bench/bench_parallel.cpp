// Serial reference vs OpenMP kernels on the three parallel sweeps.

#include "kolmo/calculus.hpp"
#include "kolmo/harness.hpp"
#include "kolmo/holder.hpp"
#include "kolmo/registry.hpp"

#include <benchmark/benchmark.h>

#include <memory>

namespace {

using namespace kolmo;

std::shared_ptr<const KolmogorovStructure> k2()
{
    Eigen::MatrixXd b(2, 2);
    b << 1, 0, 1, 0;
    return std::make_shared<const KolmogorovStructure>(validate_structure(b, {1, 1}));
}

GroupPoint pt(double t, double x, double y) { return {t, Eigen::Vector2d(x, y)}; }

const BoxDomain& domain()
{
    static const BoxDomain d({pt(-2, -2, -2), pt(2, 2, 2)}, {pt(-1, -1, -1), pt(1, 1, 1)});
    return d;
}

template <bool Serial>
void BM_FieldSeminorm(benchmark::State& state)
{
    const auto s = k2();
    const auto u = make_function("sin_mix", s);
    const double d0 = delta_omega0(domain(), *s);
    const int grid = static_cast<int>(state.range(0));
    for (auto _ : state) {
        const auto r = Serial ? field_seminorm_serial(u, domain(), LieOp::Y(), 1.0, grid, d0)
                              : field_seminorm(u, domain(), LieOp::Y(), 1.0, grid, d0);
        benchmark::DoNotOptimize(r.value);
    }
}

template <bool Serial>
void BM_TaylorCoefficients(benchmark::State& state)
{
    const auto s = k2();
    const auto u = make_function("gauss", s);
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) {
        const auto t = Serial ? taylor_coefficients_serial(u, pt(0.1, 0.2, -0.1), n, DerivativeMode::FiniteDifference)
                              : taylor_coefficients(u, pt(0.1, 0.2, -0.1), n, DerivativeMode::FiniteDifference);
        benchmark::DoNotOptimize(t.terms().data());
    }
}

template <bool Serial>
void BM_RemainderExperiment(benchmark::State& state)
{
    const auto s = k2();
    const auto u = make_function("cos_prod", s);
    const auto scales = log_scales(1e-3, 1e-1, static_cast<int>(state.range(0)));
    for (auto _ : state) {
        const auto r = Serial ? remainder_experiment_serial(u, pt(0.1, 0.2, -0.1), 3, scales, {8, 1})
                              : remainder_experiment(u, pt(0.1, 0.2, -0.1), 3, scales, {8, 1});
        benchmark::DoNotOptimize(r.data());
    }
}

} // namespace

BENCHMARK(BM_FieldSeminorm<true>)->Name("field_seminorm/serial")->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FieldSeminorm<false>)->Name("field_seminorm/parallel")->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TaylorCoefficients<true>)->Name("taylor_coefficients/serial")->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TaylorCoefficients<false>)->Name("taylor_coefficients/parallel")->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RemainderExperiment<true>)->Name("remainder_experiment/serial")->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RemainderExperiment<false>)->Name("remainder_experiment/parallel")->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
