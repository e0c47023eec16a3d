// Serial reference kernels against their OpenMP counterparts. Thread count
// follows OMP_NUM_THREADS / MTW_THREADS for the parallel side.

#include <benchmark/benchmark.h>

#include <vector>

#include "mtw/metrics.hpp"
#include "mtw/model.hpp"
#include "mtw/reference.hpp"
#include "mtw/sim.hpp"

namespace {

const mtw::MtwParams kParams{3, {0.5, 0.2}, 4, 1.5};

std::vector<double> grid(std::size_t n, double step) {
    std::vector<double> xs(n);
    for (std::size_t i = 0; i < n; ++i) xs[i] = static_cast<double>(i) * step;
    return xs;
}

mtw::Method method_of(const benchmark::State& state) {
    return state.range(0) == 0 ? mtw::Method::series : mtw::Method::integral;
}

void BM_pdf_grid_reference(benchmark::State& state) {
    const mtw::SnrDistribution dist(kParams);
    const auto xs = grid(512, 0.01);
    for (auto _ : state) benchmark::DoNotOptimize(mtw::reference::pdf_grid(dist, xs, method_of(state)));
    state.SetItemsProcessed(state.iterations() * static_cast<long>(xs.size()));
}

void BM_pdf_grid_parallel(benchmark::State& state) {
    const mtw::SnrDistribution dist(kParams);
    const auto xs = grid(512, 0.01);
    for (auto _ : state) benchmark::DoNotOptimize(dist.pdf_grid(xs, method_of(state)));
    state.SetItemsProcessed(state.iterations() * static_cast<long>(xs.size()));
}

void BM_cdf_grid_reference(benchmark::State& state) {
    const mtw::SnrDistribution dist(kParams);
    const auto xs = grid(512, 0.01);
    for (auto _ : state) benchmark::DoNotOptimize(mtw::reference::cdf_grid(dist, xs, method_of(state)));
    state.SetItemsProcessed(state.iterations() * static_cast<long>(xs.size()));
}

void BM_cdf_grid_parallel(benchmark::State& state) {
    const mtw::SnrDistribution dist(kParams);
    const auto xs = grid(512, 0.01);
    for (auto _ : state) benchmark::DoNotOptimize(dist.cdf_grid(xs, method_of(state)));
    state.SetItemsProcessed(state.iterations() * static_cast<long>(xs.size()));
}

void BM_sample_snr_reference(benchmark::State& state) {
    const auto config = mtw::amplitudes_from_params(kParams);
    const auto n = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(mtw::reference::sample_snr(config, n, 1));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_sample_snr_parallel(benchmark::State& state) {
    const auto config = mtw::amplitudes_from_params(kParams);
    const auto n = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(mtw::sample_snr(config, n, 1));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_ks_distance_reference(benchmark::State& state) {
    const mtw::SnrDistribution dist(kParams);
    const auto s = mtw::sample_snr(mtw::amplitudes_from_params(kParams), 1U << 14, 2);
    const auto cdf = [&](double x) { return dist.cdf(x); };
    for (auto _ : state) benchmark::DoNotOptimize(mtw::reference::ks_distance(s, cdf));
}

void BM_ks_distance_parallel(benchmark::State& state) {
    const mtw::SnrDistribution dist(kParams);
    const auto s = mtw::sample_snr(mtw::amplitudes_from_params(kParams), 1U << 14, 2);
    const auto cdf = [&](double x) { return dist.cdf(x); };
    for (auto _ : state) benchmark::DoNotOptimize(mtw::ks_distance(s, cdf));
}

const mtw::MtwParams kRocParams{3, {0.5, 0.2}, 4, 10.0};

void BM_roc_reference(benchmark::State& state) {
    auto etas = grid(64, 0.5);
    for (auto& e : etas) e += 0.25;
    for (auto _ : state) benchmark::DoNotOptimize(mtw::reference::roc(kRocParams, 2, etas, mtw::NumericPolicy{}));
}

void BM_roc_parallel(benchmark::State& state) {
    auto etas = grid(64, 0.5);
    for (auto& e : etas) e += 0.25;
    for (auto _ : state) benchmark::DoNotOptimize(mtw::roc(kRocParams, 2, etas, mtw::NumericPolicy{}));
}

}  // namespace

BENCHMARK(BM_pdf_grid_reference)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_pdf_grid_parallel)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_cdf_grid_reference)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_cdf_grid_parallel)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_sample_snr_reference)->Arg(1 << 18)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_sample_snr_parallel)->Arg(1 << 18)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ks_distance_reference)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ks_distance_parallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_roc_reference)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_roc_parallel)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
