// Serial reference vs OpenMP kernels. Thread count follows OMP_NUM_THREADS
// for the grid and covariance kernels and the "workers" argument for MC.

#include <benchmark/benchmark.h>

#include <cmath>
#include <filesystem>
#include <thread>

#include "evssta/corrections.hpp"
#include "evssta/gumbel.hpp"
#include "evssta/montecarlo.hpp"
#include "evssta/timing_graph.hpp"

using namespace evssta;

namespace {

int all_threads() {
    return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

void BM_Ar1Max_Ref(benchmark::State& state) {
    const mc::Ar1Model model{state.range(0), 0.35, 1.0};
    for (auto _ : state) {
        benchmark::DoNotOptimize(mc::ref::sample_max_distribution(model, {4000, 1, 1}).mean);
    }
}

void BM_Ar1Max_Omp(benchmark::State& state) {
    const mc::Ar1Model model{state.range(0), 0.35, 1.0};
    for (auto _ : state) {
        benchmark::DoNotOptimize(mc::sample_max_distribution(model, {4000, 1, all_threads()}).mean);
    }
}

std::vector<double> ar1_covariance(std::size_t n, double rho) {
    std::vector<double> cov(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            cov[i * n + j] = std::pow(rho, std::abs(static_cast<double>(i) - static_cast<double>(j)));
        }
    }
    return cov;
}

void BM_MvnMax_Ref(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto cov = ar1_covariance(n, 0.5);
    for (auto _ : state) {
        benchmark::DoNotOptimize(mc::ref::sample_multivariate_max(n, cov, {2000, 1, 1}).mean);
    }
}

void BM_MvnMax_Omp(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto cov = ar1_covariance(n, 0.5);
    for (auto _ : state) {
        benchmark::DoNotOptimize(mc::sample_multivariate_max(n, cov, {2000, 1, all_threads()}).mean);
    }
}

void BM_Grid_Ref(benchmark::State& state) {
    const auto p = gumbel::GumbelParams::from_count(1000);
    const auto z = corrections::linspace(0.0, 6.0, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(corrections::ref::evaluate_grid(z, p, {50.0}, corrections::Order::Complete).pdf.data());
    }
}

void BM_Grid_Omp(benchmark::State& state) {
    const auto p = gumbel::GumbelParams::from_count(1000);
    const auto z = corrections::linspace(0.0, 6.0, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(corrections::evaluate_grid(z, p, {50.0}, corrections::Order::Complete).pdf.data());
    }
}

graph::TimingGraph cascade(int copies) {
    const auto block = graph::load_graph(std::filesystem::path(EVSSTA_DATA_DIR) / "block8.txt");
    return graph::make_cascade(block, copies);
}

void BM_PathCov_Ref(benchmark::State& state) {
    const auto g = cascade(static_cast<int>(state.range(0)));
    const auto ps = graph::enumerate_paths(g, 1 << 20);
    for (auto _ : state) {
        benchmark::DoNotOptimize(graph::ref::path_covariance(ps, g).data().data());
    }
    state.counters["paths"] = static_cast<double>(ps.size());
}

void BM_PathCov_Omp(benchmark::State& state) {
    const auto g = cascade(static_cast<int>(state.range(0)));
    const auto ps = graph::enumerate_paths(g, 1 << 20);
    for (auto _ : state) {
        benchmark::DoNotOptimize(graph::path_covariance(ps, g).data().data());
    }
    state.counters["paths"] = static_cast<double>(ps.size());
}

void BM_CorrelationSum_Ref(benchmark::State& state) {
    const auto eps = corrections::EpsilonMatrix::from_ar1(static_cast<std::size_t>(state.range(0)), 0.5);
    for (auto _ : state) benchmark::DoNotOptimize(corrections::ref::correlation_sum(eps).s);
}

void BM_CorrelationSum_Omp(benchmark::State& state) {
    const auto eps = corrections::EpsilonMatrix::from_ar1(static_cast<std::size_t>(state.range(0)), 0.5);
    for (auto _ : state) benchmark::DoNotOptimize(corrections::correlation_sum(eps).s);
}

}  // namespace

BENCHMARK(BM_Ar1Max_Ref)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Ar1Max_Omp)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MvnMax_Ref)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MvnMax_Omp)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Grid_Ref)->Arg(10000)->Arg(1000000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Grid_Omp)->Arg(10000)->Arg(1000000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PathCov_Ref)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PathCov_Omp)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CorrelationSum_Ref)->Arg(1000)->Arg(4000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CorrelationSum_Omp)->Arg(1000)->Arg(4000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
