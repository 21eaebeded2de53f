#include <benchmark/benchmark.h>

#include <vector>

#include "ossk/adversary.hpp"
#include "ossk/bench.hpp"
#include "ossk/count_min.hpp"
#include "ossk/dense_matrix.hpp"
#include "ossk/det_point_query.hpp"
#include "ossk/hashing.hpp"
#include "ossk/lp.hpp"
#include "ossk/no_over.hpp"
#include "ossk/no_under.hpp"
#include "ossk/rank_cert.hpp"

using namespace ossk;

namespace {

std::vector<StreamUpdate> stream_for(std::size_t n) {
    return make_stream(StreamDistribution::Zipf, n, 1.1, 10000, 42);
}

void bm_count_min_update(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    auto stream = stream_for(n);
    CountMinSketch sketch(n, 256, 4, 7);
    std::size_t pos = 0;
    for (auto _ : state) {
        sketch.update(stream[pos]);
        if (++pos == stream.size()) pos = 0;
    }
    state.SetItemsProcessed(state.iterations());
}

void bm_no_under_update(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    auto stream = stream_for(n);
    NoUnderSketch sketch(n, 2.0, 0.25, 7);
    std::size_t pos = 0;
    for (auto _ : state) {
        sketch.update(stream[pos]);
        if (++pos == stream.size()) pos = 0;
    }
    state.SetItemsProcessed(state.iterations());
}

void bm_no_over_update(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    auto stream = stream_for(n);
    NoOverSketch sketch(n, 2.0, 0.5, 7);
    std::size_t pos = 0;
    for (auto _ : state) {
        sketch.update(stream[pos]);
        if (++pos == stream.size()) pos = 0;
    }
    state.SetItemsProcessed(state.iterations());
}

void bm_det_pq_update(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    auto stream = stream_for(n);
    DetPQSketch sketch{IncoherentMatrix::build(n)};
    std::size_t pos = 0;
    for (auto _ : state) {
        sketch.update(stream[pos]);
        if (++pos == stream.size()) pos = 0;
    }
    state.SetItemsProcessed(state.iterations());
}

void bm_no_under_estimate(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    NoUnderSketch sketch(n, 2.0, 0.25, 7);
    for (const StreamUpdate& u : stream_for(n)) sketch.update(u);
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(sketch.estimate(i));
        if (++i == n) i = 0;
    }
    state.SetItemsProcessed(state.iterations());
}

void bm_det_pq_estimate(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    DetPQSketch sketch{IncoherentMatrix::build(n)};
    for (const StreamUpdate& u : stream_for(n)) sketch.update(u);
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(sketch.estimate(i));
        if (++i == n) i = 0;
    }
    state.SetItemsProcessed(state.iterations());
}

void bm_lp_solve(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    const std::size_t m = 4;
    DenseMatrix A(m, n);
    std::uint64_t seed = 0;
    for (std::size_t j = 0; j < n; ++j) A(0, j) = 1.0;
    for (std::size_t r = 1; r < m; ++r)
        for (std::size_t j = 0; j < n; ++j)
            A(r, j) = static_cast<double>(static_cast<std::int64_t>(mix64(++seed) % 7) - 3);
    std::vector<double> x0(n, 1.0 / static_cast<double>(n));
    std::vector<double> b = A.multiply(x0);
    std::vector<double> c(n);
    for (std::size_t j = 0; j < n; ++j)
        c[j] = static_cast<double>(static_cast<std::int64_t>(mix64(++seed) % 21) - 10);
    for (auto _ : state) {
        LpResult res = lp_solve(LpSense::Maximize, c, A, b);
        benchmark::DoNotOptimize(res.objective);
    }
}

void bm_fool_no_under(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    DenseMatrix A = count_min_matrix(n, 8, 2, 5);
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(fool_no_under(A, i).value);
        if (++i == n) i = 0;
    }
}

void bm_greedy_rank_cert(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    DenseMatrix M(n, n);
    std::uint64_t seed = 99;
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c)
            M(r, c) = static_cast<double>(static_cast<std::int64_t>(mix64(++seed) % 9) - 4);
    for (auto _ : state) benchmark::DoNotOptimize(greedy_rank_certificate(M).bound);
}

}  // namespace

BENCHMARK(bm_count_min_update)->Arg(1 << 10)->Arg(1 << 14);
BENCHMARK(bm_no_under_update)->Arg(1 << 10)->Arg(1 << 14);
BENCHMARK(bm_no_over_update)->Arg(1 << 10)->Arg(1 << 12);
BENCHMARK(bm_det_pq_update)->Arg(1 << 10)->Arg(1 << 12);
BENCHMARK(bm_no_under_estimate)->Arg(1 << 10)->Arg(1 << 14);
BENCHMARK(bm_det_pq_estimate)->Arg(1 << 10)->Arg(1 << 12);
BENCHMARK(bm_lp_solve)->Arg(16)->Arg(64);
BENCHMARK(bm_fool_no_under)->Arg(16)->Arg(32);
BENCHMARK(bm_greedy_rank_cert)->Arg(32)->Arg(128);

BENCHMARK_MAIN();
