#include "ossk/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>
#include <variant>

#include "ossk/count_min.hpp"
#include "ossk/count_sketch.hpp"
#include "ossk/det_point_query.hpp"
#include "ossk/hashing.hpp"
#include "ossk/no_over.hpp"
#include "ossk/no_under.hpp"
#include "ossk/norms.hpp"

namespace ossk {

namespace {

// Counter-mode generator over mix64; independent of std::mt19937 so streams
// are reproducible across standard libraries.
class SeedStream {
  public:
    explicit SeedStream(std::uint64_t seed) : seed_(seed) {}

    std::uint64_t next() { return mix64(seed_ ^ ++counter_); }

    // uniform in [0, bound) by rejection from a power-of-two mask
    std::uint64_t bounded(std::uint64_t bound) {
        if (bound == 0) throw std::invalid_argument("bounded: bound must be positive");
        std::uint64_t mask = bound - 1;
        mask |= mask >> 1;
        mask |= mask >> 2;
        mask |= mask >> 4;
        mask |= mask >> 8;
        mask |= mask >> 16;
        mask |= mask >> 32;
        while (true) {
            std::uint64_t v = next() & mask;
            if (v < bound) return v;
        }
    }

  private:
    std::uint64_t seed_;
    std::uint64_t counter_ = 0;
};

std::vector<std::size_t> random_permutation(std::size_t n, SeedStream& rng) {
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    for (std::size_t i = n; i > 1; --i) {
        std::size_t j = static_cast<std::size_t>(rng.bounded(i));
        std::swap(perm[i - 1], perm[j]);
    }
    return perm;
}

}  // namespace

StreamDistribution distribution_from_string(const std::string& s) {
    if (s == "zipf") return StreamDistribution::Zipf;
    if (s == "uniform") return StreamDistribution::Uniform;
    if (s == "one-heavy") return StreamDistribution::OneHeavy;
    throw std::invalid_argument("unknown distribution: " + s);
}

std::string to_string(StreamDistribution d) {
    switch (d) {
        case StreamDistribution::Zipf: return "zipf";
        case StreamDistribution::Uniform: return "uniform";
        case StreamDistribution::OneHeavy: return "one-heavy";
    }
    throw std::logic_error("invalid distribution value");
}

std::vector<StreamUpdate> make_stream(StreamDistribution dist, std::size_t n, double zipf_s,
                                      std::int64_t scale, std::uint64_t seed) {
    if (n == 0) throw std::invalid_argument("make_stream: n must be positive");
    if (scale < 1) throw std::invalid_argument("make_stream: scale must be positive");
    SeedStream rng(seed ^ 0xb5ad4eceda1ce2a9ULL);
    std::vector<StreamUpdate> out;
    switch (dist) {
        case StreamDistribution::Zipf: {
            if (!(zipf_s > 0.0)) throw std::invalid_argument("make_stream: zipf_s must be positive");
            std::vector<std::size_t> perm = random_permutation(n, rng);
            for (std::size_t rank = 0; rank < n; ++rank) {
                double mass = static_cast<double>(scale) /
                              std::pow(static_cast<double>(rank + 1), zipf_s);
                auto count = static_cast<std::int64_t>(std::llround(mass));
                if (count <= 0) continue;
                out.push_back({static_cast<std::uint64_t>(perm[rank]), count});
            }
            break;
        }
        case StreamDistribution::Uniform: {
            std::uint64_t cap = static_cast<std::uint64_t>(scale) / 8 + 1;
            for (std::size_t i = 0; i < n; ++i) {
                auto count = static_cast<std::int64_t>(rng.bounded(cap));
                if (count <= 0) continue;
                out.push_back({static_cast<std::uint64_t>(i), count});
            }
            break;
        }
        case StreamDistribution::OneHeavy: {
            std::uint64_t heavy = rng.bounded(n);
            for (std::size_t i = 0; i < n; ++i) {
                std::int64_t count = (i == heavy) ? scale : static_cast<std::int64_t>(rng.next() & 1u);
                if (count <= 0) continue;
                out.push_back({static_cast<std::uint64_t>(i), count});
            }
            break;
        }
    }
    return out;
}

DerivedDims derive_dims(const SketchConfig& config) {
    if (config.n == 0) throw std::invalid_argument("derive_dims: n must be positive");
    if (!(config.eps > 0.0)) throw std::invalid_argument("derive_dims: eps must be positive");
    DerivedDims dims;
    double ln_n = std::log(static_cast<double>(std::max<std::size_t>(config.n, 2)));
    if (config.algo == "cm") {
        dims.k = static_cast<std::uint32_t>(std::ceil(std::exp(1.0) / config.eps));
        dims.t = static_cast<std::uint32_t>(std::ceil(ln_n));
    } else if (config.algo == "cs") {
        dims.k = static_cast<std::uint32_t>(std::ceil(3.0 / (config.eps * config.eps)));
        dims.t = static_cast<std::uint32_t>(std::ceil(ln_n));
        if (dims.t % 2 == 0) ++dims.t;
    } else if (config.algo == "nounder") {
        NuParams params = nu_params(config.n, config.p, config.eps);
        dims.k = params.buckets;
        dims.t = params.tables;
    } else if (config.algo == "noover") {
        NoParams params = no_params(config.n, config.p, config.eps);
        dims.k = params.buckets;
        dims.t = params.copies;
    } else if (config.algo == "detpq") {
        IncoherentMatrix matrix = IncoherentMatrix::build(config.n);
        dims.k = static_cast<std::uint32_t>(matrix.field_size());
        dims.t = static_cast<std::uint32_t>(matrix.degree());
    } else {
        throw std::invalid_argument("derive_dims: unknown algo: " + config.algo);
    }
    dims.t = std::max<std::uint32_t>(dims.t, 1);
    dims.k = std::max<std::uint32_t>(dims.k, 1);
    dims.total_counters = static_cast<std::size_t>(dims.k) * dims.t;
    if (config.algo == "detpq")
        dims.total_counters = static_cast<std::size_t>(dims.k) * dims.k;
    return dims;
}

namespace {

using AnySketch = std::variant<CountMinSketch, CountSketch, NoUnderSketch, NoOverSketch, DetPQSketch>;

AnySketch build_sketch(const SketchConfig& config, const DerivedDims& dims, std::uint64_t seed) {
    if (config.algo == "cm") return CountMinSketch(config.n, dims.k, dims.t, seed);
    if (config.algo == "cs") return CountSketch(config.n, dims.k, dims.t, seed);
    if (config.algo == "nounder") return NoUnderSketch(config.n, config.p, config.eps, seed);
    if (config.algo == "noover") return NoOverSketch(config.n, config.p, config.eps, seed);
    if (config.algo == "detpq") return DetPQSketch(IncoherentMatrix::build(config.n));
    throw std::invalid_argument("build_sketch: unknown algo: " + config.algo);
}

}  // namespace

BenchReport bench_error(const SketchConfig& config, std::size_t trials, StreamDistribution dist,
                        std::uint64_t master_seed, double zipf_s, std::int64_t scale) {
    if (trials == 0) throw std::invalid_argument("bench_error: trials must be positive");
    DerivedDims dims = derive_dims(config);

    BenchReport report;
    report.algo = config.algo;
    report.distribution = to_string(dist);
    report.n = config.n;
    report.p = config.p;
    report.eps = config.eps;
    report.k = dims.k;
    report.t = dims.t;
    report.total_counters = dims.total_counters;
    report.trials = trials;
    report.master_seed = master_seed;

    auto start = std::chrono::steady_clock::now();
    std::size_t failures = 0;
    for (std::size_t trial = 0; trial < trials; ++trial) {
        std::uint64_t stream_seed = mix64(master_seed ^ (2 * trial + 1));
        std::uint64_t sketch_seed = mix64(config.seed ^ mix64(master_seed ^ (2 * trial)));
        std::vector<StreamUpdate> stream =
            make_stream(dist, config.n, zipf_s, scale, stream_seed);

        AnySketch sketch = build_sketch(config, dims, sketch_seed);
        FrequencyVector exact(config.n);
        for (const StreamUpdate& u : stream) {
            exact.apply(u);
            std::visit([&](auto& s) { s.update(u); }, sketch);
        }
        if (config.eps_q) {
            auto* nu = std::get_if<NoUnderSketch>(&sketch);
            if (nu == nullptr)
                throw std::invalid_argument("bench_error: eps_q applies only to nounder");
            sketch = nu->quantize(*config.eps_q);
        }

        double denom = norm(exact, config.p);
        if (denom <= 0.0) continue;
        bool failed = false;
        for (std::size_t i = 0; i < config.n; ++i) {
            double truth = static_cast<double>(exact.counts()[i]);
            double est = std::visit(
                [&](const auto& s) { return static_cast<double>(s.estimate(i)); }, sketch);
            double err = std::abs(est - truth);
            report.max_error_ratio = std::max(report.max_error_ratio, err / denom);
            if (err > config.eps * denom) failed = true;
            // one-sided checks: cm and nounder must never undershoot, noover
            // and detpq must never overshoot (tiny float slack for detpq,
            // whose queries leave integer arithmetic at the very end)
            if (config.algo == "cm" || config.algo == "nounder") {
                if (est < truth) ++report.one_sided_violations;
            } else if (config.algo == "noover" || config.algo == "detpq") {
                if (est > truth + 1e-6) ++report.one_sided_violations;
            }
        }
        if (failed) ++failures;
    }
    auto stop = std::chrono::steady_clock::now();
    report.failure_fraction = static_cast<double>(failures) / static_cast<double>(trials);
    report.wall_time_seconds = std::chrono::duration<double>(stop - start).count();
    return report;
}

}  // namespace ossk
