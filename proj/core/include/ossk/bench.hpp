#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ossk/stream.hpp"

namespace ossk {

enum class StreamDistribution { Zipf, Uniform, OneHeavy };

StreamDistribution distribution_from_string(const std::string& s);
std::string to_string(StreamDistribution d);

// Frequency vector shapes used by the error benchmarks; all sampling is done
// with the library's own mixer so a seed pins the stream bit for bit on any
// platform.  Zipf assigns count round(scale / rank^s) to a random permutation
// of the items, uniform draws each count from [0, scale/8], one-heavy gives a
// random item the whole scale and everyone else a coin flip.
std::vector<StreamUpdate> make_stream(StreamDistribution dist, std::size_t n, double zipf_s,
                                      std::int64_t scale, std::uint64_t seed);

struct SketchConfig {
    std::string algo;  // cm | cs | nounder | noover | detpq
    std::size_t n = 0;
    double p = 2.0;
    double eps = 0.5;
    std::uint64_t seed = 0;
    std::optional<double> eps_q;  // quantize nounder counters before querying
};

// derived counter-grid dimensions for the config (detpq reports its
// measurement dimensions instead)
struct DerivedDims {
    std::uint32_t k = 0;
    std::uint32_t t = 0;
    std::size_t total_counters = 0;
};

DerivedDims derive_dims(const SketchConfig& config);

struct BenchReport {
    std::string algo;
    std::string distribution;
    std::size_t n = 0;
    double p = 2.0;
    double eps = 0.0;
    std::uint32_t k = 0;
    std::uint32_t t = 0;
    std::size_t total_counters = 0;
    std::size_t trials = 0;
    std::uint64_t master_seed = 0;
    // fraction of trials where some |estimate - x_i| exceeds eps * |x|_p
    double failure_fraction = 0.0;
    // max over trials and items of |estimate - x_i| / |x|_p
    double max_error_ratio = 0.0;
    // violations of the algorithm's one-sided guarantee; identically 0 for
    // nounder, noover and detpq
    std::uint64_t one_sided_violations = 0;
    double wall_time_seconds = 0.0;
};

// Runs `trials` seeded streams through the configured sketch and scores every
// estimate against the exact vector.  Identical master seeds give identical
// reports except for the wall time.
BenchReport bench_error(const SketchConfig& config, std::size_t trials, StreamDistribution dist,
                        std::uint64_t master_seed, double zipf_s = 1.1,
                        std::int64_t scale = 10000);

}  // namespace ossk
