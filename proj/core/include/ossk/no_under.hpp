#pragma once

#include <cstdint>
#include <vector>

#include "ossk/hashing.hpp"
#include "ossk/stream.hpp"

namespace ossk {

// Dimensions for the never-underestimating sketch.  For p > 1 the guarantee
// "estimate <= x_i + eps*|x|_p with probability >= 1 - 1/n" needs
// k = ceil(4/eps * n^(1-1/p)) buckets; k is capped at n (with the capped flag
// set) once 1/eps exceeds n^(1/p), where the formula stops paying for itself.
struct NuParams {
    std::uint32_t buckets;
    std::uint32_t tables;
    bool capped;
};

NuParams nu_params(std::size_t n, double p, double eps);

// Count-Min shaped sketch whose estimates never fall below the true count on
// strict-turnstile streams.  Counters are either raw 64-bit integers or, after
// quantize(), exponents over the base 1+eps_q so that round-tripping a
// quantized sketch is bit exact.
class NoUnderSketch {
public:
    NoUnderSketch(std::size_t n, double p, double eps, std::uint64_t seed);
    // dimension override for tests and tools that pin k and t directly
    NoUnderSketch(std::size_t n, double p, double eps, std::uint32_t k, std::uint32_t t,
                  std::uint64_t seed);

    void update(const StreamUpdate& u);

    // min over tables of the counter in the item's bucket
    double estimate(std::size_t item) const;
    // raw mode only: the same minimum as an exact integer
    std::int64_t estimate_exact(std::size_t item) const;

    NoUnderSketch& operator+=(const NoUnderSketch& other);

    // Rounds every nonzero counter up to the least power of 1+eps_q that
    // reaches it.  The result never shrinks a counter, so the
    // no-underestimation guarantee survives; each quantization step inflates
    // a counter by a factor of at most 1+eps_q.
    NoUnderSketch quantize(double eps_q) const;

    std::size_t universe() const { return n_; }
    double p() const { return p_; }
    double eps() const { return eps_; }
    std::uint32_t buckets() const { return static_cast<std::uint32_t>(hash_.range()); }
    std::uint32_t tables() const { return hash_.tables(); }
    std::uint64_t seed() const { return hash_.seed(); }
    bool capped() const { return capped_; }
    bool quantized() const { return base_ > 0.0; }
    // 1+eps_q for a quantized sketch, 0 for a raw one
    double quantize_base() const { return base_; }

    const std::vector<std::int64_t>& raw_counters() const;
    const std::vector<std::int32_t>& exponents() const;

    // deserialization entry points
    static NoUnderSketch restore(std::size_t n, double p, double eps, std::uint32_t k,
                                 std::uint32_t t, std::uint64_t seed, bool capped,
                                 std::vector<std::int64_t> raw);
    static NoUnderSketch restore_quantized(std::size_t n, double p, double eps, std::uint32_t k,
                                           std::uint32_t t, std::uint64_t seed, bool capped,
                                           double base, std::vector<std::int32_t> exponents);

    // value of the power base^e with the sketch's own deterministic
    // exponentiation; e = -1 encodes a zero counter
    static double power_value(double base, std::int32_t e);

private:
    NoUnderSketch(std::size_t n, double p, double eps, std::uint64_t seed, const NuParams& params);

    std::size_t cell(std::uint32_t table, std::uint64_t bucket) const {
        return static_cast<std::size_t>(table) * buckets() + bucket;
    }
    void check_item(std::uint64_t item) const;
    void check_same_shape(const NoUnderSketch& other) const;

    std::size_t n_;
    double p_;
    double eps_;
    bool capped_;
    HashFamily hash_;
    double base_ = 0.0;
    std::vector<std::int64_t> raw_;
    std::vector<std::int32_t> exp_;
};

NoUnderSketch merge(NoUnderSketch a, const NoUnderSketch& b);

}  // namespace ossk
