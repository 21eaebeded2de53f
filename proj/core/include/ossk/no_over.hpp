#pragma once

#include <cstdint>
#include <vector>

#include "ossk/det_point_query.hpp"
#include "ossk/hashing.hpp"
#include "ossk/stream.hpp"

namespace ossk {

// Dimensions for the never-overestimating sketch: k = ceil(4/eps * n^(1-1/p))
// buckets and the least t with (3/4)^t <= eps^p/10 independent copies, so the
// chance that every copy overshoots the allowed error is below eps^p/10.
struct NoParams {
    std::uint32_t buckets;
    std::uint32_t copies;
};

NoParams no_params(std::size_t n, double p, double eps);

// t independent hash partitions of [n] into k buckets; each (copy, bucket)
// cell runs a point-query sketch over the full universe, all cells sharing
// one measurement matrix.  The estimate takes the best per-copy lower bound,
// so it never exceeds the true count on strict-turnstile streams.
class NoOverSketch {
public:
    NoOverSketch(std::size_t n, double p, double eps, std::uint64_t seed);
    NoOverSketch(std::size_t n, double p, double eps, std::uint32_t k, std::uint32_t t,
                 std::uint64_t seed);

    void update(const StreamUpdate& u);

    // max(0, max over copies of the bucket point query at item)
    double estimate(std::size_t item) const;

    NoOverSketch& operator+=(const NoOverSketch& other);

    std::size_t universe() const { return n_; }
    double p() const { return p_; }
    double eps() const { return eps_; }
    std::uint32_t buckets() const { return static_cast<std::uint32_t>(hash_.range()); }
    std::uint32_t copies() const { return hash_.tables(); }
    std::uint64_t seed() const { return hash_.seed(); }
    const IncoherentMatrix& matrix() const { return matrix_; }

    // l1 mass routed to one (copy, bucket) cell
    std::int64_t cell_mass(std::uint32_t copy, std::uint64_t bucket) const;
    const std::vector<std::int64_t>& accumulators() const { return acc_; }
    std::vector<std::int64_t>& accumulators() { return acc_; }
    const std::vector<std::int64_t>& masses() const { return mass_; }
    std::vector<std::int64_t>& masses() { return mass_; }

private:
    std::size_t cell(std::uint32_t copy, std::uint64_t bucket) const {
        return static_cast<std::size_t>(copy) * buckets() + bucket;
    }
    void check_item(std::uint64_t item) const;

    std::size_t n_;
    double p_;
    double eps_;
    HashFamily hash_;
    IncoherentMatrix matrix_;
    // acc_ holds copies*buckets accumulators of matrix_.rows() integers each
    std::vector<std::int64_t> acc_;
    std::vector<std::int64_t> mass_;
};

NoOverSketch merge(NoOverSketch a, const NoOverSketch& b);

}  // namespace ossk
