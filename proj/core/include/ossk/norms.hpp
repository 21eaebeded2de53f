#pragma once

#include <limits>
#include <span>

#include "ossk/stream.hpp"

namespace ossk {

// Marker accepted by norm() for the max-absolute-value norm.
inline constexpr double kInfNorm = std::numeric_limits<double>::infinity();

// l_p norm with compensated summation; p must be >= 1 (p < 1 is not a norm
// and is rejected), p = kInfNorm gives max |x_i|.
double norm(std::span<const double> x, double p);
double norm(const FrequencyVector& x, double p);

}  // namespace ossk
