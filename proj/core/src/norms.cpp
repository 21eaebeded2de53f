#include "ossk/norms.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace ossk {

namespace {

// Neumaier variant of Kahan summation
class CompensatedSum {
public:
    void add(double value) {
        double t = sum_ + value;
        if (std::abs(sum_) >= std::abs(value))
            comp_ += (sum_ - t) + value;
        else
            comp_ += (value - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

double norm_impl(std::span<const double> x, double p) {
    if (std::isnan(p) || p < 1.0)
        throw std::invalid_argument("norm requires p >= 1, got " + std::to_string(p));
    if (p == kInfNorm) {
        double m = 0.0;
        for (double v : x) m = std::max(m, std::abs(v));
        return m;
    }
    CompensatedSum acc;
    if (p == 1.0) {
        for (double v : x) acc.add(std::abs(v));
        return acc.value();
    }
    if (p == 2.0) {
        for (double v : x) acc.add(v * v);
        return std::sqrt(acc.value());
    }
    for (double v : x) {
        if (v != 0.0) acc.add(std::pow(std::abs(v), p));
    }
    return std::pow(acc.value(), 1.0 / p);
}

}  // namespace

double norm(std::span<const double> x, double p) { return norm_impl(x, p); }

double norm(const FrequencyVector& x, double p) {
    std::vector<double> v(x.counts().begin(), x.counts().end());
    return norm_impl(v, p);
}

}  // namespace ossk
