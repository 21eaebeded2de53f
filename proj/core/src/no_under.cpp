#include "ossk/no_under.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace ossk {

NuParams nu_params(std::size_t n, double p, double eps) {
    if (n == 0) throw std::invalid_argument("nu_params: empty universe");
    if (!(p > 1.0)) throw std::invalid_argument("nu_params: requires p > 1");
    if (!(eps > 0.0) || eps > 1.0) throw std::invalid_argument("nu_params: requires 0 < eps <= 1");

    NuParams out{};
    // snap near-integers before the ceiling: pow(n, 1-1/p) can land a hair
    // above an exact power (1000^(2/3) -> 100.0000000000000028)
    double raw = 4.0 / eps * std::pow(static_cast<double>(n), 1.0 - 1.0 / p);
    double k = std::ceil(raw - 1e-9 * std::max(1.0, raw));
    out.capped = 1.0 / eps > std::pow(static_cast<double>(n), 1.0 / p);
    if (out.capped || k > static_cast<double>(n)) k = std::min(k, static_cast<double>(n));
    out.buckets = static_cast<std::uint32_t>(k);
    out.tables = std::max<std::uint32_t>(3, static_cast<std::uint32_t>(std::ceil(2.0 * p / (p - 1.0))));
    return out;
}

namespace {

// deterministic binary exponentiation; the quantizer and the estimator must
// agree bit for bit on base^e
double pow_det(double base, std::uint32_t e) {
    double result = 1.0;
    double acc = base;
    while (e > 0) {
        if (e & 1U) result *= acc;
        acc *= acc;
        e >>= 1;
    }
    return result;
}

// least e >= 0 with pow_det(base, e) >= value, for value >= 1
std::int32_t round_up_exponent(double base, double value) {
    auto guess = static_cast<std::int64_t>(std::ceil(std::log(value) / std::log(base)));
    std::int64_t e = std::max<std::int64_t>(0, guess - 2);
    while (pow_det(base, static_cast<std::uint32_t>(e)) < value) ++e;
    while (e > 0 && pow_det(base, static_cast<std::uint32_t>(e - 1)) >= value) --e;
    return static_cast<std::int32_t>(e);
}

}  // namespace

NoUnderSketch::NoUnderSketch(std::size_t n, double p, double eps, std::uint64_t seed)
    : NoUnderSketch(n, p, eps, seed, nu_params(n, p, eps)) {}

NoUnderSketch::NoUnderSketch(std::size_t n, double p, double eps, std::uint64_t seed,
                             const NuParams& params)
    : NoUnderSketch(n, p, eps, params.buckets, params.tables, seed) {
    capped_ = params.capped;
}

NoUnderSketch::NoUnderSketch(std::size_t n, double p, double eps, std::uint32_t k, std::uint32_t t,
                             std::uint64_t seed)
    : n_(n), p_(p), eps_(eps), capped_(false), hash_(seed, t, k),
      raw_(static_cast<std::size_t>(k) * t, 0) {
    if (n == 0) throw std::invalid_argument("NoUnderSketch: empty universe");
}

void NoUnderSketch::check_item(std::uint64_t item) const {
    if (item >= n_)
        throw std::invalid_argument("item " + std::to_string(item) + " outside universe");
}

void NoUnderSketch::update(const StreamUpdate& u) {
    if (quantized()) throw std::logic_error("cannot update a quantized sketch");
    check_item(u.item);
    for (std::uint32_t l = 0; l < tables(); ++l)
        raw_[cell(l, hash_.bucket(l, u.item))] += u.delta;
}

double NoUnderSketch::power_value(double base, std::int32_t e) {
    if (e < 0) return 0.0;
    return pow_det(base, static_cast<std::uint32_t>(e));
}

double NoUnderSketch::estimate(std::size_t item) const {
    check_item(item);
    if (!quantized()) return static_cast<double>(estimate_exact(item));
    std::int32_t best = exp_[cell(0, hash_.bucket(0, item))];
    for (std::uint32_t l = 1; l < tables(); ++l)
        best = std::min(best, exp_[cell(l, hash_.bucket(l, item))]);
    return power_value(base_, best);
}

std::int64_t NoUnderSketch::estimate_exact(std::size_t item) const {
    if (quantized()) throw std::logic_error("exact estimates require a raw sketch");
    check_item(item);
    std::int64_t best = raw_[cell(0, hash_.bucket(0, item))];
    for (std::uint32_t l = 1; l < tables(); ++l)
        best = std::min(best, raw_[cell(l, hash_.bucket(l, item))]);
    return best;
}

void NoUnderSketch::check_same_shape(const NoUnderSketch& other) const {
    if (n_ != other.n_ || buckets() != other.buckets() || tables() != other.tables() ||
        seed() != other.seed() || p_ != other.p_ || eps_ != other.eps_)
        throw std::invalid_argument("NoUnderSketch merge: parameter mismatch");
    if (quantized() != other.quantized() || base_ != other.base_)
        throw std::invalid_argument("NoUnderSketch merge: counter representation mismatch");
}

NoUnderSketch& NoUnderSketch::operator+=(const NoUnderSketch& other) {
    check_same_shape(other);
    if (!quantized()) {
        for (std::size_t i = 0; i < raw_.size(); ++i) raw_[i] += other.raw_[i];
        return *this;
    }
    // summing two grid powers rarely lands on the grid again, so a merge of
    // quantized sketches rounds each sum back up; one more factor of base
    for (std::size_t i = 0; i < exp_.size(); ++i) {
        double sum = power_value(base_, exp_[i]) + power_value(base_, other.exp_[i]);
        exp_[i] = sum == 0.0 ? -1 : round_up_exponent(base_, sum);
    }
    return *this;
}

NoUnderSketch NoUnderSketch::quantize(double eps_q) const {
    if (!(eps_q > 0.0)) throw std::invalid_argument("quantize requires eps_q > 0");
    NoUnderSketch out(*this);
    out.base_ = 1.0 + eps_q;
    out.exp_.assign(raw_.size() ? raw_.size() : exp_.size(), -1);
    if (!quantized()) {
        for (std::size_t i = 0; i < raw_.size(); ++i) {
            if (raw_[i] < 0)
                throw std::invalid_argument("quantize requires nonnegative counters");
            if (raw_[i] > 0)
                out.exp_[i] = round_up_exponent(out.base_, static_cast<double>(raw_[i]));
        }
    } else {
        for (std::size_t i = 0; i < exp_.size(); ++i) {
            double v = power_value(base_, exp_[i]);
            if (v > 0.0) out.exp_[i] = round_up_exponent(out.base_, v);
        }
    }
    out.raw_.clear();
    return out;
}

const std::vector<std::int64_t>& NoUnderSketch::raw_counters() const {
    if (quantized()) throw std::logic_error("raw counters unavailable on a quantized sketch");
    return raw_;
}

const std::vector<std::int32_t>& NoUnderSketch::exponents() const {
    if (!quantized()) throw std::logic_error("exponents unavailable on a raw sketch");
    return exp_;
}

NoUnderSketch NoUnderSketch::restore(std::size_t n, double p, double eps, std::uint32_t k,
                                     std::uint32_t t, std::uint64_t seed, bool capped,
                                     std::vector<std::int64_t> raw) {
    NoUnderSketch out(n, p, eps, k, t, seed);
    if (raw.size() != out.raw_.size())
        throw std::invalid_argument("restore: counter grid has the wrong size");
    out.capped_ = capped;
    out.raw_ = std::move(raw);
    return out;
}

NoUnderSketch NoUnderSketch::restore_quantized(std::size_t n, double p, double eps, std::uint32_t k,
                                               std::uint32_t t, std::uint64_t seed, bool capped,
                                               double base, std::vector<std::int32_t> exponents) {
    NoUnderSketch out(n, p, eps, k, t, seed);
    if (exponents.size() != out.raw_.size())
        throw std::invalid_argument("restore_quantized: exponent grid has the wrong size");
    if (!(base > 1.0)) throw std::invalid_argument("restore_quantized: base must exceed 1");
    out.capped_ = capped;
    out.base_ = base;
    out.exp_ = std::move(exponents);
    out.raw_.clear();
    return out;
}

NoUnderSketch merge(NoUnderSketch a, const NoUnderSketch& b) {
    a += b;
    return a;
}

}  // namespace ossk
