#include "ossk/no_over.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace ossk {

NoParams no_params(std::size_t n, double p, double eps) {
    if (n == 0) throw std::invalid_argument("no_params: empty universe");
    if (!(p >= 1.0)) throw std::invalid_argument("no_params: requires p >= 1");
    if (!(eps > 0.0) || eps > 1.0) throw std::invalid_argument("no_params: requires 0 < eps <= 1");

    NoParams out{};
    // snap near-integers before the ceiling: pow(n, 1-1/p) can land a hair
    // above an exact power
    double raw = 4.0 / eps * std::pow(static_cast<double>(n), 1.0 - 1.0 / p);
    out.buckets = static_cast<std::uint32_t>(std::ceil(raw - 1e-9 * std::max(1.0, raw)));
    double target = std::pow(eps, p) / 10.0;
    std::uint32_t t = 1;
    while (std::pow(0.75, static_cast<double>(t)) > target) ++t;
    out.copies = t;
    return out;
}

NoOverSketch::NoOverSketch(std::size_t n, double p, double eps, std::uint64_t seed)
    : NoOverSketch(n, p, eps, no_params(n, p, eps).buckets, no_params(n, p, eps).copies, seed) {}

NoOverSketch::NoOverSketch(std::size_t n, double p, double eps, std::uint32_t k, std::uint32_t t,
                           std::uint64_t seed)
    : n_(n), p_(p), eps_(eps), hash_(seed, t, k), matrix_(IncoherentMatrix::build(n)),
      acc_(static_cast<std::size_t>(k) * t * matrix_.rows(), 0),
      mass_(static_cast<std::size_t>(k) * t, 0) {}

void NoOverSketch::check_item(std::uint64_t item) const {
    if (item >= n_)
        throw std::invalid_argument("item " + std::to_string(item) + " outside universe");
}

void NoOverSketch::update(const StreamUpdate& u) {
    check_item(u.item);
    const std::size_t m = matrix_.rows();
    const std::uint32_t q = matrix_.field_size();
    // the support rows do not depend on the copy
    std::vector<std::size_t> rows(q);
    for (std::uint32_t a = 0; a < q; ++a) rows[a] = matrix_.support_row(u.item, a);
    for (std::uint32_t l = 0; l < copies(); ++l) {
        std::size_t c = cell(l, hash_.bucket(l, u.item));
        for (std::uint32_t a = 0; a < q; ++a) acc_[c * m + rows[a]] += u.delta;
        mass_[c] += u.delta;
    }
}

double NoOverSketch::estimate(std::size_t item) const {
    check_item(item);
    const std::size_t m = matrix_.rows();
    const std::uint32_t q = matrix_.field_size();
    std::vector<std::size_t> rows(q);
    for (std::uint32_t a = 0; a < q; ++a) rows[a] = matrix_.support_row(item, a);
    double best = 0.0;
    for (std::uint32_t l = 0; l < copies(); ++l) {
        std::size_t c = cell(l, hash_.bucket(l, item));
        std::int64_t hits = 0;
        for (std::uint32_t a = 0; a < q; ++a) hits += acc_[c * m + rows[a]];
        double raw = static_cast<double>(hits) / q;
        double lower = (10.0 * raw - static_cast<double>(mass_[c])) / 9.0;
        best = std::max(best, lower);
    }
    return best;
}

std::int64_t NoOverSketch::cell_mass(std::uint32_t copy, std::uint64_t bucket) const {
    return mass_.at(cell(copy, bucket));
}

NoOverSketch& NoOverSketch::operator+=(const NoOverSketch& other) {
    if (n_ != other.n_ || buckets() != other.buckets() || copies() != other.copies() ||
        seed() != other.seed() || p_ != other.p_ || eps_ != other.eps_)
        throw std::invalid_argument("NoOverSketch merge: parameter mismatch");
    for (std::size_t i = 0; i < acc_.size(); ++i) acc_[i] += other.acc_[i];
    for (std::size_t i = 0; i < mass_.size(); ++i) mass_[i] += other.mass_[i];
    return *this;
}

NoOverSketch merge(NoOverSketch a, const NoOverSketch& b) {
    a += b;
    return a;
}

}  // namespace ossk
