#include "ossk/det_point_query.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ossk {

namespace {

bool is_prime(std::uint64_t q) {
    if (q < 2) return false;
    for (std::uint64_t f = 2; f * f <= q; ++f)
        if (q % f == 0) return false;
    return true;
}

// least d >= 1 with q^d >= n
std::uint32_t min_degree(std::uint64_t q, std::size_t n) {
    std::uint32_t d = 1;
    std::uint64_t power = q;
    while (power < n) {
        if (power > (std::uint64_t{1} << 62) / q) break;  // q^d already astronomically large
        power *= q;
        ++d;
    }
    return d;
}

}  // namespace

IncoherentMatrix::IncoherentMatrix(std::size_t n, std::uint32_t q, std::uint32_t d)
    : n_(n), q_(q), d_(d) {
    if (n == 0) throw std::invalid_argument("IncoherentMatrix: empty universe");
    if (!is_prime(q)) throw std::invalid_argument("IncoherentMatrix: q must be prime");
    double capacity = std::pow(static_cast<double>(q), static_cast<double>(d));
    if (capacity < static_cast<double>(n))
        throw std::invalid_argument("IncoherentMatrix: q^d < n");
}

IncoherentMatrix IncoherentMatrix::build(std::size_t n, double mu_target) {
    if (n == 0) throw std::invalid_argument("build_incoherent: empty universe");
    // mu_target = 0 is satisfiable: any prime q >= n gives orthonormal columns
    if (!(mu_target >= 0.0))
        throw std::invalid_argument("build_incoherent: mu_target must be >= 0");
    for (std::uint64_t q = 2;; ++q) {
        if (!is_prime(q)) continue;
        std::uint32_t d = min_degree(q, n);
        double power = std::pow(static_cast<double>(q), static_cast<double>(d));
        if (power < static_cast<double>(n)) continue;
        if (static_cast<double>(d - 1) <= mu_target * static_cast<double>(q))
            return IncoherentMatrix(n, static_cast<std::uint32_t>(q), d);
        // d is the least admissible degree and (d-1)/q only grows with d,
        // so a larger d cannot rescue this q; move on
    }
}

std::size_t IncoherentMatrix::support_row(std::size_t item, std::uint32_t a) const {
    if (item >= n_)
        throw std::invalid_argument("column " + std::to_string(item) + " outside universe");
    // Horner evaluation of the digit polynomial at a, most significant first
    std::uint64_t digits[64];
    std::size_t rest = item;
    for (std::uint32_t j = 0; j < d_; ++j) {
        digits[j] = rest % q_;
        rest /= q_;
    }
    std::uint64_t value = 0;
    for (std::uint32_t j = d_; j-- > 0;) value = (value * a + digits[j]) % q_;
    return static_cast<std::size_t>(a) * q_ + value;
}

double IncoherentMatrix::entry_value() const { return 1.0 / std::sqrt(static_cast<double>(q_)); }

std::vector<double> IncoherentMatrix::dense_column(std::size_t item) const {
    std::vector<double> col(rows(), 0.0);
    for (std::uint32_t a = 0; a < q_; ++a) col[support_row(item, a)] = entry_value();
    return col;
}

DetPQSketch::DetPQSketch(IncoherentMatrix matrix)
    : matrix_(matrix), acc_(matrix.rows(), 0) {}

void DetPQSketch::update(const StreamUpdate& u) {
    for (std::uint32_t a = 0; a < matrix_.field_size(); ++a)
        acc_[matrix_.support_row(u.item, a)] += u.delta;
    mass_ += u.delta;
}

double DetPQSketch::estimate_raw(std::size_t item) const {
    std::int64_t hits = 0;
    for (std::uint32_t a = 0; a < matrix_.field_size(); ++a)
        hits += acc_[matrix_.support_row(item, a)];
    return static_cast<double>(hits) / matrix_.field_size();
}

double DetPQSketch::estimate(std::size_t item) const {
    if (matrix_.coherence_bound() > 0.1)
        throw std::invalid_argument("point query transform needs coherence <= 0.1");
    return (10.0 * estimate_raw(item) - static_cast<double>(mass_)) / 9.0;
}

DetPQSketch& DetPQSketch::operator+=(const DetPQSketch& other) {
    if (matrix_.columns() != other.matrix_.columns() ||
        matrix_.field_size() != other.matrix_.field_size() ||
        matrix_.degree() != other.matrix_.degree())
        throw std::invalid_argument("DetPQSketch merge: matrix mismatch");
    for (std::size_t i = 0; i < acc_.size(); ++i) acc_[i] += other.acc_[i];
    mass_ += other.mass_;
    return *this;
}

DetPQSketch merge(DetPQSketch a, const DetPQSketch& b) {
    a += b;
    return a;
}

}  // namespace ossk
