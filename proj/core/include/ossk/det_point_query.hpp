#pragma once

#include <cstdint>
#include <vector>

#include "ossk/stream.hpp"

namespace ossk {

// Measurement matrix with unit-norm columns and pairwise inner products
// bounded by (d-1)/q.  Column i encodes the degree-<d polynomial over F_q
// whose coefficients are the base-q digits of i; the column has a single
// nonzero 1/sqrt(q) per evaluation point, at row a*q + P_i(a).  Only (q, d, n)
// are stored; columns are generated on demand.
class IncoherentMatrix {
public:
    // smallest prime q admitting some d >= 1 with q^d >= n and
    // (d-1)/q <= mu_target; smallest q means smallest row count m = q^2
    static IncoherentMatrix build(std::size_t n, double mu_target = 0.1);

    IncoherentMatrix(std::size_t n, std::uint32_t q, std::uint32_t d);

    std::size_t columns() const { return n_; }
    std::size_t rows() const { return static_cast<std::size_t>(q_) * q_; }
    std::uint32_t field_size() const { return q_; }
    std::uint32_t degree() const { return d_; }
    double coherence_bound() const { return static_cast<double>(d_ - 1) / q_; }

    // row of column `item`'s nonzero entry for evaluation point a in [0, q)
    std::size_t support_row(std::size_t item, std::uint32_t a) const;
    // every nonzero entry equals 1/sqrt(q)
    double entry_value() const;

    std::vector<double> dense_column(std::size_t item) const;

private:
    std::size_t n_;
    std::uint32_t q_;
    std::uint32_t d_;
};

// Linear measurement y = Phi*x plus the exact l1 mass s.  The accumulator
// keeps sqrt(q)*y as integers, so updates and raw queries are exact integer
// arithmetic; floating point enters only in the final division by q.
class DetPQSketch {
public:
    explicit DetPQSketch(IncoherentMatrix matrix);

    void update(const StreamUpdate& u);

    // <col_i, y>; off by at most mu*(|x|_1 - x_i) from x_i for x >= 0
    double estimate_raw(std::size_t item) const;

    // (10*x~_i - s)/9: never above x_i, and below it by at most
    // (2/9)*(|x|_1 - x_i); requires the matrix coherence <= 0.1
    double estimate(std::size_t item) const;

    DetPQSketch& operator+=(const DetPQSketch& other);

    std::size_t universe() const { return matrix_.columns(); }
    const IncoherentMatrix& matrix() const { return matrix_; }
    std::int64_t l1_mass() const { return mass_; }
    const std::vector<std::int64_t>& accumulator() const { return acc_; }
    std::vector<std::int64_t>& accumulator() { return acc_; }
    std::int64_t& l1_mass() { return mass_; }

private:
    IncoherentMatrix matrix_;
    std::vector<std::int64_t> acc_;
    std::int64_t mass_ = 0;
};

DetPQSketch merge(DetPQSketch a, const DetPQSketch& b);

}  // namespace ossk
