#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "ossk/dense_matrix.hpp"
#include "ossk/lp.hpp"

namespace ossk {

// Raised when a certificate fails its numerical self-verification; the CLI
// maps it to a dedicated exit code.
struct CertificationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class FoolKind { NoUnder, NoOver };

// A fooled-estimator witness.  For NoUnder it is an x >= 0 with A x = A v
// (v uniform with unit mass) and a large x_index; any estimator that never
// underestimates must answer at least `value` for v_index even though the
// true value is 1/n.  For NoOver it is an x >= 0 with A x = A v^(index) and
// x_index near zero, forcing a never-overestimating estimator down to zero.
struct FoolingCertificate {
    FoolKind kind;
    std::size_t index;
    std::vector<double> x;
    double value;
    double T = 0.0;  // defining parameter of v^(index) for NoOver, unused for NoUnder
    // z = y^T A with z >= e_index, present for NoUnder when the optimum was
    // not capped; its row sum bounds the forced estimate via sum(z) <= T
    std::optional<std::vector<double>> dual;
    bool saturated = false;  // value hit the unit-mass cap
};

// Residuals from re-checking a certificate against A alone (no solver state).
struct CertificateCheck {
    bool ok;
    double feasibility;      // |A x - A v|_inf, compared to tol * |A|_F
    double negativity;       // most negative x entry
    double dual_margin;      // worst violation of z >= e_index
    double rowspan_residual; // distance of z from the row span of A
    double dual_row_sum;     // sum of z entries
};

// max x_index subject to A x = A v, x >= 0 and x_index <= 1, where v is the
// uniform vector with total mass one; the cap keeps the program bounded for
// matrices with sign-mixed rows, and a capped optimum is reported as
// saturated with value exactly 1.
FoolingCertificate fool_no_under(const DenseMatrix& A, std::size_t index);

struct NoOverAttack {
    double T = 0.0;
    std::vector<std::size_t> fooled;  // indices whose minimum is numerically zero
    std::vector<FoolingCertificate> certificates;  // one per column
};

// For each index i, min x_i subject to A x = A v^(i), x >= 0, where v^(i) is
// 1 at i and 1/T elsewhere; requires 1 <= T <= n/2.  An index lands in
// `fooled` when the minimum is <= 1e-9 * (1 + |A v^(i)|_inf).
NoOverAttack fool_no_over(const DenseMatrix& A, double T);

// Row-span vector z >= e_index with sum(z) <= T, extracted from the dual of
// fool_no_under; empty when the optimum exceeds T/n or verification fails.
std::optional<std::vector<double>> dual_certificate_under(const DenseMatrix& A, std::size_t index,
                                                          double T);

CertificateCheck verify_certificate(const DenseMatrix& A, const FoolingCertificate& cert,
                                    double tol = 1e-9);

// Outcome of running the no-under fooling program against a concrete sketch
// matrix with T = n / rows(A).
struct AttackRecord {
    std::size_t n = 0;
    std::size_t total_rows = 0;
    double T = 0.0;
    std::size_t best_index = 0;
    double forced_estimate = 0.0;  // what a never-underestimating estimator must answer
    double true_value = 0.0;       // 1/n
    double gap = 0.0;
    std::vector<double> per_index_value;
    FoolingCertificate best;
};

AttackRecord attack_sketch(const std::function<DenseMatrix(std::size_t)>& builder, std::size_t n);

// Dense 0/1 matrix of a Count-Min layout: row (table, bucket) selects the
// items the table hashes there.
DenseMatrix count_min_matrix(std::size_t n, std::uint32_t k, std::uint32_t t, std::uint64_t seed);

}  // namespace ossk
