#pragma once

#include <span>
#include <vector>

#include "ossk/dense_matrix.hpp"

namespace ossk {

enum class LpSense { Maximize, Minimize };
enum class LpStatus { Optimal, Infeasible, Unbounded, NumericalFailure };

struct LpResult {
    LpStatus status = LpStatus::NumericalFailure;
    double objective = 0.0;
    std::vector<double> x;     // primal solution when Optimal
    std::vector<double> dual;  // one multiplier per equality row when Optimal
    std::vector<double> ray;   // improving ray when Unbounded
    double primal_residual = 0.0;  // |Ax-b|_inf / (1+|b|_inf)
    double dual_residual = 0.0;    // worst dual infeasibility / complementary slackness slip
    long iterations = 0;
};

// Optimize sense(c^T x) subject to A x = b, x >= 0.  Dense two-phase primal
// simplex; Bland's rule guards against cycling and artificial variables in
// phase one absorb rank-deficient row sets.  Infeasible and unbounded
// problems are reported as such, never clamped.
LpResult lp_solve(LpSense sense, std::span<const double> c, const DenseMatrix& A,
                  std::span<const double> b);

// Same pivoting rules over exact rationals (inputs converted exactly from
// their binary representation).  Meant for validating the float path on
// small instances; cost grows quickly past a few dozen variables.
LpResult lp_solve_exact(LpSense sense, std::span<const double> c, const DenseMatrix& A,
                        std::span<const double> b);

}  // namespace ossk
