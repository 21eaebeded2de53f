#include "ossk/lp.hpp"

#include <cmath>
#include <stdexcept>

#include "simplex_impl.hpp"

namespace ossk {

namespace detail {

LpResult finish_double(LpSense sense, std::span<const double> c, const DenseMatrix& A,
                       std::span<const double> b, SimplexResultT<double>&& raw) {
    LpResult out;
    out.iterations = raw.iterations;
    switch (raw.status) {
        case SimplexStatus::Infeasible:
            out.status = LpStatus::Infeasible;
            return out;
        case SimplexStatus::IterationLimit:
            out.status = LpStatus::NumericalFailure;
            return out;
        case SimplexStatus::Unbounded:
            out.status = LpStatus::Unbounded;
            out.ray = std::move(raw.ray);
            return out;
        case SimplexStatus::Optimal:
            break;
    }
    out.status = LpStatus::Optimal;
    out.x = std::move(raw.x);
    out.dual = std::move(raw.y);
    out.objective = raw.objective;
    if (sense == LpSense::Maximize) {
        out.objective = -out.objective;
        for (double& v : out.dual) v = -v;
    }

    // relative residuals; a breach is reported, never patched over
    double bmax = 0.0;
    for (double v : b) bmax = std::max(bmax, std::abs(v));
    std::vector<double> ax = A.multiply(out.x);
    double primal = 0.0;
    for (std::size_t r = 0; r < ax.size(); ++r) primal = std::max(primal, std::abs(ax[r] - b[r]));
    out.primal_residual = primal / (1.0 + bmax);

    double cmax = 0.0;
    for (double v : c) cmax = std::max(cmax, std::abs(v));
    std::vector<double> aty = A.multiply_transposed(out.dual);
    double dual = 0.0;
    for (std::size_t j = 0; j < c.size(); ++j) {
        // dual feasibility: A^T y >= c for max, <= c for min
        double slack = sense == LpSense::Maximize ? c[j] - aty[j] : aty[j] - c[j];
        dual = std::max(dual, slack);
    }
    out.dual_residual = dual / (1.0 + cmax);

    if (out.primal_residual > 1e-9 || out.dual_residual > 1e-9)
        out.status = LpStatus::NumericalFailure;
    return out;
}

}  // namespace detail

LpResult lp_solve(LpSense sense, std::span<const double> c, const DenseMatrix& A,
                  std::span<const double> b) {
    const std::size_t m = A.rows();
    const std::size_t n = A.cols();
    if (c.size() != n || b.size() != m)
        throw std::invalid_argument("lp_solve: dimension mismatch");

    std::vector<double> cost(c.begin(), c.end());
    if (sense == LpSense::Maximize)
        for (double& v : cost) v = -v;

    detail::DenseSimplex<double> solver(m, n, A.data(), std::vector<double>(b.begin(), b.end()),
                                        std::move(cost), 1e-9);
    return detail::finish_double(sense, c, A, b, solver.solve());
}

}  // namespace ossk
