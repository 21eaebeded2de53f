#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>

#include "ossk/lp.hpp"
#include "simplex_impl.hpp"

namespace ossk {

namespace {

using Rational = boost::multiprecision::cpp_rational;

std::vector<Rational> to_rational(std::span<const double> v) {
    std::vector<Rational> out;
    out.reserve(v.size());
    // doubles are binary fractions, so this conversion is exact
    for (double d : v) out.emplace_back(d);
    return out;
}

}  // namespace

LpResult lp_solve_exact(LpSense sense, std::span<const double> c, const DenseMatrix& A,
                        std::span<const double> b) {
    const std::size_t m = A.rows();
    const std::size_t n = A.cols();
    if (c.size() != n || b.size() != m)
        throw std::invalid_argument("lp_solve_exact: dimension mismatch");
    if (n > 32)
        throw std::invalid_argument("lp_solve_exact: validation mode is limited to n <= 32");

    std::vector<Rational> cost = to_rational(c);
    if (sense == LpSense::Maximize)
        for (Rational& v : cost) v = -v;

    detail::DenseSimplex<Rational> solver(m, n, to_rational(A.data()),
                                          to_rational(b), std::move(cost), Rational(0));
    detail::SimplexResultT<Rational> raw = solver.solve();

    LpResult out;
    out.iterations = raw.iterations;
    auto narrow = [](const Rational& v) { return v.convert_to<double>(); };
    switch (raw.status) {
        case detail::SimplexStatus::Infeasible:
            out.status = LpStatus::Infeasible;
            return out;
        case detail::SimplexStatus::IterationLimit:
            out.status = LpStatus::NumericalFailure;
            return out;
        case detail::SimplexStatus::Unbounded:
            out.status = LpStatus::Unbounded;
            for (const Rational& v : raw.ray) out.ray.push_back(narrow(v));
            return out;
        case detail::SimplexStatus::Optimal:
            break;
    }
    out.status = LpStatus::Optimal;
    out.objective = narrow(raw.objective);
    for (const Rational& v : raw.x) out.x.push_back(narrow(v));
    for (const Rational& v : raw.y) out.dual.push_back(narrow(v));
    if (sense == LpSense::Maximize) {
        out.objective = -out.objective;
        for (double& v : out.dual) v = -v;
    }
    // exact arithmetic: solutions satisfy the constraints identically
    out.primal_residual = 0.0;
    out.dual_residual = 0.0;
    return out;
}

}  // namespace ossk
