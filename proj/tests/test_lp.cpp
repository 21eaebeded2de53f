#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "ossk/dense_matrix.hpp"
#include "ossk/hashing.hpp"
#include "ossk/lp.hpp"

using namespace ossk;

namespace {

DenseMatrix from_rows(const std::vector<std::vector<double>>& rows) {
    DenseMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < rows[r].size(); ++c) m(r, c) = rows[r][c];
    return m;
}

// solve an m x m dense system by partial-pivot elimination; false if singular
bool solve_square(std::vector<std::vector<double>> M, std::vector<double> rhs,
                  std::vector<double>& out) {
    const std::size_t m = rhs.size();
    for (std::size_t col = 0; col < m; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < m; ++r)
            if (std::abs(M[r][col]) > std::abs(M[pivot][col])) pivot = r;
        if (std::abs(M[pivot][col]) < 1e-9) return false;
        std::swap(M[pivot], M[col]);
        std::swap(rhs[pivot], rhs[col]);
        for (std::size_t r = 0; r < m; ++r) {
            if (r == col) continue;
            double f = M[r][col] / M[col][col];
            if (f == 0.0) continue;
            for (std::size_t c2 = col; c2 < m; ++c2) M[r][c2] -= f * M[col][c2];
            rhs[r] -= f * rhs[col];
        }
    }
    out.assign(m, 0.0);
    for (std::size_t i = 0; i < m; ++i) out[i] = rhs[i] / M[i][i];
    return true;
}

struct VertexScan {
    bool feasible = false;
    double min_obj = std::numeric_limits<double>::infinity();
    double max_obj = -std::numeric_limits<double>::infinity();
};

// Exhaustive oracle: every optimum of a bounded feasible program with a
// full-row-rank A sits on a basic feasible solution, so scanning all column
// subsets of size m finds it.
VertexScan enumerate_vertices(const DenseMatrix& A, const std::vector<double>& b,
                              const std::vector<double>& c) {
    const std::size_t m = A.rows(), n = A.cols();
    VertexScan scan;
    std::vector<std::size_t> pick(m);
    for (std::size_t i = 0; i < m; ++i) pick[i] = i;
    while (true) {
        std::vector<std::vector<double>> B(m, std::vector<double>(m));
        for (std::size_t r = 0; r < m; ++r)
            for (std::size_t j = 0; j < m; ++j) B[r][j] = A(r, pick[j]);
        std::vector<double> xb;
        if (solve_square(B, b, xb)) {
            bool nonneg = true;
            for (double v : xb) nonneg &= v >= -1e-7;
            if (nonneg) {
                double obj = 0.0;
                for (std::size_t j = 0; j < m; ++j) obj += c[pick[j]] * xb[j];
                scan.feasible = true;
                scan.min_obj = std::min(scan.min_obj, obj);
                scan.max_obj = std::max(scan.max_obj, obj);
            }
        }
        // next combination in lexicographic order
        std::size_t i = m;
        while (i > 0 && pick[i - 1] == n - m + i - 1) --i;
        if (i == 0) break;
        ++pick[i - 1];
        for (std::size_t j = i; j < m; ++j) pick[j] = pick[j - 1] + 1;
    }
    return scan;
}

bool full_row_rank(const DenseMatrix& A) {
    std::vector<std::vector<double>> M(A.rows(), std::vector<double>(A.cols()));
    for (std::size_t r = 0; r < A.rows(); ++r)
        for (std::size_t c = 0; c < A.cols(); ++c) M[r][c] = A(r, c);
    std::size_t rank = 0;
    for (std::size_t col = 0; col < A.cols() && rank < A.rows(); ++col) {
        std::size_t pivot = rank;
        for (std::size_t r = rank + 1; r < A.rows(); ++r)
            if (std::abs(M[r][col]) > std::abs(M[pivot][col])) pivot = r;
        if (std::abs(M[pivot][col]) < 1e-9) continue;
        std::swap(M[pivot], M[rank]);
        for (std::size_t r = 0; r < A.rows(); ++r) {
            if (r == rank) continue;
            double f = M[r][col] / M[rank][col];
            for (std::size_t c2 = 0; c2 < A.cols(); ++c2) M[r][c2] -= f * M[rank][c2];
        }
        ++rank;
    }
    return rank == A.rows();
}

}  // namespace

TEST_CASE("textbook optimum with explicit slacks") {
    // max 3x + 2y s.t. x + y <= 4, x + 3y <= 6 -> 12 at (4, 0)
    DenseMatrix A = from_rows({{1, 1, 1, 0}, {1, 3, 0, 1}});
    std::vector<double> b = {4, 6}, c = {3, 2, 0, 0};
    LpResult res = lp_solve(LpSense::Maximize, c, A, b);
    REQUIRE(res.status == LpStatus::Optimal);
    CHECK(res.objective == doctest::Approx(12.0));
    CHECK(res.x[0] == doctest::Approx(4.0));
    CHECK(res.x[1] == doctest::Approx(0.0));
    CHECK(res.primal_residual <= 1e-9);
    CHECK(res.dual_residual <= 1e-9);
    // strong duality
    double by = res.dual[0] * b[0] + res.dual[1] * b[1];
    CHECK(by == doctest::Approx(12.0));
}

TEST_CASE("minimization over the unit simplex") {
    DenseMatrix A = from_rows({{1, 1, 1}});
    std::vector<double> b = {1}, c = {5, 2, 4};
    LpResult res = lp_solve(LpSense::Minimize, c, A, b);
    REQUIRE(res.status == LpStatus::Optimal);
    CHECK(res.objective == doctest::Approx(2.0));
    CHECK(res.x[1] == doctest::Approx(1.0));
}

TEST_CASE("contradictory equalities are infeasible") {
    DenseMatrix A = from_rows({{1, 1}, {1, 1}});
    std::vector<double> b = {1, 2}, c = {1, 0};
    CHECK(lp_solve(LpSense::Minimize, c, A, b).status == LpStatus::Infeasible);
}

TEST_CASE("redundant equalities are harmless") {
    DenseMatrix A = from_rows({{1, 1}, {1, 1}, {2, 2}});
    std::vector<double> b = {1, 1, 2}, c = {-1, 1};
    LpResult res = lp_solve(LpSense::Minimize, c, A, b);
    REQUIRE(res.status == LpStatus::Optimal);
    CHECK(res.objective == doctest::Approx(-1.0));
    CHECK(res.x[0] == doctest::Approx(1.0));
}

TEST_CASE("free directions are reported as rays") {
    // max x1 with x1 - x2 = 0: the diagonal runs off to infinity
    DenseMatrix A = from_rows({{1, -1}});
    std::vector<double> b = {0}, c = {1, 0};
    LpResult res = lp_solve(LpSense::Maximize, c, A, b);
    REQUIRE(res.status == LpStatus::Unbounded);
    REQUIRE(res.ray.size() == 2);
    // the ray stays in the feasible cone and improves the objective
    double ad = res.ray[0] - res.ray[1];
    CHECK(std::abs(ad) <= 1e-9);
    CHECK(res.ray[0] >= -1e-12);
    CHECK(res.ray[1] >= -1e-12);
    CHECK(res.ray[0] * c[0] + res.ray[1] * c[1] > 1e-9);
}

TEST_CASE("negative right-hand sides are handled by row flips") {
    // -x1 - x2 = -3 is x1 + x2 = 3
    DenseMatrix A = from_rows({{-1, -1}});
    std::vector<double> b = {-3}, c = {1, 2};
    LpResult res = lp_solve(LpSense::Minimize, c, A, b);
    REQUIRE(res.status == LpStatus::Optimal);
    CHECK(res.objective == doctest::Approx(3.0));
    // the reported dual must price the original row, not the flipped one:
    // min c^T x with a_1 = (-1,-1) has y_1 = -1 (b y = 3)
    CHECK(res.dual[0] == doctest::Approx(-1.0));
}

TEST_CASE("degenerate vertices do not cycle under Bland's rule") {
    // classic degeneracy: many bases share the optimal vertex
    DenseMatrix A = from_rows({{1, 1, 1, 0, 0}, {1, 0, 0, 1, 0}, {0, 1, 0, 0, 1}});
    std::vector<double> b = {1, 1, 0}, c = {-1, -2, 0, 0, 0};
    LpResult res = lp_solve(LpSense::Minimize, c, A, b);
    REQUIRE(res.status == LpStatus::Optimal);
    CHECK(res.objective == doctest::Approx(-1.0));
    CHECK(res.iterations < 100);
}

TEST_CASE("random bounded programs match exhaustive vertex enumeration") {
    std::uint64_t state = 2024;
    auto rnd = [&]() { return mix64(++state); };
    int done = 0;
    while (done < 120) {
        std::size_t m = 1 + rnd() % 5;
        std::size_t n = m + 1 + rnd() % (12 - m);
        DenseMatrix A(m, n);
        // unit-mass first row keeps the feasible set inside the simplex, so
        // the program is bounded and the vertex scan is a complete oracle
        for (std::size_t j = 0; j < n; ++j) A(0, j) = 1.0;
        for (std::size_t r = 1; r < m; ++r)
            for (std::size_t j = 0; j < n; ++j)
                A(r, j) = static_cast<double>(static_cast<std::int64_t>(rnd() % 7) - 3);
        if (!full_row_rank(A)) continue;

        // b = A x0 for a random simplex point x0 guarantees feasibility
        std::vector<double> x0(n, 0.0);
        double total = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            x0[j] = static_cast<double>(rnd() % 8);
            total += x0[j];
        }
        if (total == 0.0) continue;
        for (std::size_t j = 0; j < n; ++j) x0[j] /= total;
        std::vector<double> b = A.multiply(x0);

        std::vector<double> c(n);
        for (std::size_t j = 0; j < n; ++j)
            c[j] = static_cast<double>(static_cast<std::int64_t>(rnd() % 21) - 10);

        VertexScan scan = enumerate_vertices(A, b, c);
        REQUIRE(scan.feasible);

        LpResult lo = lp_solve(LpSense::Minimize, c, A, b);
        REQUIRE(lo.status == LpStatus::Optimal);
        CHECK(lo.objective ==
              doctest::Approx(scan.min_obj).epsilon(1e-8).scale(1.0 + std::abs(scan.min_obj)));
        CHECK(lo.primal_residual <= 1e-9);
        CHECK(lo.dual_residual <= 1e-9);
        // strong duality against the returned multipliers
        double by = 0.0;
        for (std::size_t r = 0; r < m; ++r) by += lo.dual[r] * b[r];
        CHECK(by == doctest::Approx(lo.objective).epsilon(1e-7).scale(1.0 + std::abs(by)));

        LpResult hi = lp_solve(LpSense::Maximize, c, A, b);
        REQUIRE(hi.status == LpStatus::Optimal);
        CHECK(hi.objective ==
              doctest::Approx(scan.max_obj).epsilon(1e-8).scale(1.0 + std::abs(scan.max_obj)));
        ++done;
    }
}

TEST_CASE("random infeasible programs are flagged") {
    std::uint64_t state = 555;
    auto rnd = [&]() { return mix64(++state); };
    int done = 0, seen_infeasible = 0;
    while (done < 40) {
        std::size_t m = 2 + rnd() % 4;
        std::size_t n = m + 1 + rnd() % (12 - m);
        DenseMatrix A(m, n);
        for (std::size_t j = 0; j < n; ++j) A(0, j) = 1.0;
        for (std::size_t r = 1; r < m; ++r)
            for (std::size_t j = 0; j < n; ++j)
                A(r, j) = static_cast<double>(static_cast<std::int64_t>(rnd() % 7) - 3);
        if (!full_row_rank(A)) continue;
        std::vector<double> b(m);
        b[0] = 1.0;
        for (std::size_t r = 1; r < m; ++r)
            b[r] = static_cast<double>(static_cast<std::int64_t>(rnd() % 19) - 9);
        std::vector<double> c(n, 1.0);

        VertexScan scan = enumerate_vertices(A, b, c);
        LpResult res = lp_solve(LpSense::Minimize, c, A, b);
        if (scan.feasible) {
            REQUIRE(res.status == LpStatus::Optimal);
        } else {
            REQUIRE(res.status == LpStatus::Infeasible);
            ++seen_infeasible;
        }
        ++done;
    }
    CHECK(seen_infeasible > 5);  // the batch actually exercised the branch
}

TEST_CASE("exact rational solves agree with the double path") {
    std::uint64_t state = 777;
    auto rnd = [&]() { return mix64(++state); };
    int done = 0;
    while (done < 15) {
        std::size_t m = 1 + rnd() % 3;
        std::size_t n = m + 1 + rnd() % 6;
        DenseMatrix A(m, n);
        for (std::size_t j = 0; j < n; ++j) A(0, j) = 1.0;
        for (std::size_t r = 1; r < m; ++r)
            for (std::size_t j = 0; j < n; ++j)
                A(r, j) = static_cast<double>(static_cast<std::int64_t>(rnd() % 5) - 2);
        if (!full_row_rank(A)) continue;
        std::vector<double> x0(n, 0.0);
        double total = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            x0[j] = static_cast<double>(rnd() % 4);
            total += x0[j];
        }
        if (total == 0.0) continue;
        for (std::size_t j = 0; j < n; ++j) x0[j] /= total;
        std::vector<double> b = A.multiply(x0);
        std::vector<double> c(n);
        for (std::size_t j = 0; j < n; ++j)
            c[j] = static_cast<double>(static_cast<std::int64_t>(rnd() % 11) - 5);

        LpResult dbl = lp_solve(LpSense::Minimize, c, A, b);
        LpResult exa = lp_solve_exact(LpSense::Minimize, c, A, b);
        REQUIRE(dbl.status == LpStatus::Optimal);
        REQUIRE(exa.status == LpStatus::Optimal);
        CHECK(std::abs(dbl.objective - exa.objective) <=
              1e-9 * (1.0 + std::abs(exa.objective)));
        ++done;
    }
}

TEST_CASE("exact path rejects oversized programs") {
    DenseMatrix A(1, 40, 1.0);
    std::vector<double> b = {1.0};
    std::vector<double> c(40, 1.0);
    CHECK_THROWS_AS(lp_solve_exact(LpSense::Minimize, c, A, b), std::invalid_argument);
}

TEST_CASE("dimension mismatches are rejected") {
    DenseMatrix A = from_rows({{1, 1}});
    std::vector<double> b = {1, 2};  // wrong length
    std::vector<double> c = {1, 1};
    CHECK_THROWS_AS(lp_solve(LpSense::Minimize, c, A, b), std::invalid_argument);
    std::vector<double> b2 = {1};
    std::vector<double> c2 = {1};  // wrong length
    CHECK_THROWS_AS(lp_solve(LpSense::Minimize, c2, A, b2), std::invalid_argument);
}
