#pragma once

// Scalar-generic dense two-phase simplex shared by the double and the exact
// rational entry points.  Not installed; include only from lp*.cpp.

#include <cstddef>
#include <vector>

namespace ossk::detail {

enum class SimplexStatus { Optimal, Infeasible, Unbounded, IterationLimit };

template <class Scalar>
struct SimplexResultT {
    SimplexStatus status = SimplexStatus::IterationLimit;
    Scalar objective{};
    std::vector<Scalar> x;
    std::vector<Scalar> y;
    std::vector<Scalar> ray;
    long iterations = 0;
};

// minimize c^T x subject to A x = b, x >= 0; A is m x n row-major
template <class Scalar>
class DenseSimplex {
public:
    DenseSimplex(std::size_t m, std::size_t n, std::vector<Scalar> a, std::vector<Scalar> b,
                 std::vector<Scalar> c, Scalar tol)
        : m_(m), n_(n), width_(n + m + 1), tol_(tol), c_(std::move(c)),
          tab_(m * (n + m + 1), Scalar(0)), basis_(m), usable_(n + m, true), flipped_(m, false) {
        for (std::size_t r = 0; r < m_; ++r) {
            bool flip = b[r] < Scalar(0);
            flipped_[r] = flip;
            for (std::size_t j = 0; j < n_; ++j) at(r, j) = flip ? -a[r * n_ + j] : a[r * n_ + j];
            at(r, n_ + r) = Scalar(1);
            rhs(r) = flip ? -b[r] : b[r];
            basis_[r] = n_ + r;
        }
    }

    SimplexResultT<Scalar> solve() {
        SimplexResultT<Scalar> out;

        // phase one: minimize the artificial mass
        reduced_.assign(n_ + m_, Scalar(0));
        for (std::size_t j = 0; j < n_; ++j) {
            Scalar colsum(0);
            for (std::size_t r = 0; r < m_; ++r) colsum += at(r, j);
            reduced_[j] = -colsum;
        }
        if (!iterate(out)) return out;

        Scalar infeasibility(0);
        for (std::size_t r = 0; r < m_; ++r)
            if (basis_[r] >= n_) infeasibility += rhs(r);
        if (infeasibility > feasibility_slack()) {
            out.status = SimplexStatus::Infeasible;
            out.objective = infeasibility;
            return out;
        }

        // pivot leftover artificials out where a structural pivot exists; a
        // row with no such pivot is a dependent constraint and its artificial
        // stays basic at zero with an all-zero structural row
        for (std::size_t r = 0; r < m_; ++r) {
            if (basis_[r] < n_) continue;
            if (rhs(r) < Scalar(0)) rhs(r) = Scalar(0);
            for (std::size_t j = 0; j < n_; ++j) {
                Scalar mag = at(r, j) < Scalar(0) ? -at(r, j) : at(r, j);
                if (mag > tol_) {
                    pivot(r, j);
                    break;
                }
            }
        }
        for (std::size_t j = n_; j < n_ + m_; ++j) usable_[j] = false;

        // phase two: the real objective
        reduced_.assign(n_ + m_, Scalar(0));
        for (std::size_t j = 0; j < n_ + m_; ++j) {
            Scalar d = j < n_ ? c_[j] : Scalar(0);
            for (std::size_t r = 0; r < m_; ++r)
                if (basis_[r] < n_) d -= c_[basis_[r]] * at(r, j);
            reduced_[j] = d;
        }
        if (!iterate(out)) return out;

        out.status = SimplexStatus::Optimal;
        out.x.assign(n_, Scalar(0));
        Scalar obj(0);
        for (std::size_t r = 0; r < m_; ++r) {
            if (basis_[r] < n_) {
                out.x[basis_[r]] = rhs(r);
                obj += c_[basis_[r]] * rhs(r);
            }
        }
        out.objective = obj;
        out.y.assign(m_, Scalar(0));
        for (std::size_t r0 = 0; r0 < m_; ++r0) {
            Scalar y(0);
            for (std::size_t r = 0; r < m_; ++r)
                if (basis_[r] < n_) y += c_[basis_[r]] * at(r, n_ + r0);
            out.y[r0] = flipped_[r0] ? -y : y;
        }
        return out;
    }

private:
    Scalar& at(std::size_t r, std::size_t j) { return tab_[r * width_ + j]; }
    Scalar& rhs(std::size_t r) { return tab_[r * width_ + n_ + m_]; }

    Scalar feasibility_slack() const {
        if (tol_ == Scalar(0)) return Scalar(0);
        Scalar scale(1);
        return tol_ * Scalar(100) * scale;
    }

    void pivot(std::size_t prow, std::size_t pcol) {
        Scalar piv = at(prow, pcol);
        for (std::size_t j = 0; j < width_; ++j) tab_[prow * width_ + j] /= piv;
        for (std::size_t r = 0; r < m_; ++r) {
            if (r == prow) continue;
            Scalar f = at(r, pcol);
            if (f == Scalar(0)) continue;
            for (std::size_t j = 0; j < width_; ++j) tab_[r * width_ + j] -= f * tab_[prow * width_ + j];
            at(r, pcol) = Scalar(0);
        }
        Scalar f = reduced_[pcol];
        if (f != Scalar(0)) {
            for (std::size_t j = 0; j < n_ + m_; ++j) reduced_[j] -= f * at(prow, j);
            reduced_[pcol] = Scalar(0);
        }
        if (basis_[prow] >= n_) usable_[basis_[prow]] = false;
        basis_[prow] = pcol;
    }

    // Bland: entering = least usable index with an improving reduced cost,
    // leaving = least basis index among the minimum ratios
    bool iterate(SimplexResultT<Scalar>& out) {
        const long limit = 2000000;
        std::vector<char> is_basic(n_ + m_, 0);
        for (std::size_t r = 0; r < m_; ++r) is_basic[basis_[r]] = 1;
        while (true) {
            if (++out.iterations > limit) {
                out.status = SimplexStatus::IterationLimit;
                return false;
            }
            std::size_t enter = n_ + m_;
            for (std::size_t j = 0; j < n_ + m_; ++j) {
                if (!usable_[j] || is_basic[j]) continue;
                if (reduced_[j] < -tol_) {
                    enter = j;
                    break;
                }
            }
            if (enter == n_ + m_) return true;

            std::size_t leave = m_;
            Scalar best_ratio(0);
            for (std::size_t r = 0; r < m_; ++r) {
                if (at(r, enter) > tol_) {
                    Scalar ratio = rhs(r) / at(r, enter);
                    if (leave == m_ || ratio < best_ratio ||
                        (ratio == best_ratio && basis_[r] < basis_[leave])) {
                        leave = r;
                        best_ratio = ratio;
                    }
                }
            }
            if (leave == m_) {
                out.status = SimplexStatus::Unbounded;
                out.ray.assign(n_, Scalar(0));
                if (enter < n_) out.ray[enter] = Scalar(1);
                for (std::size_t r = 0; r < m_; ++r)
                    if (basis_[r] < n_) out.ray[basis_[r]] = -at(r, enter);
                return false;
            }
            is_basic[basis_[leave]] = 0;
            is_basic[enter] = 1;
            pivot(leave, enter);
        }
    }

    std::size_t m_, n_, width_;
    Scalar tol_;
    std::vector<Scalar> c_;
    std::vector<Scalar> tab_;
    std::vector<Scalar> reduced_;
    std::vector<std::size_t> basis_;
    std::vector<char> usable_;
    std::vector<char> flipped_;
};

}  // namespace ossk::detail
