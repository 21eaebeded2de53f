#include "ossk/rank_cert.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ossk {

double rank_bound_trace_frobenius(const DenseMatrix& R) {
    if (R.rows() != R.cols()) throw std::invalid_argument("rank bound needs a square matrix");
    double f2 = 0.0;
    for (double v : R.data()) f2 += v * v;
    if (f2 == 0.0) return 0.0;
    double tr = R.trace();
    return tr * tr / (2.0 * f2);
}

GreedyRankCertificate greedy_rank_certificate(const DenseMatrix& M) {
    if (M.rows() != M.cols()) throw std::invalid_argument("rank certificate needs a square matrix");
    const std::size_t n = M.rows();

    struct Pivot {
        std::size_t row, col;
        double value;
    };
    std::vector<Pivot> pivots;
    std::vector<char> row_used(n, 0), col_used(n, 0);
    for (std::size_t step = 0; step < n; ++step) {
        double best = 0.0;
        std::size_t bi = n, bj = n;
        for (std::size_t i = 0; i < n; ++i) {
            if (row_used[i]) continue;
            for (std::size_t j = 0; j < n; ++j) {
                if (col_used[j]) continue;
                double mag = std::abs(M(i, j));
                if (mag > best) {
                    best = mag;
                    bi = i;
                    bj = j;
                }
            }
        }
        if (bi == n) break;  // only zeros left
        row_used[bi] = 1;
        col_used[bj] = 1;
        pivots.push_back({bi, bj, M(bi, bj)});
    }

    GreedyRankCertificate out;
    if (pivots.empty()) return out;

    // dyadic bands keyed by floor(log2 |pivot|)
    std::vector<int> exponents;
    for (const Pivot& p : pivots)
        exponents.push_back(static_cast<int>(std::floor(std::log2(std::abs(p.value)))));
    std::vector<int> levels = exponents;
    std::sort(levels.begin(), levels.end());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

    for (int level : levels) {
        std::vector<std::size_t> members;
        for (std::size_t t = 0; t < pivots.size(); ++t)
            if (exponents[t] == level) members.push_back(t);

        // row sign flips make the paired diagonal positive and leave the
        // Frobenius norm alone, so only the trace needs the signs
        double trace = 0.0;
        for (std::size_t t : members) trace += std::abs(pivots[t].value);
        double f2 = 0.0;
        for (std::size_t a : members)
            for (std::size_t b : members) {
                double v = M(pivots[a].row, pivots[b].col);
                f2 += v * v;
            }
        double bound = trace * trace / (2.0 * f2);
        if (bound > out.bound) {
            out.bound = bound;
            out.level = std::ldexp(1.0, level);
            out.band_size = members.size();
            out.trace = trace;
            out.frob_sq = f2;
            out.rows.clear();
            out.cols.clear();
            for (std::size_t t : members) {
                out.rows.push_back(pivots[t].row);
                out.cols.push_back(pivots[t].col);
            }
        }
    }
    return out;
}

}  // namespace ossk
