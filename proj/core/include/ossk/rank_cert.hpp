#pragma once

#include <cstddef>
#include <vector>

#include "ossk/dense_matrix.hpp"

namespace ossk {

// trace(R)^2 / (2*|R|_F^2): a lower bound on rank(R) for any real square R.
// Symmetrizing S = (R + R^T)/2 keeps the trace, cannot grow the Frobenius
// norm, and has rank at most 2*rank(R); Cauchy-Schwarz on the eigenvalues of
// S does the rest.  Zero matrix gives 0.
double rank_bound_trace_frobenius(const DenseMatrix& R);

// One dyadic pivot band of the greedy certificate: the surviving row/column
// pairing, its trace after making the diagonal positive, and the bound that
// band certifies.
struct GreedyRankCertificate {
    double bound = 0.0;
    double level = 0.0;  // band holds pivots with |value| in [level, 2*level)
    std::size_t band_size = 0;
    std::vector<std::size_t> rows;
    std::vector<std::size_t> cols;
    double trace = 0.0;
    double frob_sq = 0.0;
};

// Greedy max-magnitude pivoting pairs up rows and columns; pivots are then
// bucketed into dyadic magnitude bands.  Restricting M to one band's pairs,
// flipping row signs so the paired diagonal is positive, and applying the
// trace/Frobenius bound certifies a rank lower bound; the best band wins.
GreedyRankCertificate greedy_rank_certificate(const DenseMatrix& M);

}  // namespace ossk
