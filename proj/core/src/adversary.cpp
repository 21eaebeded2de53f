#include "ossk/adversary.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "ossk/hashing.hpp"

namespace ossk {

namespace {

constexpr double kTol = 1e-9;

// orthonormal basis of the row span (modified Gram-Schmidt with one
// re-orthogonalization pass; rows below the cutoff are dropped)
std::vector<std::vector<double>> row_basis(const DenseMatrix& A) {
    std::vector<std::vector<double>> basis;
    const std::size_t n = A.cols();
    for (std::size_t r = 0; r < A.rows(); ++r) {
        std::vector<double> v(n);
        double scale = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            v[j] = A(r, j);
            scale = std::max(scale, std::abs(v[j]));
        }
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto& u : basis) {
                double dot = 0.0;
                for (std::size_t j = 0; j < n; ++j) dot += u[j] * v[j];
                for (std::size_t j = 0; j < n; ++j) v[j] -= dot * u[j];
            }
        }
        double nrm = 0.0;
        for (double x : v) nrm += x * x;
        nrm = std::sqrt(nrm);
        if (nrm > 1e-12 * (1.0 + scale)) {
            for (double& x : v) x /= nrm;
            basis.push_back(std::move(v));
        }
    }
    return basis;
}

std::vector<double> uniform_mass_vector(std::size_t n) {
    return std::vector<double>(n, 1.0 / static_cast<double>(n));
}

LpResult solve_or_throw_on_failure(LpSense sense, std::span<const double> c, const DenseMatrix& A,
                                   std::span<const double> b, const char* what) {
    LpResult res = lp_solve(sense, c, A, b);
    if (res.status == LpStatus::NumericalFailure)
        throw CertificationError(std::string(what) + ": simplex residuals out of tolerance");
    return res;
}

}  // namespace

FoolingCertificate fool_no_under(const DenseMatrix& A, std::size_t index) {
    const std::size_t m = A.rows();
    const std::size_t n = A.cols();
    if (index >= n) throw std::invalid_argument("fool_no_under: index outside universe");

    std::vector<double> v = uniform_mass_vector(n);
    std::vector<double> b = A.multiply(v);

    // one extra row x_index + slack = 1 implements the unit-mass cap
    DenseMatrix ext(m + 1, n + 1, 0.0);
    for (std::size_t r = 0; r < m; ++r)
        for (std::size_t j = 0; j < n; ++j) ext(r, j) = A(r, j);
    ext(m, index) = 1.0;
    ext(m, n) = 1.0;
    b.push_back(1.0);

    std::vector<double> c(n + 1, 0.0);
    c[index] = 1.0;

    LpResult res = solve_or_throw_on_failure(LpSense::Maximize, c, ext, b, "fool_no_under");
    if (res.status != LpStatus::Optimal)
        throw CertificationError("fool_no_under: capped program must be solvable, got status " +
                                 std::to_string(static_cast<int>(res.status)));

    FoolingCertificate cert;
    cert.kind = FoolKind::NoUnder;
    cert.index = index;
    cert.x.assign(res.x.begin(), res.x.begin() + n);
    cert.value = res.objective;
    cert.saturated = res.objective >= 1.0 - kTol;
    if (cert.saturated) cert.value = 1.0;

    // multiplier of the cap row; only a slack cap leaves the plain dual valid
    double cap_multiplier = res.dual.back();
    if (std::abs(cap_multiplier) <= kTol) {
        std::vector<double> y(res.dual.begin(), res.dual.begin() + m);
        cert.dual = A.multiply_transposed(y);
    }
    return cert;
}

NoOverAttack fool_no_over(const DenseMatrix& A, double T) {
    const std::size_t n = A.cols();
    if (T < 1.0 || T > static_cast<double>(n) / 2.0)
        throw std::invalid_argument("fool_no_over: requires 1 <= T <= n/2");

    NoOverAttack out;
    out.T = T;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> v(n, 1.0 / T);
        v[i] = 1.0;
        std::vector<double> b = A.multiply(v);
        std::vector<double> c(n, 0.0);
        c[i] = 1.0;

        LpResult res = solve_or_throw_on_failure(LpSense::Minimize, c, A, b, "fool_no_over");
        if (res.status != LpStatus::Optimal)
            throw CertificationError("fool_no_over: program with feasible point v must be solvable");

        FoolingCertificate cert;
        cert.kind = FoolKind::NoOver;
        cert.index = i;
        cert.x = res.x;
        cert.value = res.objective;
        cert.T = T;

        double bmax = 0.0;
        for (double bv : b) bmax = std::max(bmax, std::abs(bv));
        if (res.objective <= kTol * (1.0 + bmax)) out.fooled.push_back(i);
        out.certificates.push_back(std::move(cert));
    }
    return out;
}

std::optional<std::vector<double>> dual_certificate_under(const DenseMatrix& A, std::size_t index,
                                                          double T) {
    const std::size_t n = A.cols();
    if (T < 1.0 || T > static_cast<double>(n))
        throw std::invalid_argument("dual_certificate_under: requires 1 <= T <= n");

    FoolingCertificate cert = fool_no_under(A, index);
    if (cert.value > T / static_cast<double>(n) + kTol) return std::nullopt;
    if (!cert.dual) return std::nullopt;

    const std::vector<double>& z = *cert.dual;
    double sum = 0.0;
    for (double v : z) sum += v;
    if (sum > T + kTol * static_cast<double>(n)) return std::nullopt;
    for (std::size_t j = 0; j < n; ++j) {
        double floor_j = j == index ? 1.0 : 0.0;
        if (z[j] < floor_j - kTol) return std::nullopt;
    }
    return z;
}

CertificateCheck verify_certificate(const DenseMatrix& A, const FoolingCertificate& cert,
                                    double tol) {
    const std::size_t n = A.cols();
    CertificateCheck check{};
    if (cert.x.size() != n) throw std::invalid_argument("verify_certificate: bad witness length");

    std::vector<double> v;
    if (cert.kind == FoolKind::NoUnder) {
        v = uniform_mass_vector(n);
    } else {
        if (!(cert.T >= 1.0)) throw std::invalid_argument("verify_certificate: missing T");
        v.assign(n, 1.0 / cert.T);
        v[cert.index] = 1.0;
    }
    std::vector<double> lhs = A.multiply(cert.x);
    std::vector<double> rhs = A.multiply(v);
    double worst = 0.0;
    for (std::size_t r = 0; r < A.rows(); ++r) worst = std::max(worst, std::abs(lhs[r] - rhs[r]));
    check.feasibility = worst;

    double neg = 0.0;
    for (double x : cert.x) neg = std::min(neg, x);
    check.negativity = neg;

    double fnorm = A.frobenius_norm();
    check.ok = check.feasibility <= tol * std::max(1.0, fnorm) && check.negativity >= -tol;

    if (cert.dual) {
        const std::vector<double>& z = *cert.dual;
        if (z.size() != n) throw std::invalid_argument("verify_certificate: bad dual length");
        double margin = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            double floor_j = j == cert.index ? 1.0 : 0.0;
            margin = std::max(margin, floor_j - z[j]);
        }
        check.dual_margin = margin;

        std::vector<double> resid = z;
        for (const auto& u : row_basis(A)) {
            double dot = 0.0;
            for (std::size_t j = 0; j < n; ++j) dot += u[j] * resid[j];
            for (std::size_t j = 0; j < n; ++j) resid[j] -= dot * u[j];
        }
        double rmax = 0.0;
        for (double r : resid) rmax = std::max(rmax, std::abs(r));
        double zmax = 0.0;
        for (double zv : z) zmax = std::max(zmax, std::abs(zv));
        check.rowspan_residual = rmax;

        double sum = 0.0;
        for (double zv : z) sum += zv;
        check.dual_row_sum = sum;

        check.ok = check.ok && margin <= tol && rmax <= tol * 10.0 * (1.0 + zmax);
    }
    return check;
}

AttackRecord attack_sketch(const std::function<DenseMatrix(std::size_t)>& builder, std::size_t n) {
    DenseMatrix A = builder(n);
    if (A.cols() != n) throw std::invalid_argument("attack_sketch: builder returned wrong width");

    AttackRecord rec;
    rec.n = n;
    rec.total_rows = A.rows();
    rec.T = static_cast<double>(n) / static_cast<double>(A.rows());
    rec.true_value = 1.0 / static_cast<double>(n);
    rec.per_index_value.resize(n);

    double best = -1.0;
    for (std::size_t i = 0; i < n; ++i) {
        FoolingCertificate cert = fool_no_under(A, i);
        CertificateCheck check = verify_certificate(A, cert);
        if (!check.ok)
            throw CertificationError("attack_sketch: certificate for index " + std::to_string(i) +
                                     " failed verification");
        rec.per_index_value[i] = cert.value;
        if (cert.value > best) {
            best = cert.value;
            rec.best_index = i;
            rec.best = std::move(cert);
        }
    }
    rec.forced_estimate = best;
    rec.gap = best - rec.true_value;
    return rec;
}

DenseMatrix count_min_matrix(std::size_t n, std::uint32_t k, std::uint32_t t, std::uint64_t seed) {
    HashFamily hash(seed, t, k);
    DenseMatrix A(static_cast<std::size_t>(k) * t, n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::uint32_t l = 0; l < t; ++l)
            A(static_cast<std::size_t>(l) * k + hash.bucket(l, i), i) = 1.0;
    return A;
}

}  // namespace ossk
