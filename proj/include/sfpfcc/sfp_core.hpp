#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "sfpfcc/fourier_payoff.hpp"
#include "sfpfcc/levy_models.hpp"

namespace sfpfcc {

/// Degrees of the numerator P, denominator Q and the log multipliers L_s.
struct SfpDegrees {
    int numerator = 0;
    int denominator = 0;
    std::vector<int> log_degrees;

    /// Number of series coefficients beyond c_0 the fit consumes.
    int budget() const {
        return numerator + denominator + std::accumulate(log_degrees.begin(), log_degrees.end(), 0)
               + static_cast<int>(log_degrees.size());
    }
};

/// N = round(0.4 U); the rest is split into equal log degrees with the
/// remainder going to the denominator.
inline SfpDegrees allocate_degrees(int U, int jump_count) {
    if (jump_count < 0) throw DomainError("allocate_degrees: negative jump count");
    if (U < jump_count + 3) throw DomainError("allocate_degrees: U must be at least S + 3");
    SfpDegrees deg;
    deg.numerator = static_cast<int>(std::lround(0.4 * U));
    const int rest = U - deg.numerator - jump_count;
    const int each = rest / (jump_count + 1);
    deg.log_degrees.assign(jump_count, each);
    deg.denominator = rest - jump_count * each;
    return deg;
}

struct LogTerm {
    cplx jump;
    std::vector<cplx> coeffs;
};

namespace detail {

inline cplx horner(std::span<const cplx> c, cplx z) {
    cplx acc = 0.0;
    for (std::size_t k = c.size(); k-- > 0;) acc = acc * z + c[k];
    return acc;
}

inline cplx horner_derivative(std::span<const cplx> c, cplx z) {
    cplx acc = 0.0;
    for (std::size_t k = c.size(); k-- > 1;) acc = acc * z + static_cast<double>(k) * c[k];
    return acc;
}

/// Taylor coefficients of log(1 - z/eps) up to z^U.
inline std::vector<cplx> log_series(cplx eps, int U) {
    std::vector<cplx> lam(U + 1, 0.0);
    const cplx inv = 1.0 / eps;
    cplx pw = 1.0;
    for (int i = 1; i <= U; ++i) {
        pw *= inv;
        lam[i] = -pw / static_cast<double>(i);
    }
    return lam;
}

inline double max_abs(std::span<const cplx> v) {
    double m = 0.0;
    for (const auto& x : v) m = std::max(m, std::abs(x));
    return m;
}

}  // namespace detail

/// Rational-plus-logarithmic surrogate
///   F(z) = (P(z) + sum_s L_s(z) log(1 - z/eps_s)) / Q(z)
/// of a Fourier series on the unit circle z = exp(i 2 pi x/(d - c)).
class SFPApproximant {
public:
    SFPApproximant() = default;

    SFPApproximant(std::vector<cplx> p, std::vector<cplx> q, std::vector<LogTerm> logs, TruncationInterval interval,
                   double residual = 0.0)
        : p_(std::move(p)), q_(std::move(q)), logs_(std::move(logs)), interval_(interval), residual_(residual) {
        if (q_.empty() || detail::max_abs(q_) == 0.0) throw ConditioningError("SFP denominator is identically zero");
        qmax_ = detail::max_abs(q_);
        for (const auto& t : logs_) {
            if (std::abs(std::abs(t.jump) - 1.0) > 1e-12) throw DomainError("SFP jump points must lie on the unit circle");
            angles_.push_back(std::arg(t.jump));
        }
    }

    /// F at an arbitrary complex point (principal log branch).
    cplx evaluate(cplx z) const {
        cplx num = detail::horner(p_, z);
        for (const auto& t : logs_) num += detail::horner(t.coeffs, z) * std::log(1.0 - z / t.jump);
        return num / detail::horner(q_, z);
    }

    cplx evaluate_derivative(cplx z) const {
        cplx num = detail::horner(p_, z);
        cplx dnum = detail::horner_derivative(p_, z);
        for (const auto& t : logs_) {
            const cplx lg = std::log(1.0 - z / t.jump);
            const cplx l = detail::horner(t.coeffs, z);
            num += l * lg;
            dnum += detail::horner_derivative(t.coeffs, z) * lg - l / (t.jump - z);
        }
        const cplx q = detail::horner(q_, z);
        const cplx dq = detail::horner_derivative(q_, z);
        return (dnum * q - num * dq) / (q * q);
    }

    /// Re F(z(x)); throws ConditioningError near a pole on the circle.
    double operator()(double x) const {
        const cplx z = point(x);
        check_pole(z, x);
        return evaluate(z).real();
    }

    /// d/dx Re F(z(x)).
    double derivative(double x) const {
        const cplx z = point(x);
        check_pole(z, x);
        const double w = interval_.frequency(1);
        return (evaluate_derivative(z) * cplx(0.0, w) * z).real();
    }

    Evaluation evaluate_flagged(double x) const { return {(*this)(x), !interval_.contains(x)}; }

    /// Point on the unit circle for x, nudged 1e-12 rad off any jump point:
    /// inward at the interval ends, to the left elsewhere.
    cplx point(double x) const {
        double theta = interval_.frequency(1) * x;
        constexpr double nudge = 1e-12;
        for (double a : angles_) {
            const double diff = std::remainder(theta - a, 2.0 * std::numbers::pi);
            if (std::abs(diff) < nudge) {
                const double base = theta - diff;
                theta = (base <= -std::numbers::pi + nudge) ? base + nudge : base - nudge;
            }
        }
        return std::polar(1.0, theta);
    }

    const std::vector<cplx>& numerator() const { return p_; }
    const std::vector<cplx>& denominator() const { return q_; }
    const std::vector<LogTerm>& logs() const { return logs_; }
    const TruncationInterval& interval() const { return interval_; }
    /// Relative residual of the order conditions recorded at fit time.
    double residual() const { return residual_; }

private:
    void check_pole(cplx z, double x) const {
        if (std::abs(detail::horner(q_, z)) < 1e-13 * qmax_)
            throw ConditioningError("SFP denominator vanishes near x = " + std::to_string(x), x);
    }

    std::vector<cplx> p_{0.0};
    std::vector<cplx> q_{1.0};
    std::vector<LogTerm> logs_;
    std::vector<double> angles_;
    TruncationInterval interval_{-1.0, 1.0};
    double residual_ = 0.0;
    double qmax_ = 1.0;
};

/// Fit to c_0..c_U: solve the rows z^{N+1}..z^U of f Q - P - sum L_s log(1 - z/eps_s) = 0
/// for (q, l) with q_0 = 1, then read P off the rows 0..N.
inline SFPApproximant sfp_fit(std::span<const cplx> series, std::span<const cplx> jumps, const SfpDegrees& deg,
                              const TruncationInterval& interval) {
    const int U = static_cast<int>(series.size()) - 1;
    const int N = deg.numerator;
    const int M = deg.denominator;
    const int S = static_cast<int>(jumps.size());
    if (U < 0) throw DomainError("sfp_fit: empty series");
    if (static_cast<int>(deg.log_degrees.size()) != S) throw DomainError("sfp_fit: one log degree per jump required");
    if (N < 0 || M < 0 || std::any_of(deg.log_degrees.begin(), deg.log_degrees.end(), [](int n) { return n < 0; }))
        throw DomainError("sfp_fit: negative degree");
    if (deg.budget() != U) throw DomainError("sfp_fit: degrees must consume exactly the series length");
    for (const auto& e : jumps)
        if (std::abs(std::abs(e) - 1.0) > 1e-12) throw DomainError("sfp_fit: jump points must have unit modulus");

    std::vector<std::vector<cplx>> lam(S);
    for (int s = 0; s < S; ++s) lam[s] = detail::log_series(jumps[s], U);

    const int rows = U - N;
    int nl = 0;
    for (int n : deg.log_degrees) nl += n + 1;
    const int unknowns = M + nl;

    auto coef = [&](int i) { return i >= 0 ? series[i] : cplx(0.0); };
    auto lamc = [&](int s, int i) { return i >= 1 ? lam[s][i] : cplx(0.0); };

    Eigen::MatrixXcd A(rows, unknowns);
    Eigen::VectorXcd rhs(rows);
    for (int r = 0; r < rows; ++r) {
        const int j = N + 1 + r;
        rhs(r) = -coef(j);
        for (int m = 1; m <= M; ++m) A(r, m - 1) = coef(j - m);
        int col = M;
        for (int s = 0; s < S; ++s)
            for (int n = 0; n <= deg.log_degrees[s]; ++n) A(r, col++) = -lamc(s, j - n);
    }

    // balance the series block against the log block
    double sq = 1.0, sl = 1.0;
    if (M > 0) {
        const double f = A.leftCols(M).norm();
        if (f > 0.0) sq = 1.0 / f;
    }
    if (nl > 0) {
        const double f = A.rightCols(nl).norm();
        if (f > 0.0) sl = 1.0 / f;
    }
    Eigen::VectorXd colscale(unknowns);
    colscale.head(M).setConstant(sq);
    colscale.tail(nl).setConstant(sl);
    const Eigen::MatrixXcd As = A * colscale.asDiagonal();

    Eigen::VectorXcd x = Eigen::VectorXcd::Zero(unknowns + 1);
    x(0) = 1.0;
    if (unknowns > 0) {
        Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXcd> cod;
        cod.setThreshold(1e-13);
        cod.compute(As);
        const Eigen::VectorXcd y = cod.solve(rhs);
        const double ref = rhs.norm() + As.norm() * y.norm();
        if (y.allFinite() && (As * y - rhs).norm() <= 1e-10 * std::max(ref, 1e-300)) {
            x.tail(unknowns) = colscale.cwiseProduct(y);
        } else {
            // q_0 = 1 is inconsistent: take the null vector of the full block
            Eigen::MatrixXcd full(rows, unknowns + 1);
            full.col(0) = -rhs / std::max(rhs.norm(), 1e-300);
            full.rightCols(unknowns) = As;
            Eigen::BDCSVD<Eigen::MatrixXcd> svd(full, Eigen::ComputeFullV);
            Eigen::VectorXcd v = svd.matrixV().col(unknowns);
            x(0) = v(0) / std::max(rhs.norm(), 1e-300);
            x.tail(unknowns) = colscale.cwiseProduct(v.tail(unknowns));
            const double top = x.head(M + 1).cwiseAbs().maxCoeff();
            if (!(top > 0.0)) throw ConditioningError("sfp_fit: degenerate denominator");
            x /= top;
        }
    }

    std::vector<cplx> q(M + 1);
    for (int m = 0; m <= M; ++m) q[m] = x(m);
    std::vector<LogTerm> logs(S);
    {
        int col = M + 1;
        for (int s = 0; s < S; ++s) {
            logs[s].jump = jumps[s];
            logs[s].coeffs.resize(deg.log_degrees[s] + 1);
            for (auto& l : logs[s].coeffs) l = x(col++);
        }
    }

    // coefficient j of f Q - sum L_s log(.)
    auto combined = [&](int j) {
        cplx acc = 0.0;
        for (int m = 0; m <= std::min(j, M); ++m) acc += q[m] * coef(j - m);
        for (int s = 0; s < S; ++s)
            for (int n = 0; n <= std::min(j, deg.log_degrees[s]); ++n) acc -= logs[s].coeffs[n] * lamc(s, j - n);
        return acc;
    };
    std::vector<cplx> p(N + 1);
    for (int j = 0; j <= N; ++j) p[j] = combined(j);

    double worst = 0.0;
    for (int j = N + 1; j <= U; ++j) worst = std::max(worst, std::abs(combined(j)));
    double lmax = 0.0;
    for (const auto& t : logs) lmax = std::max(lmax, detail::max_abs(t.coeffs));
    const double scale = detail::max_abs(series) * std::max(1.0, detail::max_abs(q)) + lmax;
    const double rel = scale > 0.0 ? worst / scale : 0.0;
    if (!(rel <= 1e-8)) throw FitQualityError("sfp_fit: order conditions violated", rel);

    return SFPApproximant(std::move(p), std::move(q), std::move(logs), interval, rel);
}

struct PadeResult {
    std::vector<cplx> p;
    std::vector<cplx> q;
};

/// Linear [N/M] Pade approximant from b_0..b_{N+M}.
inline PadeResult pade_fit(std::span<const cplx> series, int N, int M) {
    if (N < 0 || M < 0) throw DomainError("pade_fit: negative degree");
    if (static_cast<int>(series.size()) < N + M + 1) throw DomainError("pade_fit: series shorter than N + M + 1");
    SfpDegrees deg{N, M, {}};
    const auto f = sfp_fit(series.first(N + M + 1), {}, deg, TruncationInterval{-std::numbers::pi, std::numbers::pi});
    return {f.numerator(), f.denominator()};
}

inline double sfp_eval(const SFPApproximant& approx, double x) { return approx(x); }

/// Roots of a polynomial (increasing coefficients) via its companion matrix.
inline std::vector<cplx> polynomial_roots(std::span<const cplx> coeffs) {
    const double top = detail::max_abs(coeffs);
    int deg = static_cast<int>(coeffs.size()) - 1;
    while (deg > 0 && std::abs(coeffs[deg]) <= 1e-14 * top) --deg;
    if (deg < 1) return {};
    Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(deg, deg);
    for (int i = 1; i < deg; ++i) comp(i, i - 1) = 1.0;
    for (int i = 0; i < deg; ++i) comp(i, deg - 1) = -coeffs[i] / coeffs[deg];
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
    std::vector<cplx> roots(deg);
    for (int i = 0; i < deg; ++i) roots[i] = es.eigenvalues()(i);
    return roots;
}

/// Locations of non-smooth points of a density from the poles of a Pade fit
/// to its differentiated series; roots with | |z| - 1 | <= tol are kept.
/// The default tol is 0.5/U, since a pole at a kink sits about 0.25/U off the circle.
inline std::vector<double> locate_jumps(const CFSCoefficientSet& density, std::optional<double> tol = std::nullopt) {
    const int U = density.U;
    const double band = tol ? *tol : 0.5 / U;
    std::vector<cplx> dseries(U + 1, 0.0);
    for (int k = 1; k <= U; ++k)
        dseries[k] = 2.0 * cplx(0.0, density.interval.frequency(k)) * std::conj(density.bhat[k]);
    const SfpDegrees deg = allocate_degrees(U, 0);
    const auto fit = sfp_fit(dseries, {}, deg, density.interval);
    std::vector<double> out;
    const double per = density.interval.width() / (2.0 * std::numbers::pi);
    for (const auto& r : polynomial_roots(fit.denominator()))
        if (std::abs(std::abs(r) - 1.0) <= band) out.push_back(std::arg(r) * per);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace sfpfcc
