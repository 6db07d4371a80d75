#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <span>
#include <vector>

#include "sfpfcc/levy_models.hpp"

namespace sfpfcc {

enum class OptionKind { Call, Put };

/// One-sided complex Fourier data on [c, d]; index k runs over 0..U.
struct CFSCoefficientSet {
    TruncationInterval interval;
    int U = 0;
    std::vector<cplx> bhat;
    std::vector<cplx> ghat;
};

/// bhat[k] = phi(2 pi k/(d - c), dt)/(d - c).
inline CFSCoefficientSet density_coeffs(const ModelSpec& model, double dt, const TruncationInterval& interval, int U) {
    if (U < 1) throw DomainError("density_coeffs: U must be at least 1");
    CFSCoefficientSet out;
    out.interval = interval;
    out.U = U;
    out.bhat.resize(U + 1);
    const double scale = 1.0 / interval.width();
    out.bhat[0] = scale;
    for (int k = 1; k <= U; ++k) out.bhat[k] = char_fn(model, interval.frequency(k), dt) * scale;
    return out;
}

/// Integral of payoff(y) exp(-i w_k y) over [a, b] with payoff e^y - 1 (call)
/// or 1 - e^y (put); the integrand is used as given, without the max(., 0).
inline cplx payoff_coeffs(OptionKind kind, double a, double b, const TruncationInterval& interval, int k) {
    if (!(b > a)) throw DomainError("payoff_coeffs: empty subinterval");
    const double sign = kind == OptionKind::Call ? 1.0 : -1.0;
    if (k == 0) return sign * ((std::exp(b) - std::exp(a)) - (b - a));
    const double w = interval.frequency(k);
    const cplx s(1.0, -w);
    const cplx e_part = (std::exp(s * b) - std::exp(s * a)) / s;
    const cplx one_part = (std::polar(1.0, -w * b) - std::polar(1.0, -w * a)) / cplx(0.0, -w);
    return sign * (e_part - one_part);
}

/// payoff_coeffs for k = 0..U.
inline std::vector<cplx> payoff_coeff_range(OptionKind kind, double a, double b, const TruncationInterval& interval,
                                            int U) {
    std::vector<cplx> g(U + 1);
    for (int k = 0; k <= U; ++k) g[k] = payoff_coeffs(kind, a, b, interval, k);
    return g;
}

/// Coefficients of the vanilla payoff max(+-(e^y - 1), 0) over the whole interval.
inline std::vector<cplx> vanilla_payoff_coeffs(OptionKind kind, const TruncationInterval& interval, int U) {
    if (kind == OptionKind::Call) return payoff_coeff_range(kind, 0.0, interval.d, interval, U);
    return payoff_coeff_range(kind, interval.c, 0.0, interval, U);
}

/// Series s_0 = disc B_0 G_0, s_k = 2 disc B_k G_k whose real part on the
/// unit circle is the discounted expectation.
inline std::vector<cplx> expectation_series(std::span<const cplx> bhat, std::span<const cplx> ghat, double discount) {
    const std::size_t n = std::min(bhat.size(), ghat.size());
    std::vector<cplx> s(n);
    for (std::size_t k = 0; k < n; ++k) s[k] = (k == 0 ? 1.0 : 2.0) * discount * bhat[k] * ghat[k];
    return s;
}

/// Raw truncated series Re sum_k s_k z^k at z = exp(i 2 pi x/(d - c)).
inline double cfs_eval(std::span<const cplx> series, const TruncationInterval& interval, double x) {
    const cplx z = std::polar(1.0, interval.frequency(1) * x);
    cplx acc = 0.0;
    for (std::size_t k = series.size(); k-- > 0;) acc = acc * z + series[k];
    return acc.real();
}

}  // namespace sfpfcc
