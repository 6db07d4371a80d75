#pragma once

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <complex>

#include "sfpfcc/sfpfcc.hpp"

namespace oracle {

using sfpfcc::OptionKind;

inline double norm_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

inline double bs_price(OptionKind kind, double S, double K, double r, double q, double sigma, double T) {
    const double sd = sigma * std::sqrt(T);
    const double d1 = (std::log(S / K) + (r - q + 0.5 * sigma * sigma) * T) / sd;
    const double d2 = d1 - sd;
    if (kind == OptionKind::Call) return S * std::exp(-q * T) * norm_cdf(d1) - K * std::exp(-r * T) * norm_cdf(d2);
    return K * std::exp(-r * T) * norm_cdf(-d2) - S * std::exp(-q * T) * norm_cdf(-d1);
}

inline double bs_delta(OptionKind kind, double S, double K, double r, double q, double sigma, double T) {
    const double d1 = (std::log(S / K) + (r - q + 0.5 * sigma * sigma) * T) / (sigma * std::sqrt(T));
    return kind == OptionKind::Call ? std::exp(-q * T) * norm_cdf(d1) : -std::exp(-q * T) * norm_cdf(-d1);
}

/// Adaptive 61-point Gauss-Kronrod on [a, b] split into equal panels.
template <class F>
double gk(F&& f, double a, double b, int panels = 1, double tol = 1e-13) {
    double acc = 0.0;
    const double h = (b - a) / panels;
    for (int i = 0; i < panels; ++i) {
        double err = 0.0;
        acc += boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a + i * h, a + (i + 1) * h, 8, tol,
                                                                             &err);
    }
    return acc;
}

template <class F>
std::complex<double> gk_complex(F&& f, double a, double b, int panels = 1) {
    const double re = gk([&](double x) { return f(x).real(); }, a, b, panels);
    const double im = gk([&](double x) { return f(x).imag(); }, a, b, panels);
    return {re, im};
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double e = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) e = std::max(e, std::abs(a[i] - b[i]));
    return e;
}

}  // namespace oracle
