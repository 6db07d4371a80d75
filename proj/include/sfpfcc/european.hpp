#pragma once

#include <chrono>
#include <cmath>
#include <vector>

#include "sfpfcc/fourier_payoff.hpp"
#include "sfpfcc/price_curve.hpp"

namespace sfpfcc {

/// European price curve over log-moneyness for a fixed maturity T.
inline PriceCurve european_price_curve(const ModelSpec& model, OptionKind kind, double K, double T,
                                       const SpectralNumerics& num = {}) {
    if (!(K > 0.0)) throw ContractError("european_price_curve: strike must be positive");
    if (!(T > 0.0)) throw ContractError("european_price_curve: maturity must be positive");
    if (num.U < 8) throw DomainError("european_price_curve: U must be at least 8");
    const auto t0 = std::chrono::steady_clock::now();
    const TruncationInterval iv = truncation_interval(model, T, num.truncation_width);
    const CFSCoefficientSet dens = density_coeffs(model, T, iv, num.U);
    const auto g = vanilla_payoff_coeffs(kind, iv, num.U);
    auto series = expectation_series(dens.bhat, g, std::exp(-model.rate() * T));
    auto approx = fit_with_endpoint_jump(series, iv, num.degrees);
    CurveDiagnostics diag;
    diag.U = num.U;
    diag.dates = 1;
    diag.rate = model.rate();
    diag.dt = T;
    diag.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return PriceCurve(std::move(approx), std::move(series), K, CurveQuantity::Price, std::move(diag));
}

}  // namespace sfpfcc
