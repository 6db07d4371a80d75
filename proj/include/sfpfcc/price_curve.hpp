#pragma once

#include <cmath>
#include <optional>
#include <span>
#include <vector>

#include "sfpfcc/fourier_payoff.hpp"
#include "sfpfcc/sfp_core.hpp"

namespace sfpfcc {

/// Time at which the cumulants sizing [c, d] are evaluated.
enum class IntervalHorizon { Maturity, Step };

/// Curve sampled by the Chebyshev fit of an intermediate continuation value.
/// Auto fits both and keeps the better resolved Chebyshev series.
enum class ContinuationSource { Auto, Cfs, Sfp };

struct SpectralNumerics {
    int U = 128;
    int cheb_degree = 128;
    double truncation_width = 8.0;
    IntervalHorizon horizon = IntervalHorizon::Maturity;
    ContinuationSource continuation = ContinuationSource::Auto;
    double newton_tol = 1e-10;
    int newton_max_iter = 50;
    /// Overrides allocate_degrees(U, 1) when set.
    std::optional<SfpDegrees> degrees;
};

enum class CurveQuantity { Price, Delta, Gamma };

struct CurveDiagnostics {
    int U = 0;
    int cheb_degree = 0;
    int dates = 1;
    double rate = 0.0;
    double dt = 0.0;
    double seconds = 0.0;
    /// Early-exercise points x*, one per date t_1..t_{L-1}, in log-moneyness.
    std::vector<double> exercise_points;
    /// Dates whose continuation value came from the raw CFS under Auto.
    int cfs_fallbacks = 0;
};

/// Closed-form curve  V(S, K) = K S^{-p} Re F(z(log(S/K)))  where F is an
/// SFP approximant of the discounted expectation series and p = 0, 1, 2 for
/// price, Delta and Gamma.
class PriceCurve {
public:
    PriceCurve(SFPApproximant approx, std::vector<cplx> series, double strike, CurveQuantity quantity,
               CurveDiagnostics diag)
        : approx_(std::move(approx)),
          series_(std::move(series)),
          strike_(strike),
          quantity_(quantity),
          diag_(std::move(diag)) {}

    /// Re F at log-moneyness x, in units of the strike.
    double unit_value(double x) const { return approx_(x); }

    double value(double S, double K) const {
        const double g = approx_(std::log(S / K));
        switch (quantity_) {
        case CurveQuantity::Price: return K * g;
        case CurveQuantity::Delta: return K * g / S;
        case CurveQuantity::Gamma: return K * g / (S * S);
        }
        return K * g;
    }

    double at_spot(double S) const { return value(S, strike_); }
    double at_strike(double S, double K) const { return value(S, K); }

    std::vector<double> at_spots(std::span<const double> spots) const {
        std::vector<double> v(spots.size());
        for (std::size_t i = 0; i < spots.size(); ++i) v[i] = at_spot(spots[i]);
        return v;
    }

    std::vector<double> at_strikes(double S, std::span<const double> strikes) const {
        std::vector<double> v(strikes.size());
        for (std::size_t i = 0; i < strikes.size(); ++i) v[i] = at_strike(S, strikes[i]);
        return v;
    }

    bool in_range(double S) const { return approx_.interval().contains(std::log(S / strike_)); }

    const SFPApproximant& approximant() const { return approx_; }
    /// The fitted series c_0..c_U (discount included).
    const std::vector<cplx>& series() const { return series_; }
    const TruncationInterval& interval() const { return approx_.interval(); }
    double strike() const { return strike_; }
    CurveQuantity quantity() const { return quantity_; }
    const CurveDiagnostics& diagnostics() const { return diag_; }
    CurveDiagnostics& diagnostics() { return diag_; }

private:
    SFPApproximant approx_;
    std::vector<cplx> series_;
    double strike_;
    CurveQuantity quantity_;
    CurveDiagnostics diag_;
};

/// SFP fit with the endpoint jump eps = -1.
inline SFPApproximant fit_with_endpoint_jump(std::span<const cplx> series, const TruncationInterval& interval,
                                             const std::optional<SfpDegrees>& degrees = std::nullopt) {
    const int U = static_cast<int>(series.size()) - 1;
    const cplx jump[1] = {cplx(-1.0, 0.0)};
    return sfp_fit(series, jump, degrees ? *degrees : allocate_degrees(U, 1), interval);
}

}  // namespace sfpfcc
