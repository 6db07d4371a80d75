#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sfpfcc/cheb_approx.hpp"
#include "sfpfcc/european.hpp"
#include "sfpfcc/fcc_quadrature.hpp"
#include "sfpfcc/fourier_payoff.hpp"
#include "sfpfcc/price_curve.hpp"
#include "sfpfcc/sfp_core.hpp"

namespace sfpfcc {

enum class ExerciseStyle { European, Bermudan, American, DownAndOut, UpAndOut };

struct OptionContract {
    OptionKind kind = OptionKind::Call;
    ExerciseStyle style = ExerciseStyle::European;
    double strike = 1.0;
    double maturity = 1.0;
    /// Exercise or monitoring dates t_1..t_L = T.
    int dates = 1;
    std::optional<double> barrier;

    bool is_barrier() const { return style == ExerciseStyle::DownAndOut || style == ExerciseStyle::UpAndOut; }

    void validate() const {
        if (!(strike > 0.0) || !std::isfinite(strike)) throw ContractError("contract: strike must be positive");
        if (!(maturity > 0.0) || !std::isfinite(maturity)) throw ContractError("contract: maturity must be positive");
        if (dates < 1) throw ContractError("contract: at least one date required");
        if (is_barrier() && !(barrier && *barrier > 0.0)) throw ContractError("contract: barrier level must be positive");
    }
};

struct NewtonOptions {
    double tol = 1e-10;
    int max_iter = 50;
    double derivative_floor = 1e-14;
};

struct ExercisePoint {
    double x = 0.0;
    int iterations = 0;
    /// No sign change of payoff - continuation inside the interval.
    bool clamped = false;
    bool bisection = false;
    bool converged = true;
};

/// Root of payoff(x) - C(x) with C the SFP continuation curve. A sign scan on
/// an interior grid brackets the boundary of the exercise region; safeguarded
/// Newton from x_init refines it. Without a sign change the result is clamped
/// to c or d.
inline ExercisePoint find_exercise_point(const SFPApproximant& continuation, OptionKind kind, double x_init,
                                         const NewtonOptions& opt = {}, int scan_points = 128) {
    const TruncationInterval& iv = continuation.interval();
    const bool call = kind == OptionKind::Call;
    auto h = [&](double x) { return (call ? std::exp(x) - 1.0 : 1.0 - std::exp(x)) - continuation(x); };
    auto dh = [&](double x) { return (call ? std::exp(x) : -std::exp(x)) - continuation.derivative(x); };

    const int n = std::max(scan_points, 8);
    const double step = iv.width() / n;
    auto grid = [&](int i) { return iv.c + (i + 0.5) * step; };
    std::vector<double> hv(n);
    for (int i = 0; i < n; ++i) hv[i] = h(grid(i));

    double lo, hi;
    if (call) {
        // exercise region [x*, d]: last continuation point from the right
        int i = n - 1;
        while (i >= 0 && hv[i] >= 0.0) --i;
        if (i == n - 1) return {iv.d, 0, true, false, true};
        if (i < 0) return {iv.c, 0, true, false, true};
        lo = grid(i);
        hi = grid(i + 1);
    } else {
        int i = 0;
        while (i < n && hv[i] >= 0.0) ++i;
        if (i == 0) return {iv.c, 0, true, false, true};
        if (i == n) return {iv.d, 0, true, false, true};
        lo = grid(i - 1);
        hi = grid(i);
    }
    const bool lo_negative = h(lo) < 0.0;
    ExercisePoint out;
    out.converged = false;
    double x = (x_init > lo && x_init < hi) ? x_init : 0.5 * (lo + hi);
    for (int it = 1; it <= opt.max_iter; ++it) {
        out.iterations = it;
        const double f = h(x);
        if (f == 0.0) {
            out.converged = true;
            break;
        }
        if ((f < 0.0) == lo_negative)
            lo = x;
        else
            hi = x;
        const double df = dh(x);
        double next;
        if (std::abs(df) < opt.derivative_floor) {
            next = 0.5 * (lo + hi);
            out.bisection = true;
        } else {
            next = x - f / df;
            if (!(next > lo && next < hi)) {
                next = 0.5 * (lo + hi);
                out.bisection = true;
            }
        }
        const bool done = std::abs(next - x) <= opt.tol;
        x = next;
        if (done) {
            out.converged = true;
            break;
        }
    }
    out.x = std::clamp(x, iv.c, iv.d);
    return out;
}

namespace detail {

struct Region {
    double a;
    double b;
    bool empty() const { return !(b - a > 1e-13); }
};

inline void add_payoff_part(std::vector<cplx>& g, OptionKind kind, Region r, const TruncationInterval& iv) {
    if (r.empty()) return;
    for (std::size_t k = 0; k < g.size(); ++k) g[k] += payoff_coeffs(kind, r.a, r.b, iv, static_cast<int>(k));
}

/// Weight tables for every mode k over one continuation region, reused while
/// the region does not move.
class RegionWeights {
public:
    const std::vector<FCCWeights>& get(Region r, const TruncationInterval& iv, int U, int N) {
        if (!(valid_ && r.a == region_.a && r.b == region_.b)) {
            table_.clear();
            table_.reserve(U + 1);
            for (int k = 0; k <= U; ++k) table_.push_back(fcc_weights(scaled_frequency(r.a, r.b, iv, k), N));
            region_ = r;
            valid_ = true;
        }
        return table_;
    }

private:
    bool valid_ = false;
    Region region_{0.0, 0.0};
    std::vector<FCCWeights> table_;
};

/// Largest of the last 16 Chebyshev coefficients relative to the largest one.
inline double cheb_tail(const ChebSeries& series) {
    const auto& a = series.coeffs();
    double top = 0.0, tail = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        top = std::max(top, std::abs(a[i]));
        if (i + 16 >= a.size()) tail = std::max(tail, std::abs(a[i]));
    }
    return top > 0.0 ? tail / top : 0.0;
}

/// Chebyshev fit of the continuation value over r. Auto keeps whichever of
/// the SFP and raw CFS samplings gives the smaller coefficient tail.
inline ChebSeries continuation_cheb(std::span<const cplx> series, const SFPApproximant* curve,
                                    ContinuationSource& source, Region r, const TruncationInterval& iv, int N) {
    const int U = static_cast<int>(series.size()) - 1;
    const double guard = 0.25 * iv.width() / U;
    auto raw = [&](double y) { return cfs_eval(series, iv, y); };
    auto sfp = [&](double y) { return (*curve)(std::clamp(y, iv.c + guard, iv.d - guard)); };
    if (source == ContinuationSource::Cfs || !curve) {
        source = ContinuationSource::Cfs;
        return cheb_fit(raw, r.a, r.b, N);
    }
    ChebSeries fit = cheb_fit(sfp, r.a, r.b, N);
    if (source == ContinuationSource::Sfp) return fit;
    ChebSeries alt = cheb_fit(raw, r.a, r.b, N);
    if (cheb_tail(alt) < cheb_tail(fit)) {
        source = ContinuationSource::Cfs;
        return alt;
    }
    source = ContinuationSource::Sfp;
    return fit;
}

inline void add_continuation_part(std::vector<cplx>& g, const ChebSeries& cheb, const TruncationInterval& iv,
                                  RegionWeights& weights) {
    const Region r{cheb.a(), cheb.b()};
    const int U = static_cast<int>(g.size()) - 1;
    const auto& table = weights.get(r, iv, U, cheb.degree());
    const double half = 0.5 * (r.b - r.a);
    for (int k = 0; k <= U; ++k) {
        const cplx phase = std::polar(1.0, -std::numbers::pi * k * (r.a + r.b) / iv.width());
        g[k] += half * phase * filon_cheb_integral(cheb.coeffs(), table[k]);
    }
}

inline double log_barrier(const OptionContract& c) { return std::log(*c.barrier / c.strike); }

template <class F>
SFPApproximant fit_at_date(F&& fit, int date) {
    try {
        return fit();
    } catch (const ConditioningError& e) {
        throw ConditioningError(std::string(e.what()) + " (date " + std::to_string(date) + ")", e.location());
    } catch (const FitQualityError& e) {
        throw FitQualityError(std::string(e.what()) + " (date " + std::to_string(date) + ")", e.residual());
    }
}

/// Backward induction over t_{L-1}..t_1 in units of the strike.
inline PriceCurve backward_induction(const ModelSpec& model, const OptionContract& contract,
                                     const SpectralNumerics& num) {
    contract.validate();
    if (num.U < 8) throw DomainError("pricing: U must be at least 8");
    if (num.cheb_degree < 2) throw DomainError("pricing: Chebyshev degree must be at least 2");
    const auto t0 = std::chrono::steady_clock::now();

    const bool barrier = contract.is_barrier();
    const bool exercisable = contract.style == ExerciseStyle::Bermudan;
    const int L = contract.style == ExerciseStyle::European ? 1 : contract.dates;
    const double T = contract.maturity;
    const double dt = T / L;
    const TruncationInterval iv =
        truncation_interval(model, num.horizon == IntervalHorizon::Maturity ? T : dt, num.truncation_width);
    const CFSCoefficientSet dens = density_coeffs(model, dt, iv, num.U);
    const double disc = std::exp(-model.rate() * dt);
    const OptionKind kind = contract.kind;
    const bool call = kind == OptionKind::Call;

    double bt = 0.0;
    Region alive{iv.c, iv.d};
    if (barrier) {
        bt = log_barrier(contract);
        if (!(bt > iv.c && bt < iv.d))
            throw ContractError("barrier: log(B/K) = " + std::to_string(bt) + " outside the truncation interval");
        alive = contract.style == ExerciseStyle::DownAndOut ? Region{bt, iv.d} : Region{iv.c, bt};
    }

    std::vector<cplx> g(num.U + 1, 0.0);
    {
        Region pay = call ? Region{0.0, iv.d} : Region{iv.c, 0.0};
        pay = {std::max(pay.a, alive.a), std::min(pay.b, alive.b)};
        add_payoff_part(g, kind, pay, iv);
    }

    CurveDiagnostics diag;
    diag.U = num.U;
    diag.cheb_degree = num.cheb_degree;
    diag.dates = L;
    diag.rate = model.rate();
    diag.dt = dt;

    const NewtonOptions newton{num.newton_tol, num.newton_max_iter, 1e-14};
    RegionWeights weights;
    double xstar = 0.0;
    std::vector<double> xs;
    ContinuationSource source = num.continuation;
    for (int l = L - 1; l >= 1; --l) {
        const auto series = expectation_series(dens.bhat, g, disc);
        std::optional<SFPApproximant> curve;
        if (exercisable || source == ContinuationSource::Sfp || source == ContinuationSource::Auto)
            curve = fit_at_date([&] { return fit_with_endpoint_jump(series, iv, num.degrees); }, l);
        std::vector<cplx> next(num.U + 1, 0.0);
        Region cont = alive;
        if (exercisable) {
            xstar = find_exercise_point(*curve, kind, xstar, newton).x;
            xs.push_back(xstar);
            if (call) {
                add_payoff_part(next, kind, {std::max(xstar, 0.0), iv.d}, iv);
                cont = {iv.c, xstar};
            } else {
                add_payoff_part(next, kind, {iv.c, std::min(xstar, 0.0)}, iv);
                cont = {xstar, iv.d};
            }
        }
        if (!cont.empty()) {
            ContinuationSource used = source;
            const ChebSeries cheb =
                continuation_cheb(series, curve ? &*curve : nullptr, used, cont, iv, num.cheb_degree);
            if (num.continuation == ContinuationSource::Auto && used == ContinuationSource::Cfs) ++diag.cfs_fallbacks;
            // without exercise the region is fixed, so the first choice stands
            if (!exercisable) source = used;
            add_continuation_part(next, cheb, iv, weights);
        }
        g = std::move(next);
    }
    std::reverse(xs.begin(), xs.end());
    diag.exercise_points = std::move(xs);

    auto series = expectation_series(dens.bhat, g, disc);
    auto approx = fit_at_date([&] { return fit_with_endpoint_jump(series, iv, num.degrees); }, 0);
    diag.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return PriceCurve(std::move(approx), std::move(series), contract.strike, CurveQuantity::Price, std::move(diag));
}

}  // namespace detail

/// Bermudan (or, with style European, single-date) price curve.
inline PriceCurve bermudan_price(const ModelSpec& model, const OptionContract& contract,
                                 const SpectralNumerics& num = {}) {
    if (contract.style != ExerciseStyle::Bermudan && contract.style != ExerciseStyle::European)
        throw ContractError("bermudan_price: style must be bermudan or european");
    return detail::backward_induction(model, contract, num);
}

/// Discretely monitored knock-out without rebate.
inline PriceCurve barrier_price(const ModelSpec& model, const OptionContract& contract,
                                const SpectralNumerics& num = {}) {
    if (!contract.is_barrier()) throw ContractError("barrier_price: style must be a knock-out barrier");
    return detail::backward_induction(model, contract, num);
}

/// Barrier prices at one spot for several strikes; log(B/K) moves with K so
/// every strike is a separate run.
inline std::vector<double> barrier_strike_prices(const ModelSpec& model, OptionContract contract, double spot,
                                                 std::span<const double> strikes, const SpectralNumerics& num = {}) {
    std::vector<double> out;
    out.reserve(strikes.size());
    for (double K : strikes) {
        contract.strike = K;
        out.push_back(barrier_price(model, contract, num).at_spot(spot));
    }
    return out;
}

/// Linear combination of price curves.
class CombinedCurve {
public:
    CombinedCurve(std::vector<PriceCurve> curves, std::vector<double> weights)
        : curves_(std::move(curves)), weights_(std::move(weights)) {
        if (curves_.size() != weights_.size() || curves_.empty()) throw DomainError("CombinedCurve: size mismatch");
    }

    double value(double S, double K) const {
        double v = 0.0;
        for (std::size_t i = 0; i < curves_.size(); ++i) v += weights_[i] * curves_[i].value(S, K);
        return v;
    }
    double at_spot(double S) const { return value(S, curves_.front().strike()); }
    double at_strike(double S, double K) const { return value(S, K); }
    std::vector<double> at_spots(std::span<const double> spots) const {
        std::vector<double> v(spots.size());
        for (std::size_t i = 0; i < spots.size(); ++i) v[i] = at_spot(spots[i]);
        return v;
    }

    const std::vector<PriceCurve>& curves() const { return curves_; }
    const std::vector<double>& weights() const { return weights_; }
    double seconds() const {
        double s = 0.0;
        for (const auto& c : curves_) s += c.diagnostics().seconds;
        return s;
    }

private:
    std::vector<PriceCurve> curves_;
    std::vector<double> weights_;
};

/// (64 V(2^{L+3}) - 56 V(2^{L+2}) + 14 V(2^{L+1}) - V(2^L))/21 from four
/// Bermudan runs.
inline CombinedCurve american_price(const ModelSpec& model, OptionContract contract, int L_base,
                                    const SpectralNumerics& num = {}) {
    if (contract.style != ExerciseStyle::American) throw ContractError("american_price: style must be american");
    if (L_base < 0 || L_base > 24) throw ContractError("american_price: L_base out of range");
    contract.style = ExerciseStyle::Bermudan;
    std::vector<PriceCurve> runs;
    for (int i = 0; i < 4; ++i) {
        contract.dates = 1 << (L_base + i);
        runs.push_back(detail::backward_induction(model, contract, num));
    }
    return CombinedCurve(std::move(runs), {-1.0 / 21.0, 14.0 / 21.0, -56.0 / 21.0, 64.0 / 21.0});
}

/// American value approximated by a Bermudan with many dates.
inline PriceCurve american_large_l(const ModelSpec& model, OptionContract contract, int dates,
                                   const SpectralNumerics& num = {}) {
    if (contract.style != ExerciseStyle::American) throw ContractError("american_large_l: style must be american");
    contract.style = ExerciseStyle::Bermudan;
    contract.dates = dates;
    return detail::backward_induction(model, contract, num);
}

struct GreeksCurves {
    PriceCurve delta;
    PriceCurve gamma;
};

/// Delta and Gamma from the differentiated final-date series of a run.
inline GreeksCurves greeks_curve(const PriceCurve& price, const std::optional<SfpDegrees>& degrees = std::nullopt) {
    const auto& s = price.series();
    const TruncationInterval& iv = price.interval();
    std::vector<cplx> ds(s.size(), 0.0), gs(s.size(), 0.0);
    for (std::size_t k = 1; k < s.size(); ++k) {
        const cplx iw(0.0, iv.frequency(static_cast<int>(k)));
        ds[k] = iw * s[k];
        gs[k] = iw * (iw - 1.0) * s[k];
    }
    auto da = fit_with_endpoint_jump(ds, iv, degrees);
    auto ga = fit_with_endpoint_jump(gs, iv, degrees);
    return {PriceCurve(std::move(da), std::move(ds), price.strike(), CurveQuantity::Delta, price.diagnostics()),
            PriceCurve(std::move(ga), std::move(gs), price.strike(), CurveQuantity::Gamma, price.diagnostics())};
}

/// Prices the contract and differentiates the result.
inline GreeksCurves greeks_curve(const ModelSpec& model, const OptionContract& contract,
                                 const SpectralNumerics& num = {}) {
    if (contract.style == ExerciseStyle::American)
        throw ContractError("greeks_curve: use a Bermudan contract for American Greeks");
    return greeks_curve(detail::backward_induction(model, contract, num), num.degrees);
}

}  // namespace sfpfcc
