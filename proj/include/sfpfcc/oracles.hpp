#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <span>
#include <vector>

#include "sfpfcc/exercise_engine.hpp"
#include "sfpfcc/levy_models.hpp"

namespace sfpfcc {

/// Cosine-series European price at each spot. The expansion interval for
/// y = log(S_T/K) is log(S/K) + [c, d] with [c, d] from truncation_interval.
inline std::vector<double> cos_european_price(const ModelSpec& model, OptionKind kind, double K, double T,
                                              std::span<const double> spots, int N = 256, double width = 8.0) {
    if (!(K > 0.0) || !(T > 0.0)) throw ContractError("cos_european_price: strike and maturity must be positive");
    if (N < 2) throw DomainError("cos_european_price: N must be at least 2");
    const TruncationInterval iv = truncation_interval(model, T, width);
    std::vector<cplx> phi(N);
    const double len = iv.width();
    for (int k = 0; k < N; ++k) phi[k] = char_fn(model, k * std::numbers::pi / len, T);
    const double disc = std::exp(-model.rate() * T);

    std::vector<double> out;
    out.reserve(spots.size());
    for (double S : spots) {
        if (!(S > 0.0)) throw ContractError("cos_european_price: spot must be positive");
        const double x = std::log(S / K);
        const double a = x + iv.c;
        const double b = x + iv.d;
        double lo = a;
        double hi = b;
        double sign = 1.0;
        if (kind == OptionKind::Call) {
            lo = std::max(a, 0.0);
            sign = 1.0;
        } else {
            hi = std::min(b, 0.0);
            sign = -1.0;
        }
        double v = 0.0;
        if (hi > lo) {
            for (int k = 0; k < N; ++k) {
                const double u = k * std::numbers::pi / len;
                const double el = std::exp(lo);
                const double eh = std::exp(hi);
                const double cl = std::cos(u * (lo - a));
                const double ch = std::cos(u * (hi - a));
                const double sl = std::sin(u * (lo - a));
                const double sh = std::sin(u * (hi - a));
                const double chi = (ch * eh - cl * el + u * (sh * eh - sl * el)) / (1.0 + u * u);
                const double psi = k == 0 ? hi - lo : (sh - sl) / u;
                const double Vk = 2.0 / len * sign * (chi - psi);
                const double Ak = (phi[k] * std::polar(1.0, u * (x - a))).real();
                v += (k == 0 ? 0.5 : 1.0) * Ak * Vk;
            }
        }
        out.push_back(K * disc * v);
    }
    return out;
}

struct QuadOptions {
    /// Grid points on [-W, W] at the coarsest level.
    int grid_points = 4096;
    /// Half-width W of the log-moneyness grid; 0 picks it from the spots and
    /// the cumulants of one step.
    double half_width = 0.0;
    int levels = 3;
    double phi_tol = 1e-15;
    long max_frequencies = 4'000'000;
};

struct QuadResult {
    std::vector<double> values;
    double error_bar = 0.0;
    bool converged = false;
    /// max|V_h - V_{h/2}| / max|V_{h/2} - V_{h/4}|; about 4 for a clean O(h^2) run.
    double ratio = 0.0;
};

namespace detail {

/// f(z_m), z_m = m h for |m| <= J, by trapezoidal Fourier inversion with
/// frequency step pi/(4W).
inline std::vector<double> quad_density(const ModelSpec& model, double dt, double h, int J, double W,
                                        const QuadOptions& opt) {
    if (model.kind() == ModelKind::VarianceGamma) {
        const auto& p = std::get<VarianceGammaParams>(model.params());
        if (!(dt > 0.5 * p.nu)) throw DomainError("quad: VG density unbounded for dt <= nu/2");
    }
    const double du = std::numbers::pi / (4.0 * W);
    std::vector<double> f(2 * J + 1, 0.5);
    int below = 0;
    for (long n = 1; below < 32; ++n) {
        if (n > opt.max_frequencies) throw DomainError("quad: characteristic function decays too slowly");
        const double u = n * du;
        const cplx ph = char_fn(model, u, dt);
        below = std::abs(ph) < opt.phi_tol ? below + 1 : 0;
        const cplx rot = std::polar(1.0, -u * h);
        cplx r = 1.0;
        f[J] += ph.real();
        for (int m = 1; m <= J; ++m) {
            r = m % 256 == 0 ? std::polar(1.0, -u * h * m) : r * rot;
            f[J + m] += (ph * r).real();
            f[J - m] += (ph * std::conj(r)).real();
        }
    }
    for (double& v : f) v *= du / std::numbers::pi;
    return f;
}

struct QuadSetup {
    const ModelSpec& model;
    const OptionContract& contract;
    int L;
    double dt;
    double bt;
    bool barrier;
    bool exercisable;
};

inline bool quad_alive(const QuadSetup& s, double y) {
    if (!s.barrier) return true;
    return s.contract.style == ExerciseStyle::DownAndOut ? y >= s.bt : y <= s.bt;
}

inline double quad_payoff(OptionKind kind, double y) {
    return kind == OptionKind::Call ? std::max(std::exp(y) - 1.0, 0.0) : std::max(1.0 - std::exp(y), 0.0);
}

/// Value outside [-W, W] with time tau left, in units of the strike.
inline double quad_extension(const QuadSetup& s, double y, double tau) {
    if (!quad_alive(s, y)) return 0.0;
    const double r = s.model.rate();
    const double q = s.model.dividend();
    const bool call = s.contract.kind == OptionKind::Call;
    if (call ? y < 0.0 : y > 0.0) return 0.0;
    const double fwd = call ? std::exp(y - q * tau) - std::exp(-r * tau) : std::exp(-r * tau) - std::exp(y - q * tau);
    if (tau == 0.0 || s.exercisable) return std::max(quad_payoff(s.contract.kind, y), fwd);
    return fwd;
}

inline std::vector<double> quad_level(const QuadSetup& s, std::span<const double> xs, double h, int J, double W,
                                      const QuadOptions& opt) {
    const std::vector<double> f = quad_density(s.model, s.dt, h, J, W, opt);
    const double disc = std::exp(-s.model.rate() * s.dt);
    const int n = 4 * J + 1;
    const OptionKind kind = s.contract.kind;
    std::vector<double> V(n);
    const auto node = [&](int j) { return (j - 2 * J) * h; };
    const auto at_barrier = [&](int j) { return s.barrier && std::abs(node(j) - s.bt) < 0.25 * h; };
    const auto fill_outer = [&](double tau) {
        for (int j = 0; j < n; ++j)
            if (j < J || j > 3 * J) V[j] = quad_extension(s, node(j), tau);
    };
    for (int j = 0; j < n; ++j) {
        const double y = node(j);
        V[j] = quad_alive(s, y) ? quad_payoff(kind, y) : 0.0;
        if (at_barrier(j)) V[j] = 0.5 * quad_payoff(kind, y);
    }
    std::vector<double> C(2 * J + 1);
    std::vector<double> w(2 * J + 1, 1.0);
    w.front() = w.back() = 0.5;
    for (int m = 0; m <= 2 * J; ++m) w[m] *= h * f[m];
    for (int l = s.L - 1; l >= 0; --l) {
        for (int i = 0; i <= 2 * J; ++i) {
            const double* v = V.data() + i;
            double acc = 0.0;
            for (int m = 0; m <= 2 * J; ++m) acc += w[m] * v[m];
            C[i] = disc * acc;
        }
        if (l == 0) break;
        const double tau = s.contract.maturity - l * s.dt;
        fill_outer(tau);
        for (int i = 0; i <= 2 * J; ++i) {
            const int j = i + J;
            const double y = node(j);
            double v = C[i];
            if (s.exercisable) v = std::max(v, quad_payoff(kind, y));
            if (!quad_alive(s, y)) v = 0.0;
            if (at_barrier(j)) v *= 0.5;
            V[j] = v;
        }
    }
    std::vector<double> out;
    out.reserve(xs.size());
    for (double x : xs) {
        int i0 = static_cast<int>(std::floor(x / h)) + J - 2;
        i0 = std::clamp(i0, 0, 2 * J - 5);
        double v = 0.0;
        for (int a = 0; a < 6; ++a) {
            double basis = 1.0;
            const double xa = (i0 + a - J) * h;
            for (int b = 0; b < 6; ++b)
                if (b != a) basis *= (x - (i0 + b - J) * h) / (xa - (i0 + b - J) * h);
            v += basis * C[i0 + a];
        }
        out.push_back(v);
    }
    return out;
}

}  // namespace detail

/// Brute-force Bermudan, European or knock-out values at the given spots:
/// transition density by Fourier inversion on a uniform grid, backward
/// induction by trapezoidal convolution, three grid levels h, h/2, h/4 and a
/// Richardson step when the level differences fall like h^2.
inline QuadResult quad_bermudan_price(const ModelSpec& model, const OptionContract& contract,
                                      std::span<const double> spots, const QuadOptions& opt = {}) {
    contract.validate();
    if (contract.style == ExerciseStyle::American) throw ContractError("quad: american style not supported");
    const int L = contract.style == ExerciseStyle::European ? 1 : contract.dates;
    if (L > 16) throw DomainError("quad: at most 16 dates");
    if (opt.grid_points < 4096) throw DomainError("quad: grid must have at least 4096 points");
    if (opt.levels < 2) throw DomainError("quad: at least two grid levels");

    std::vector<double> xs;
    xs.reserve(spots.size());
    double xmax = 0.0;
    for (double S : spots) {
        if (!(S > 0.0)) throw ContractError("quad: spot must be positive");
        xs.push_back(std::log(S / contract.strike));
        xmax = std::max(xmax, std::abs(xs.back()));
    }
    const double dt = contract.maturity / L;
    double W = opt.half_width;
    if (!(W > 0.0)) {
        const Cumulants k = cumulants(model, dt);
        W = std::max(1.5, xmax + 16.0 * std::sqrt(k.c2 + std::sqrt(k.c4)));
    }
    if (xmax > 0.8 * W) throw DomainError("quad: spots too close to the grid edge");

    const bool barrier = contract.is_barrier();
    const double bt = barrier ? std::log(*contract.barrier / contract.strike) : 0.0;
    int J = opt.grid_points / 2;
    double h = W / J;
    if (barrier && bt != 0.0 && std::abs(bt) < W) {
        const double steps = std::max(1.0, std::round(std::abs(bt) / h));
        h = std::abs(bt) / steps;
        J = static_cast<int>(std::ceil(W / h));
    }
    const detail::QuadSetup setup{model, contract, L, dt, bt, barrier, contract.style == ExerciseStyle::Bermudan};

    std::vector<std::vector<double>> runs;
    for (int lv = 0; lv < opt.levels; ++lv) {
        runs.push_back(detail::quad_level(setup, xs, h, J, J * h, opt));
        h *= 0.5;
        J *= 2;
    }
    const auto diff = [&](const std::vector<double>& a, const std::vector<double>& b) {
        double e = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) e = std::max(e, std::abs(a[i] - b[i]));
        return e;
    };
    const auto& fine = runs.back();
    const auto& mid = runs[runs.size() - 2];
    const double d2 = diff(mid, fine);
    const double d1 = runs.size() > 2 ? diff(runs[runs.size() - 3], mid) : 4.0 * d2;

    QuadResult res;
    res.ratio = d2 > 0.0 ? d1 / d2 : 0.0;
    res.values = fine;
    if (d2 <= 1e-13) {
        res.converged = true;
        res.error_bar = d2;
    } else if (res.ratio >= 2.5 && res.ratio <= 6.0) {
        res.converged = true;
        for (std::size_t i = 0; i < fine.size(); ++i) res.values[i] = fine[i] + (fine[i] - mid[i]) / 3.0;
        res.error_bar = d2 / 3.0;
    } else {
        res.converged = false;
        res.error_bar = std::max(d1, d2);
    }
    for (double& v : res.values) v *= contract.strike;
    res.error_bar *= contract.strike;
    return res;
}

}  // namespace sfpfcc
