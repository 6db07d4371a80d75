#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <variant>

#include "sfpfcc/common.hpp"

namespace sfpfcc {

enum class ModelKind { BlackScholes, VarianceGamma, Cgmy, Nig };

struct BlackScholesParams {
    double sigma;
};

struct VarianceGammaParams {
    double sigma;
    double theta;
    double nu;
};

struct CgmyParams {
    double C;
    double G;
    double M;
    double Y;
};

struct NigParams {
    double alpha;
    double beta;
    double delta;
};

using ModelParams = std::variant<BlackScholesParams, VarianceGammaParams, CgmyParams, NigParams>;

/// Exponential Levy model for log(S_t/S_0) under the risk-neutral measure.
///
/// Immutable once built; the factories validate the parameter domain and
/// throw DomainError on violation.
class ModelSpec {
public:
    static ModelSpec black_scholes(double sigma, double r, double q) {
        return ModelSpec(BlackScholesParams{sigma}, r, q);
    }
    static ModelSpec variance_gamma(double sigma, double theta, double nu, double r, double q) {
        return ModelSpec(VarianceGammaParams{sigma, theta, nu}, r, q);
    }
    static ModelSpec cgmy(double C, double G, double M, double Y, double r, double q) {
        return ModelSpec(CgmyParams{C, G, M, Y}, r, q);
    }
    static ModelSpec nig(double alpha, double beta, double delta, double r, double q) {
        return ModelSpec(NigParams{alpha, beta, delta}, r, q);
    }

    ModelSpec(ModelParams params, double r, double q) : params_(params), r_(r), q_(q) {
        validate();
        omega_ = -exponent(cplx(0.0, -1.0)).real();
    }

    ModelKind kind() const { return static_cast<ModelKind>(params_.index()); }
    const ModelParams& params() const { return params_; }
    double rate() const { return r_; }
    double dividend() const { return q_; }

    /// Martingale correction: E[exp(L_t)] = exp((r - q)t).
    double omega() const { return omega_; }

    /// Characteristic exponent per unit time, without the (r - q + omega) drift.
    cplx exponent(cplx u) const {
        const cplx iu = cplx(0.0, 1.0) * u;
        switch (kind()) {
        case ModelKind::BlackScholes: {
            const auto& p = std::get<BlackScholesParams>(params_);
            return 0.5 * p.sigma * p.sigma * iu * iu;
        }
        case ModelKind::VarianceGamma: {
            const auto& p = std::get<VarianceGammaParams>(params_);
            return -std::log(1.0 - iu * p.theta * p.nu - 0.5 * p.sigma * p.sigma * p.nu * iu * iu) / p.nu;
        }
        case ModelKind::Cgmy: {
            const auto& p = std::get<CgmyParams>(params_);
            const double pref = p.C * std::tgamma(-p.Y);
            const double mY = std::pow(p.M, p.Y);
            const double gY = std::pow(p.G, p.Y);
            // compensated so that the exponent has zero mean
            return pref * (std::pow(p.M - iu, p.Y) - mY + iu * p.Y * mY / p.M
                           + std::pow(p.G + iu, p.Y) - gY - iu * p.Y * gY / p.G);
        }
        case ModelKind::Nig: {
            const auto& p = std::get<NigParams>(params_);
            const cplx b = p.beta + iu;
            return -p.delta * (std::sqrt(p.alpha * p.alpha - b * b)
                               - std::sqrt(p.alpha * p.alpha - p.beta * p.beta));
        }
        }
        throw DomainError("unsupported model kind");
    }

    std::string name() const {
        switch (kind()) {
        case ModelKind::BlackScholes: return "BS";
        case ModelKind::VarianceGamma: return "VG";
        case ModelKind::Cgmy: return "CGMY";
        case ModelKind::Nig: return "NIG";
        }
        return "?";
    }

private:
    void validate() const {
        if (!std::isfinite(r_) || !std::isfinite(q_)) throw DomainError("rate and dividend must be finite");
        switch (kind()) {
        case ModelKind::BlackScholes: {
            const auto& p = std::get<BlackScholesParams>(params_);
            if (!(p.sigma > 0.0) || !std::isfinite(p.sigma)) throw DomainError("BS: sigma must be positive");
            break;
        }
        case ModelKind::VarianceGamma: {
            const auto& p = std::get<VarianceGammaParams>(params_);
            if (!(p.sigma > 0.0) || !std::isfinite(p.sigma)) throw DomainError("VG: sigma must be positive");
            if (!(p.nu > 0.0) || !std::isfinite(p.nu)) throw DomainError("VG: nu must be positive");
            if (!std::isfinite(p.theta)) throw DomainError("VG: theta must be finite");
            if (!(1.0 - p.theta * p.nu - 0.5 * p.sigma * p.sigma * p.nu > 0.0))
                throw DomainError("VG: 1 - theta*nu - sigma^2*nu/2 must be positive (omega undefined)");
            break;
        }
        case ModelKind::Cgmy: {
            const auto& p = std::get<CgmyParams>(params_);
            if (!(p.C > 0.0) || !(p.G > 0.0) || !std::isfinite(p.C) || !std::isfinite(p.G))
                throw DomainError("CGMY: C and G must be positive");
            if (!(p.M > 1.0) || !std::isfinite(p.M)) throw DomainError("CGMY: M must exceed 1 (finite exponential moment)");
            if (!(p.Y > 0.0 && p.Y < 2.0) || p.Y == 1.0) throw DomainError("CGMY: Y must lie in (0,2) excluding 1");
            break;
        }
        case ModelKind::Nig: {
            const auto& p = std::get<NigParams>(params_);
            if (!(p.alpha > 0.0) || !std::isfinite(p.alpha)) throw DomainError("NIG: alpha must be positive");
            if (!(p.delta > 0.0) || !std::isfinite(p.delta)) throw DomainError("NIG: delta must be positive");
            if (!(std::abs(p.beta) < p.alpha)) throw DomainError("NIG: |beta| must be below alpha");
            if (!(std::abs(p.beta + 1.0) < p.alpha))
                throw DomainError("NIG: |beta + 1| must be below alpha (finite exponential moment)");
            break;
        }
        }
    }

    ModelParams params_;
    double r_;
    double q_;
    double omega_ = 0.0;
};

/// phi(u) = E[exp(iu L_t)] including the risk-neutral drift.
inline cplx char_fn(const ModelSpec& model, cplx u, double t) {
    if (!(t > 0.0)) throw DomainError("char_fn: t must be positive");
    const cplx iu = cplx(0.0, 1.0) * u;
    return std::exp(t * (iu * (model.rate() - model.dividend() + model.omega()) + model.exponent(u)));
}

inline cplx char_fn(const ModelSpec& model, double u, double t) { return char_fn(model, cplx(u, 0.0), t); }

struct Cumulants {
    double c1;
    double c2;
    double c4;
};

inline Cumulants cumulants(const ModelSpec& model, double t) {
    if (!(t > 0.0)) throw DomainError("cumulants: t must be positive");
    const double drift = model.rate() - model.dividend() + model.omega();
    switch (model.kind()) {
    case ModelKind::BlackScholes: {
        const auto& p = std::get<BlackScholesParams>(model.params());
        return {drift * t, p.sigma * p.sigma * t, 0.0};
    }
    case ModelKind::VarianceGamma: {
        const auto& p = std::get<VarianceGammaParams>(model.params());
        const double s2 = p.sigma * p.sigma;
        const double th2 = p.theta * p.theta;
        return {(drift + p.theta) * t, (s2 + p.nu * th2) * t,
                3.0 * (s2 * s2 * p.nu + 2.0 * th2 * th2 * std::pow(p.nu, 3) + 4.0 * s2 * th2 * p.nu * p.nu) * t};
    }
    case ModelKind::Cgmy: {
        const auto& p = std::get<CgmyParams>(model.params());
        return {drift * t,
                p.C * std::tgamma(2.0 - p.Y) * (std::pow(p.M, p.Y - 2.0) + std::pow(p.G, p.Y - 2.0)) * t,
                p.C * std::tgamma(4.0 - p.Y) * (std::pow(p.M, p.Y - 4.0) + std::pow(p.G, p.Y - 4.0)) * t};
    }
    case ModelKind::Nig: {
        const auto& p = std::get<NigParams>(model.params());
        const double a2 = p.alpha * p.alpha;
        const double b2 = p.beta * p.beta;
        const double g = std::sqrt(a2 - b2);
        return {(drift + p.delta * p.beta / g) * t, p.delta * a2 / (g * g * g) * t,
                3.0 * p.delta * a2 * (a2 + 4.0 * b2) / std::pow(g, 7) * t};
    }
    }
    throw DomainError("cumulants: unsupported model kind");
}

/// Symmetric log-moneyness interval [c, d] = [-d, d] carrying the density.
struct TruncationInterval {
    double c;
    double d;

    double width() const { return d - c; }
    /// Angular frequency 2 pi k / (d - c) of the k-th Fourier mode.
    double frequency(int k) const { return 2.0 * std::numbers::pi * k / (d - c); }
    bool contains(double x) const { return x >= c && x <= d; }
};

inline TruncationInterval truncation_interval(const ModelSpec& model, double t, double width = 8.0) {
    if (!(width >= 8.0 && width <= 12.0)) throw DomainError("truncation_interval: width must lie in [8, 12]");
    const Cumulants k = cumulants(model, t);
    const double d = std::abs(k.c1 + width * std::sqrt(k.c2 + std::sqrt(k.c4)));
    return {-d, d};
}

}  // namespace sfpfcc
