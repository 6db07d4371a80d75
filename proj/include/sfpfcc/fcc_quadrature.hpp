#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <shared_mutex>
#include <span>
#include <utility>
#include <vector>

#include "sfpfcc/cheb_approx.hpp"
#include "sfpfcc/common.hpp"
#include "sfpfcc/levy_models.hpp"

namespace sfpfcc {

/// w_n(k) = int_{-1}^{1} T_n(s) exp(i k s) ds for n = 0..N.
struct FCCWeights {
    double ktilde = 0.0;
    int N = 0;
    std::vector<cplx> w;
};

enum class FccRegime { Automatic, Taylor, Recurrence };

namespace detail {

inline constexpr double fcc_taylor_threshold = 1.0;

/// Power series in k with Chebyshev moments mu_{n,j} = int s^j T_n(s) ds.
inline void fcc_taylor(double k, int N, std::vector<cplx>& w) {
    int J = 1;
    for (double term = std::abs(k); term > 1e-18 && J < 60; ++J) term *= std::abs(k) / (J + 1);
    const int width = N + J + 2;
    std::vector<double> mu(width), next(width);
    for (int n = 0; n < width; ++n) mu[n] = (n % 2 == 0) ? 2.0 / (1.0 - double(n) * n) : 0.0;
    std::fill(w.begin(), w.end(), cplx(0.0));
    cplx fac = 1.0;
    for (int j = 0; j <= J; ++j) {
        for (int n = 0; n <= N; ++n) w[n] += fac * mu[n];
        fac *= cplx(0.0, k) / double(j + 1);
        for (int n = 0; n + 1 < width; ++n) next[n] = 0.5 * (mu[n + 1] + mu[std::abs(n - 1)]);
        next[width - 1] = 0.0;
        std::swap(mu, next);
    }
}

/// Forward recurrence below |k| and a two-sided tridiagonal solve above it,
/// closed by an asymptotic value of rho_{2M}; k > 0.
inline void fcc_recurrence(double k, int N, std::vector<cplx>& w) {
    const cplx ik(0.0, k);
    const double sk = std::sin(k), ck = std::cos(k);
    const cplx g_even = 2.0 * sk / k;
    const cplx g_odd = cplx(0.0, -2.0 * ck / k);
    auto gam = [&](int n) { return (n % 2 == 0) ? g_even : g_odd; };

    w[0] = g_even;
    if (N == 0) return;

    // rho_n = int U_{n-1}(s) exp(iks) ds
    const int nf = std::min(N, static_cast<int>(std::floor(k)));
    std::vector<cplx> rho(N + 2, 0.0);
    rho[1] = g_even;
    for (int n = 1; n < nf; ++n) rho[n + 1] = rho[n - 1] + 2.0 * gam(n) - (2.0 * n / ik) * rho[n];

    if (N > nf) {
        const int ns = nf + 1;
        int twoM = std::max(2 * N, ns + 64);
        twoM += twoM % 2;
        const double n2m = twoM;
        const double p0 = 1.0 / n2m;
        const double p1 = k / std::pow(n2m, 3);
        const double p2 = 3.0 * k * k / std::pow(n2m, 5);
        const double p3 = (15.0 * k * k - n2m * n2m) * k / std::pow(n2m, 7);
        const cplx rho_end = cplx(0.0, 2.0) * (sk * (p0 - p2) + ck * (p1 - p3));

        const int len = twoM - ns;  // unknowns rho_ns .. rho_{2M-1}
        std::vector<cplx> cp(len), rp(len);
        for (int i = 0; i < len; ++i) {
            const int n = ns + i;
            const cplx diag = 2.0 * n / ik;
            cplx r = 2.0 * gam(n);
            if (i == 0) r += rho[nf];
            if (i == len - 1) r -= rho_end;
            if (i == 0) {
                cp[i] = 1.0 / diag;
                rp[i] = r / diag;
            } else {
                const cplx m = diag + cp[i - 1];
                cp[i] = 1.0 / m;
                rp[i] = (r + rp[i - 1]) / m;
            }
        }
        cplx next = rp[len - 1];
        for (int i = len - 1; i >= 0; --i) {
            const cplx cur = (i == len - 1) ? rp[i] : rp[i] - cp[i] * next;
            const int n = ns + i;
            if (n <= N) rho[n] = cur;
            next = cur;
        }
    }
    for (int n = 1; n <= N; ++n) w[n] = gam(n) - (double(n) / ik) * rho[n];
}

}  // namespace detail

inline FCCWeights fcc_weights(double k, int N, FccRegime regime = FccRegime::Automatic) {
    if (N < 0) throw DomainError("fcc_weights: N must be non-negative");
    if (!std::isfinite(k)) throw DomainError("fcc_weights: k must be finite");
    FCCWeights out{k, N, std::vector<cplx>(N + 1)};
    const double ka = std::abs(k);
    bool taylor = regime == FccRegime::Taylor || (regime == FccRegime::Automatic && ka < detail::fcc_taylor_threshold);
    if (ka == 0.0) taylor = true;
    if (taylor)
        detail::fcc_taylor(ka, N, out.w);
    else
        detail::fcc_recurrence(ka, N, out.w);
    if (k < 0)
        for (auto& v : out.w) v = std::conj(v);
    return out;
}

/// Thread-safe table of weight sets keyed by (k, N).
class FCCWeightCache {
public:
    std::shared_ptr<const FCCWeights> get(double k, int N) {
        const Key key{k, N};
        {
            std::shared_lock lock(mutex_);
            if (auto it = table_.find(key); it != table_.end()) return it->second;
        }
        auto fresh = std::make_shared<const FCCWeights>(fcc_weights(k, N));
        std::unique_lock lock(mutex_);
        return table_.emplace(key, std::move(fresh)).first->second;
    }

    std::size_t size() const {
        std::shared_lock lock(mutex_);
        return table_.size();
    }

    void clear() {
        std::unique_lock lock(mutex_);
        table_.clear();
    }

private:
    using Key = std::pair<double, int>;
    mutable std::shared_mutex mutex_;
    std::map<Key, std::shared_ptr<const FCCWeights>> table_;
};

inline cplx filon_cheb_integral(std::span<const double> alpha, const FCCWeights& weights) {
    const std::size_t n = std::min(alpha.size(), weights.w.size());
    if (alpha.size() > weights.w.size()) throw DomainError("filon_cheb_integral: weight table too short");
    cplx acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += alpha[i] * weights.w[i];
    return acc;
}

/// int_{-1}^{1} sum_n alpha_n T_n(s) exp(i k s) ds.
inline cplx filon_cheb_integral(const ChebSeries& series, double k, FCCWeightCache* cache = nullptr) {
    if (cache) return filon_cheb_integral(series.coeffs(), *cache->get(k, series.degree()));
    return filon_cheb_integral(series.coeffs(), fcc_weights(k, series.degree()));
}

/// Scaled argument -pi k (b - a)/(d - c) for mode k on [a, b].
inline double scaled_frequency(double a, double b, const TruncationInterval& interval, int k) {
    return -std::numbers::pi * k * (b - a) / interval.width();
}

/// int_a^b series(y) exp(-i 2 pi k y/(d - c)) dy.
inline cplx scaled_filon(const ChebSeries& series, const TruncationInterval& interval, int k,
                         FCCWeightCache* cache = nullptr) {
    const double a = series.a(), b = series.b();
    if (!(b > a)) throw DomainError("scaled_filon: empty interval");
    const double kt = scaled_frequency(a, b, interval, k);
    const cplx phase = std::polar(1.0, -std::numbers::pi * k * (a + b) / interval.width());
    return 0.5 * (b - a) * phase * filon_cheb_integral(series, kt, cache);
}

}  // namespace sfpfcc
