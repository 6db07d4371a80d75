#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include <unsupported/Eigen/FFT>

#include "sfpfcc/common.hpp"

namespace sfpfcc {

/// sum_n alpha_n T_n(psi(y)) with psi mapping [a, b] onto [-1, 1].
class ChebSeries {
public:
    ChebSeries() = default;
    ChebSeries(double a, double b, std::vector<double> alpha) : a_(a), b_(b), alpha_(std::move(alpha)) {
        if (!(b > a)) throw DomainError("ChebSeries: empty interval");
        if (alpha_.empty()) throw DomainError("ChebSeries: no coefficients");
    }

    double a() const { return a_; }
    double b() const { return b_; }
    int degree() const { return static_cast<int>(alpha_.size()) - 1; }
    const std::vector<double>& coeffs() const { return alpha_; }

    double to_unit(double y) const { return (2.0 * y - (a_ + b_)) / (b_ - a_); }
    bool contains(double y) const { return y >= a_ && y <= b_; }

    /// Clenshaw recurrence at s in [-1, 1].
    double at_unit(double s) const {
        double b1 = 0.0, b2 = 0.0;
        for (std::size_t n = alpha_.size(); n-- > 1;) {
            const double t = alpha_[n] + 2.0 * s * b1 - b2;
            b2 = b1;
            b1 = t;
        }
        return alpha_[0] + s * b1 - b2;
    }

    double operator()(double y) const { return at_unit(to_unit(y)); }

private:
    double a_ = -1.0;
    double b_ = 1.0;
    std::vector<double> alpha_{0.0};
};

/// Lobatto node y_j = mid + half cos(pi j/N), j = 0..N.
inline double lobatto_node(double a, double b, int j, int N) {
    return 0.5 * (a + b) + 0.5 * (b - a) * std::cos(std::numbers::pi * j / N);
}

/// Coefficients from samples f_j at the Lobatto nodes via a DCT-I.
inline ChebSeries cheb_from_samples(double a, double b, const std::vector<double>& f) {
    const int N = static_cast<int>(f.size()) - 1;
    if (N < 1) throw DomainError("cheb_from_samples: need at least two samples");
    std::vector<double> ext(2 * N);
    for (int j = 0; j <= N; ++j) ext[j] = f[j];
    for (int j = 1; j < N; ++j) ext[2 * N - j] = f[j];
    static thread_local Eigen::FFT<double> fft;
    std::vector<std::complex<double>> spec;
    fft.fwd(spec, ext);
    std::vector<double> alpha(N + 1);
    for (int n = 0; n <= N; ++n) alpha[n] = spec[n].real() / N;
    alpha[0] *= 0.5;
    alpha[N] *= 0.5;
    return ChebSeries(a, b, std::move(alpha));
}

template <class F>
ChebSeries cheb_fit(F&& f, double a, double b, int N) {
    if (N < 2) throw DomainError("cheb_fit: degree must be at least 2");
    if (!(b > a)) throw DomainError("cheb_fit: empty interval");
    std::vector<double> samples(N + 1);
    for (int j = 0; j <= N; ++j) {
        const double y = lobatto_node(a, b, j, N);
        samples[j] = f(y);
        if (!std::isfinite(samples[j]))
            throw NumericalError("cheb_fit: non-finite sample at node " + std::to_string(j) + " (y = " +
                                 std::to_string(y) + ")");
    }
    return cheb_from_samples(a, b, samples);
}

inline Evaluation cheb_eval(const ChebSeries& series, double y) { return {series(y), !series.contains(y)}; }

}  // namespace sfpfcc
