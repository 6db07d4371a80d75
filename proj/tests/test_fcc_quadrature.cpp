#include <catch_amalgamated.hpp>

#include <algorithm>
#include <chrono>
#include <numbers>

#include "test_support.hpp"

using namespace sfpfcc;

namespace {

cplx quad_weight(int n, double k) {
    return oracle::gk_complex([&](double s) { return std::cos(n * std::acos(s)) * std::polar(1.0, k * s); }, -1.0, 1.0,
                              std::max(8, static_cast<int>(std::abs(k)) / 2 + n / 2));
}

double seconds_for(double k, int N) {
    std::vector<double> t;
    for (int rep = 0; rep < 5; ++rep) {
        const auto t0 = std::chrono::steady_clock::now();
        for (int i = 0; i < 20; ++i) {
            volatile double sink = fcc_weights(k + 1e-3 * i, N).w.back().real();
            (void)sink;
        }
        t.push_back(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    }
    return *std::min_element(t.begin(), t.end());
}

}  // namespace

TEST_CASE("weights match adaptive quadrature", "[fcc]") {
    for (double k : {0.0, 0.5, 3.0, 10.0, 50.0, 200.0}) {
        const auto w = fcc_weights(k, 64);
        REQUIRE(w.w.size() == 65);
        double worst = 0.0;
        for (int n = 0; n <= 64; ++n) worst = std::max(worst, std::abs(w.w[n] - quad_weight(n, k)));
        INFO("k " << k << " worst " << worst);
        CHECK(worst <= 1e-12);
    }
}

TEST_CASE("closed-form weights", "[fcc]") {
    CHECK(std::abs(fcc_weights(std::numbers::pi, 4).w[0]) <= 1e-15);
    CHECK(std::abs(fcc_weights(std::numbers::pi, 4).w[1] - cplx(0.0, 2.0 / std::numbers::pi)) <= 1e-15);
    const auto z = fcc_weights(0.0, 20);
    for (int n = 0; n <= 20; ++n) {
        const double expect = n % 2 ? 0.0 : 2.0 / (1.0 - n * n);
        CHECK(std::abs(z.w[n] - expect) <= 1e-15);
    }
    for (double k : {0.3, 2.0, 7.5, 40.0})
        CHECK(std::abs(fcc_weights(k, 2).w[0] - 2.0 * std::sin(k) / k) <= 1e-15);
}

TEST_CASE("conjugate symmetry and bound", "[fcc]") {
    for (double k : {0.01, 0.9, 1.0, 4.2, 33.3, 150.0, 1000.0}) {
        const auto a = fcc_weights(k, 128);
        const auto b = fcc_weights(-k, 128);
        for (int n = 0; n <= 128; ++n) {
            CHECK(std::abs(a.w[n] - std::conj(b.w[n])) <= 1e-15);
            CHECK(std::abs(a.w[n]) <= 2.0 + 1e-14);
        }
    }
}

TEST_CASE("regimes agree where they meet", "[fcc]") {
    for (double k : {0.5, 0.9, 1.0, 1.1, 2.0}) {
        const auto t = fcc_weights(k, 64, FccRegime::Taylor);
        const auto r = fcc_weights(k, 64, FccRegime::Recurrence);
        double worst = 0.0;
        for (int n = 0; n <= 64; ++n) worst = std::max(worst, std::abs(t.w[n] - r.w[n]));
        INFO("k " << k << " worst " << worst);
        CHECK(worst <= 1e-10);
    }
    // forward part below N, tail system above
    const int N = 64;
    const auto lo = fcc_weights(N - 1e-9, N);
    const auto hi = fcc_weights(N + 1e-9, N);
    for (int n = 0; n <= N; ++n) {
        CHECK(std::abs(lo.w[n] - quad_weight(n, N - 1e-9)) <= 1e-12);
        CHECK(std::abs(hi.w[n] - quad_weight(n, N + 1e-9)) <= 1e-12);
        CHECK(std::abs(lo.w[n] - hi.w[n]) <= 1e-8);
    }
}

TEST_CASE("Filon integral of Chebyshev series", "[fcc]") {
    const ChebSeries t0(-1.0, 1.0, {1.0});
    CHECK(std::abs(filon_cheb_integral(t0, std::numbers::pi)) <= 1e-15);

    const auto e = cheb_fit([](double s) { return std::exp(s); }, -1.0, 1.0, 32);
    const cplx a(1.0, 10.0);
    const cplx exact = (std::exp(a) - std::exp(-a)) / a;
    CHECK(std::abs(filon_cheb_integral(e, 10.0) - exact) <= 1e-12);

    const auto g = cheb_fit([](double s) { return std::cos(3.0 * s); }, -1.0, 1.0, 32);
    std::vector<double> lin(33);
    for (int n = 0; n <= 32; ++n) lin[n] = 2.0 * e.coeffs()[n] - 0.5 * g.coeffs()[n];
    const ChebSeries h(-1.0, 1.0, lin);
    const cplx lhs = filon_cheb_integral(h, 7.0);
    const cplx rhs = 2.0 * filon_cheb_integral(e, 7.0) - 0.5 * filon_cheb_integral(g, 7.0);
    CHECK(std::abs(lhs - rhs) <= 1e-14);

    FCCWeightCache cache;
    CHECK(std::abs(filon_cheb_integral(e, 10.0, &cache) - exact) <= 1e-12);
    CHECK(std::abs(filon_cheb_integral(e, 10.0, &cache) - exact) <= 1e-12);
    CHECK(cache.size() == 1);
    CHECK(cache.get(10.0, 32) == cache.get(10.0, 32));
    const FCCWeights short_table = fcc_weights(1.0, 3);
    CHECK_THROWS_AS(filon_cheb_integral(e.coeffs(), short_table), DomainError);
}

TEST_CASE("scaled Filon on subintervals", "[fcc]") {
    const TruncationInterval iv{-2.0, 2.0};
    const auto exact = [&](double a, double b, int k) {
        const cplx s(1.0, -iv.frequency(k));
        return (std::exp(s * b) - std::exp(s * a)) / s;
    };
    for (auto [a, b] : {std::pair{-0.3, 0.8}, std::pair{-2.0, 2.0}, std::pair{0.5, 1.9}, std::pair{-0.6, 0.6}}) {
        const auto e = cheb_fit([](double y) { return std::exp(y); }, a, b, 48);
        for (int k : {0, 1, 3, 12, 60}) CHECK(std::abs(scaled_filon(e, iv, k) - exact(a, b, k)) <= 1e-11);
    }
    const auto full = cheb_fit([](double y) { return std::exp(y); }, iv.c, iv.d, 48);
    CHECK(scaled_frequency(iv.c, iv.d, iv, 3) == -3.0 * std::numbers::pi);
    const auto sym = cheb_fit([](double y) { return std::exp(y); }, -0.6, 0.6, 48);
    const cplx direct = 0.6 * filon_cheb_integral(sym, scaled_frequency(-0.6, 0.6, iv, 5));
    CHECK(std::abs(scaled_filon(sym, iv, 5) - direct) <= 1e-15);
    CHECK(std::abs(scaled_filon(full, iv, 2) - exact(iv.c, iv.d, 2)) <= 1e-11);
}

TEST_CASE("weight cost grows slower than quadratically", "[fcc]") {
    // both N above k, so one regime
    const double small = seconds_for(300.0, 512);
    const double large = seconds_for(300.0, 2048);
    INFO("N=512 " << small << " s, N=2048 " << large << " s");
    CHECK(large / small < 12.0);
}

TEST_CASE("weight argument errors", "[fcc]") {
    CHECK_THROWS_AS(fcc_weights(1.0, -1), DomainError);
    CHECK_THROWS_AS(fcc_weights(std::numeric_limits<double>::infinity(), 4), DomainError);
}
