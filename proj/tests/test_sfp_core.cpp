#include <catch_amalgamated.hpp>

#include <numbers>

#include "test_support.hpp"

using namespace sfpfcc;
using Catch::Matchers::WithinAbs;

namespace {

const TruncationInterval circle{-std::numbers::pi, std::numbers::pi};

/// Step 1 on (0, pi), 0 on (-pi, 0): jumps at x = 0 and x = +-pi.
std::vector<cplx> step_series(int U) {
    std::vector<cplx> s(U + 1);
    s[0] = 0.5;
    for (int k = 1; k <= U; ++k) s[k] = (1.0 - (k % 2 ? -1.0 : 1.0)) / (cplx(0.0, std::numbers::pi * k));
    return s;
}

std::vector<cplx> scaled_exp_series(double a, int U) {
    std::vector<cplx> s(U + 1);
    double v = 1.0;
    for (int k = 0; k <= U; ++k) {
        s[k] = v;
        v *= a / (k + 1);
    }
    return s;
}

double exp_fit_error(double a, int U) {
    const auto f = sfp_fit(scaled_exp_series(a, U), {}, allocate_degrees(U, 0), circle);
    double e = 0.0;
    for (double x = -3.1; x <= 3.1; x += 0.01) e = std::max(e, std::abs(f(x) - std::exp(a * std::cos(x)) * std::cos(a * std::sin(x))));
    return e / std::exp(a);
}

/// Coefficients 0..U of f Q - P - sum L_s log(1 - z/eps_s).
std::vector<cplx> order_residual(const std::vector<cplx>& f, const SFPApproximant& a) {
    const int U = static_cast<int>(f.size()) - 1;
    std::vector<cplx> r(U + 1, 0.0);
    const auto& q = a.denominator();
    const auto& p = a.numerator();
    for (int j = 0; j <= U; ++j) {
        for (int m = 0; m < static_cast<int>(q.size()) && m <= j; ++m) r[j] += q[m] * f[j - m];
        if (j < static_cast<int>(p.size())) r[j] -= p[j];
        for (const auto& t : a.logs())
            for (int n = 0; n < static_cast<int>(t.coeffs.size()) && n < j; ++n)
                r[j] += t.coeffs[n] * std::pow(1.0 / t.jump, j - n) / double(j - n);
    }
    return r;
}

}  // namespace

TEST_CASE("Pade of the geometric series", "[sfp]") {
    const std::vector<cplx> b{1.0, 1.0};
    const auto r = pade_fit(b, 0, 1);
    REQUIRE(r.p.size() == 1);
    REQUIRE(r.q.size() == 2);
    CHECK(std::abs(r.p[0] - 1.0) <= 1e-15);
    CHECK(std::abs(r.q[0] - 1.0) <= 1e-15);
    CHECK(std::abs(r.q[1] + 1.0) <= 1e-15);
    const auto f = sfp_fit(b, {}, SfpDegrees{0, 1, {}}, circle);
    CHECK(std::abs(f.evaluate(0.5) - 2.0) <= 1e-15);
}

TEST_CASE("[1/1] Pade of exp", "[sfp]") {
    const std::vector<cplx> b{1.0, 1.0, 0.5};
    const auto r = pade_fit(b, 1, 1);
    CHECK(std::abs(r.p[0] - 1.0) <= 1e-15);
    CHECK(std::abs(r.p[1] - 0.5) <= 1e-15);
    CHECK(std::abs(r.q[0] - 1.0) <= 1e-15);
    CHECK(std::abs(r.q[1] + 0.5) <= 1e-15);
}

TEST_CASE("Pade with M = 0 is the truncated series", "[sfp]") {
    const std::vector<cplx> b{1.0, cplx(2.0, 1.0), -3.0, 0.25};
    const auto r = pade_fit(b, 3, 0);
    REQUIRE(r.q.size() == 1);
    for (int k = 0; k < 4; ++k) CHECK(std::abs(r.p[k] - b[k]) <= 1e-15);
    CHECK_THROWS_AS(pade_fit(b, 2, 2), DomainError);
    CHECK_THROWS_AS(pade_fit(b, -1, 1), DomainError);
}

TEST_CASE("-log(1 - z) is represented exactly", "[sfp]") {
    const int U = 1;
    std::vector<cplx> b(U + 1, 0.0);
    for (int k = 1; k <= U; ++k) b[k] = 1.0 / k;
    const cplx jump[1] = {1.0};
    const auto f = sfp_fit(b, jump, SfpDegrees{0, 0, {0}}, circle);
    REQUIRE(f.logs().size() == 1);
    CHECK(std::abs(f.logs()[0].coeffs[0] + 1.0) <= 1e-15);
    CHECK(std::abs(f.numerator()[0]) <= 1e-15);
    CHECK(f.denominator().size() == 1);
    CHECK(std::abs(f.denominator()[0] - 1.0) <= 1e-15);
    // the representation holds beyond the fitted coefficients
    CHECK(std::abs(f.evaluate(0.3) + std::log(0.7)) <= 1e-15);
}

TEST_CASE("smooth input without jumps reduces to Pade", "[sfp]") {
    const auto b = scaled_exp_series(2.0, 12);
    const auto f = sfp_fit(b, {}, SfpDegrees{6, 6, {}}, circle);
    const auto r = pade_fit(b, 6, 6);
    for (int k = 0; k <= 6; ++k) {
        CHECK(std::abs(f.numerator()[k] - r.p[k]) <= 1e-15);
        CHECK(std::abs(f.denominator()[k] - r.q[k]) <= 1e-15);
    }
}

TEST_CASE("unit step reconstruction removes the Gibbs error", "[sfp]") {
    const int U = 64;
    const auto s = step_series(U);
    const cplx jumps[2] = {1.0, -1.0};
    const auto f = sfp_fit(s, jumps, allocate_degrees(U, 2), circle);
    const double gap = 0.05 * circle.width();
    double sfp = 0.0, raw = 0.0;
    for (double x = -std::numbers::pi; x <= std::numbers::pi; x += 1e-3) {
        const double dist = std::min({std::abs(x), std::numbers::pi - std::abs(x)});
        if (dist < gap) continue;
        const double exact = x > 0.0 ? 1.0 : 0.0;
        sfp = std::max(sfp, std::abs(f(x) - exact));
        raw = std::max(raw, std::abs(cfs_eval(s, circle, x) - exact));
    }
    INFO("sfp " << sfp << " raw " << raw);
    CHECK(sfp <= 1e-8);
    CHECK(raw >= 1e-2);
    CHECK_THAT(f(std::numbers::pi / 2), WithinAbs(1.0, 1e-8));
    CHECK_THAT(f(-std::numbers::pi / 2), WithinAbs(0.0, 1e-8));
}

TEST_CASE("order conditions hold after the fit", "[sfp]") {
    const int U = 48;
    const auto s = step_series(U);
    const cplx jumps[2] = {1.0, -1.0};
    const auto f = sfp_fit(s, jumps, allocate_degrees(U, 2), circle);
    const auto r = order_residual(s, f);
    double norm = 0.0, worst = 0.0;
    for (const auto& v : s) norm = std::max(norm, std::abs(v));
    for (const auto& v : r) worst = std::max(worst, std::abs(v));
    CHECK(worst <= 1e-10 * norm);
    CHECK(f.residual() <= 1e-10);
}

TEST_CASE("fits are scale equivariant", "[sfp]") {
    const int U = 32;
    auto s = step_series(U);
    const cplx jumps[2] = {1.0, -1.0};
    const auto f = sfp_fit(s, jumps, allocate_degrees(U, 2), circle);
    const cplx lambda(-3.5, 0.0);
    for (auto& v : s) v *= lambda;
    const auto g = sfp_fit(s, jumps, allocate_degrees(U, 2), circle);
    for (double x : {-2.0, -0.7, 0.4, 1.9}) CHECK_THAT(g(x), WithinAbs(-3.5 * f(x), 1e-12));
}

TEST_CASE("error on an analytic input decays geometrically", "[sfp]") {
    double prev = exp_fit_error(8.0, 8);
    for (int U = 16; U <= 48 && prev > 1e-12; U += 8) {
        const double e = exp_fit_error(8.0, U);
        INFO("U " << U << " error " << e << " previous " << prev);
        CHECK((e <= 0.8 * prev || e <= 1e-12));
        prev = e;
    }
    CHECK(prev <= 1e-11);
}

TEST_CASE("degree allocation", "[sfp]") {
    const auto a = allocate_degrees(32, 1);
    CHECK(a.numerator == 13);
    REQUIRE(a.log_degrees.size() == 1);
    CHECK(a.denominator >= a.log_degrees[0]);
    CHECK(a.budget() == 32);
    const auto b = allocate_degrees(10, 0);
    CHECK(b.numerator == 4);
    CHECK(b.denominator == 6);
    for (int U = 8; U <= 512; U *= 2)
        for (int S = 0; S <= 3; ++S) {
            const auto d = allocate_degrees(U, S);
            CHECK(d.budget() == U);
            for (int n : d.log_degrees) CHECK(d.denominator >= n);
        }
    CHECK_THROWS_AS(allocate_degrees(3, 1), DomainError);
    CHECK_THROWS_AS(allocate_degrees(10, -1), DomainError);
}

TEST_CASE("fit argument errors", "[sfp]") {
    const auto s = step_series(8);
    const cplx off[1] = {cplx(0.5, 0.0)};
    CHECK_THROWS_AS(sfp_fit(s, off, SfpDegrees{3, 3, {0}}, circle), DomainError);
    CHECK_THROWS_AS(sfp_fit(s, {}, SfpDegrees{3, 3, {}}, circle), DomainError);
}

TEST_CASE("pole proximity is reported", "[sfp]") {
    const SFPApproximant f({1.0}, {1.0, -1.0}, {}, circle);
    CHECK_THROWS_AS(f(0.0), ConditioningError);
    CHECK(std::abs(f(1.0) - (1.0 / (1.0 - std::polar(1.0, 1.0))).real()) <= 1e-14);
    const auto e = f.evaluate_flagged(4.0);
    CHECK(e.extrapolated);
}

TEST_CASE("jump location", "[sfp]") {
    const auto bs = ModelSpec::black_scholes(0.2, 0.05, 0.0);
    const auto ivb = truncation_interval(bs, 1.0);
    CHECK(locate_jumps(density_coeffs(bs, 1.0, ivb, 64)).empty());

    const auto vg = parameter_set("VG1").model;
    const auto ivv = truncation_interval(vg, 0.1);
    const auto roots = locate_jumps(density_coeffs(vg, 0.1, ivv, 64));
    REQUIRE(!roots.empty());
    // the VG density is singular at its drift (r - q + omega) t
    const double mu = (vg.rate() - vg.dividend() + vg.omega()) * 0.1;
    double nearest = 1e9;
    for (double x : roots) nearest = std::min(nearest, std::abs(x - mu));
    INFO("drift " << mu);
    CHECK(nearest <= 1e-3 * ivv.width());

    // two exponential pieces meeting at x0 with a kink
    const double x0 = 0.7, s = 0.5;
    const TruncationInterval iv{-5.0, 5.0};
    CFSCoefficientSet set;
    set.interval = iv;
    set.U = 64;
    set.bhat.resize(65);
    for (int k = 0; k <= 64; ++k) {
        const cplx iw(0.0, iv.frequency(k));
        const cplx left = std::exp(iw * x0) * (1.0 - std::exp((iv.c - x0) * (1.0 / s + iw))) / (1.0 / s + iw);
        const cplx right = std::exp(iw * x0) * (1.0 - std::exp((x0 - iv.d) * (1.0 / s - iw))) / (1.0 / s - iw);
        set.bhat[k] = (left + right) / iv.width();
    }
    const auto kink = locate_jumps(set);
    double best = 1e9;
    for (double x : kink) best = std::min(best, std::abs(x - x0));
    INFO("found " << kink.size() << " points, nearest at distance " << best);
    CHECK(best <= 1e-3 * iv.width());
}
