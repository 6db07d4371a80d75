#pragma once

#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <string>
#include <vector>

#include "sfpfcc/exercise_engine.hpp"
#include "sfpfcc/parameter_sets.hpp"

namespace sfpfcc {

/// One sweep row: a run at (U, Ntilde, L) against a named reference on the
/// set's grid. L counts dates, or is the Richardson level for American
/// rows. rinf_away skips |log(S/K)| < 0.05 and is NaN when unused.
struct BenchReport {
    std::string method = "SFP-FCC";
    std::string set{};
    std::string style{};
    std::string sweep{};
    int U = 0;
    int Ntilde = 0;
    int L = 0;
    std::string reference{};
    std::vector<double> grid{};
    std::vector<double> values{};
    std::vector<double> ref{};
    double rinf = 0.0;
    double r2 = 0.0;
    double rinf_away = std::numeric_limits<double>::quiet_NaN();
    double seconds = 0.0;
};

inline void score(BenchReport& r, double strike, bool away) {
    r.rinf = 0.0;
    double s2 = 0.0;
    double ra = 0.0;
    for (std::size_t i = 0; i < r.values.size(); ++i) {
        const double e = std::abs(r.values[i] - r.ref[i]);
        r.rinf = std::max(r.rinf, e);
        s2 += e * e;
        if (std::abs(std::log(r.grid[i] / strike)) >= 0.05) ra = std::max(ra, e);
    }
    r.r2 = std::sqrt(s2);
    if (away) r.rinf_away = ra;
}

inline std::string style_tag(const OptionContract& c) {
    const std::string k = c.kind == OptionKind::Call ? "call" : "put";
    switch (c.style) {
    case ExerciseStyle::European: return "european_" + k;
    case ExerciseStyle::Bermudan: return "bermudan_" + k;
    case ExerciseStyle::American: return "american_" + k;
    case ExerciseStyle::DownAndOut: return "do_" + k;
    case ExerciseStyle::UpAndOut: return "uo_" + k;
    }
    return k;
}

namespace detail {

inline SpectralNumerics numerics(int U, int Nt) {
    SpectralNumerics n;
    n.U = U;
    n.cheb_degree = Nt;
    return n;
}

inline double elapsed(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

inline std::vector<BenchReport> bench_vg1(const ParameterSet& p) {
    std::vector<BenchReport> out;
    const auto& S = p.grid;
    const auto eu = european_price_curve(p.model, p.contract.kind, p.contract.strike, p.contract.maturity,
                                         numerics(256, 128));
    const auto eref = eu.at_spots(S);
    for (int L : {100, 1000, 10000}) {
        OptionContract c = p.contract;
        c.dates = L;
        const auto curve = bermudan_price(p.model, c, numerics(32, 128));
        BenchReport r{.set = p.name, .style = style_tag(c), .sweep = "L", .U = 32, .Ntilde = 128, .L = L,
                      .reference = "european U=256", .grid = S};
        r.values = curve.at_spots(S);
        r.ref = eref;
        r.seconds = curve.diagnostics().seconds;
        score(r, c.strike, true);
        out.push_back(std::move(r));
    }
    const auto ref = bermudan_price(p.model, p.contract, numerics(64, 512)).at_spots(S);
    for (int U : {8, 16, 32}) {
        const auto curve = bermudan_price(p.model, p.contract, numerics(U, 128));
        BenchReport r{.set = p.name, .style = style_tag(p.contract), .sweep = "U", .U = U, .Ntilde = 128,
                      .L = p.contract.dates, .reference = "bermudan U=64 Ntilde=512", .grid = S};
        r.values = curve.at_spots(S);
        r.ref = ref;
        r.seconds = curve.diagnostics().seconds;
        score(r, p.contract.strike, true);
        out.push_back(std::move(r));
    }
    return out;
}

inline std::vector<BenchReport> bench_cgmy1(const ParameterSet& p) {
    std::vector<BenchReport> out;
    const auto& S = p.grid;
    const auto ref = american_large_l(p.model, p.contract, 1024, numerics(256, 512)).at_spots(S);
    const auto row = [&](const std::string& sweep, int Lr, int Nt) {
        const auto curve = american_price(p.model, p.contract, Lr, numerics(256, Nt));
        BenchReport r{.set = p.name, .style = style_tag(p.contract), .sweep = sweep, .U = 256, .Ntilde = Nt,
                      .L = Lr, .reference = "bermudan 2^10 dates U=256 Ntilde=512", .grid = S};
        r.values = curve.at_spots(S);
        r.ref = ref;
        r.seconds = curve.seconds();
        score(r, p.contract.strike, false);
        out.push_back(std::move(r));
    };
    for (int Lr = 0; Lr <= 3; ++Lr) row("L", Lr, 128);
    for (int Nt : {64, 128, 256, 512}) row("Ntilde", 2, Nt);
    return out;
}

inline std::vector<BenchReport> bench_barrier(const ParameterSet& p, std::initializer_list<int> Us, int Nt, int Uref) {
    std::vector<BenchReport> out;
    for (OptionKind kind : {OptionKind::Call, OptionKind::Put}) {
        OptionContract c = p.contract;
        c.kind = kind;
        const auto run = [&](int U) {
            if (p.strike_grid) return barrier_strike_prices(p.model, c, p.spot, p.grid, numerics(U, Nt));
            return barrier_price(p.model, c, numerics(U, Nt)).at_spots(p.grid);
        };
        const auto ref = run(Uref);
        for (int U : Us) {
            const auto t0 = std::chrono::steady_clock::now();
            BenchReport r{.set = p.name, .style = style_tag(c), .sweep = "U", .U = U, .Ntilde = Nt, .L = c.dates,
                          .reference = "U=" + std::to_string(Uref), .grid = p.grid};
            r.values = run(U);
            r.seconds = elapsed(t0);
            r.ref = ref;
            score(r, p.strike_grid ? p.spot : c.strike, false);
            out.push_back(std::move(r));
        }
    }
    return out;
}

}  // namespace detail

/// Convergence sweeps of a named parameter set:
///   VG1    Bermudan call, U=32 over L in {100, 1000, 10000} against the
///          European curve, and U in {8, 16, 32} at L=1000
///   CGMY1  American put, Richardson level 0..3 and Ntilde in {64..512}
///   CGMY2  UO call/put, U in {8, ..., 128}
///   NIG1   DO call/put on 80 strikes, U in {64, 128, 256}
inline std::vector<BenchReport> run_benchmark(const std::string& set) {
    const ParameterSet p = parameter_set(set);
    if (set == "VG1") return detail::bench_vg1(p);
    if (set == "CGMY1") return detail::bench_cgmy1(p);
    if (set == "CGMY2") return detail::bench_barrier(p, {8, 16, 32, 64, 128}, 128, 256);
    return detail::bench_barrier(p, {64, 128, 256}, 256, 512);
}

inline std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

/// CSV with one line per grid point of every report.
inline void write_bench_csv(std::ostream& os, const std::vector<BenchReport>& reports) {
    os << "set,style,param,value,ref,abs_err,Rinf,R2,seconds\n";
    for (const auto& r : reports) {
        const std::string axis = r.set == "NIG1" ? "K" : "S";
        for (std::size_t i = 0; i < r.values.size(); ++i) {
            os << r.set << ',' << r.style << ",U=" << r.U << ";Ntilde=" << r.Ntilde << ";L=" << r.L << ';' << axis
               << '=' << format_number(r.grid[i]) << ',' << format_number(r.values[i]) << ','
               << format_number(r.ref[i]) << ',' << format_number(std::abs(r.values[i] - r.ref[i])) << ','
               << format_number(r.rinf) << ',' << format_number(r.r2) << ',' << format_number(r.seconds) << '\n';
        }
    }
}

}  // namespace sfpfcc
