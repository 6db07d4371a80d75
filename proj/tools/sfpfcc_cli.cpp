#include <algorithm>
#include <cctype>
#include <fstream>
#include <initializer_list>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sfpfcc/sfpfcc.hpp"

using json = nlohmann::json;
using namespace sfpfcc;

namespace {

struct ConfigError : std::runtime_error {
    ConfigError(const std::string& key, const std::string& msg) : std::runtime_error(key + ": " + msg) {}
};

struct Axis {
    bool range = false;
    double value = 0.0;
    double from = 0.0;
    double to = 0.0;
};

struct RunConfig {
    std::optional<ModelSpec> model;
    OptionContract contract;
    Axis S;
    Axis K;
    SpectralNumerics num;
    std::string out;
    int grid = 401;
};

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    return s;
}

double number(const json& j, const std::string& key) {
    if (!j.is_number()) throw ConfigError(key, "expected a number");
    return j.get<double>();
}

int integer(const json& j, const std::string& key) {
    if (!j.is_number_integer()) throw ConfigError(key, "expected an integer");
    return j.get<int>();
}

std::string text(const json& j, const std::string& key) {
    if (!j.is_string()) throw ConfigError(key, "expected a string");
    return j.get<std::string>();
}

double field(const json& block, const std::string& path, const char* name) {
    if (!block.contains(name)) throw ConfigError(path + "." + name, "missing");
    return number(block.at(name), path + "." + name);
}

void known_keys(const json& block, const std::string& path, std::initializer_list<const char*> keys) {
    for (const auto& [k, v] : block.items()) {
        if (std::none_of(keys.begin(), keys.end(), [&](const char* n) { return k == n; }))
            throw ConfigError(path.empty() ? k : path + "." + k, "unknown key");
    }
}

ModelSpec parse_model(const json& m) {
    if (!m.is_object()) throw ConfigError("model", "expected an object");
    known_keys(m, "model", {"kind", "r", "q", "sigma", "theta", "nu", "C", "G", "M", "Y", "alpha", "beta", "delta"});
    if (!m.contains("kind")) throw ConfigError("model.kind", "missing");
    const std::string kind = lower(text(m.at("kind"), "model.kind"));
    const double r = field(m, "model", "r");
    const double q = m.contains("q") ? number(m.at("q"), "model.q") : 0.0;
    try {
        if (kind == "bs" || kind == "black-scholes") return ModelSpec::black_scholes(field(m, "model", "sigma"), r, q);
        if (kind == "vg")
            return ModelSpec::variance_gamma(field(m, "model", "sigma"), field(m, "model", "theta"),
                                             field(m, "model", "nu"), r, q);
        if (kind == "cgmy")
            return ModelSpec::cgmy(field(m, "model", "C"), field(m, "model", "G"), field(m, "model", "M"),
                                   field(m, "model", "Y"), r, q);
        if (kind == "nig")
            return ModelSpec::nig(field(m, "model", "alpha"), field(m, "model", "beta"), field(m, "model", "delta"), r,
                                  q);
    } catch (const DomainError& e) {
        throw ConfigError("model", e.what());
    }
    throw ConfigError("model.kind", "unknown model '" + kind + "' (expected BS, VG, CGMY or NIG)");
}

ExerciseStyle parse_style(const std::string& s) {
    const std::string v = lower(s);
    if (v == "european") return ExerciseStyle::European;
    if (v == "bermudan") return ExerciseStyle::Bermudan;
    if (v == "american") return ExerciseStyle::American;
    if (v == "down-and-out" || v == "do") return ExerciseStyle::DownAndOut;
    if (v == "up-and-out" || v == "uo") return ExerciseStyle::UpAndOut;
    throw ConfigError("contract.style", "unknown style '" + s + "'");
}

Axis parse_axis(const json& j, const std::string& key) {
    Axis a;
    if (j.is_number()) {
        a.value = j.get<double>();
        return a;
    }
    if (!j.is_object() || !j.contains("from") || !j.contains("to"))
        throw ConfigError(key, "expected a number or {\"from\", \"to\"}");
    a.range = true;
    a.from = number(j.at("from"), key + ".from");
    a.to = number(j.at("to"), key + ".to");
    return a;
}

void apply_set(RunConfig& cfg, const std::string& name) {
    ParameterSet p = [&] {
        try {
            return parameter_set(name);
        } catch (const DomainError& e) {
            throw ConfigError("set", e.what());
        }
    }();
    cfg.model = p.model;
    cfg.contract = p.contract;
    const Axis range{true, 0.0, p.grid.front(), p.grid.back()};
    if (p.strike_grid) {
        cfg.K = range;
        cfg.S = Axis{false, p.spot};
    } else {
        cfg.S = range;
        cfg.K = Axis{false, p.contract.strike};
    }
    cfg.grid = static_cast<int>(p.grid.size());
}

void apply_config(RunConfig& cfg, const json& j) {
    if (!j.is_object()) throw ConfigError("config", "top level must be an object");
    known_keys(j, "", {"model", "contract", "numerics", "output"});
    if (j.contains("model")) cfg.model = parse_model(j.at("model"));
    if (j.contains("contract")) {
        const json& c = j.at("contract");
        if (!c.is_object()) throw ConfigError("contract", "expected an object");
        known_keys(c, "contract", {"style", "kind", "K", "S", "T", "L", "B"});
        if (c.contains("style")) cfg.contract.style = parse_style(text(c.at("style"), "contract.style"));
        if (c.contains("kind")) {
            const std::string k = lower(text(c.at("kind"), "contract.kind"));
            if (k != "call" && k != "put") throw ConfigError("contract.kind", "expected call or put");
            cfg.contract.kind = k == "call" ? OptionKind::Call : OptionKind::Put;
        }
        if (c.contains("K")) {
            cfg.K = parse_axis(c.at("K"), "contract.K");
            if (!cfg.K.range) cfg.contract.strike = cfg.K.value;
        }
        if (c.contains("S")) cfg.S = parse_axis(c.at("S"), "contract.S");
        if (c.contains("T")) cfg.contract.maturity = number(c.at("T"), "contract.T");
        if (c.contains("L")) cfg.contract.dates = integer(c.at("L"), "contract.L");
        if (c.contains("B")) {
            if (c.at("B").is_null())
                cfg.contract.barrier.reset();
            else
                cfg.contract.barrier = number(c.at("B"), "contract.B");
        }
    }
    if (j.contains("numerics")) {
        const json& n = j.at("numerics");
        if (!n.is_object()) throw ConfigError("numerics", "expected an object");
        known_keys(n, "numerics", {"U", "Ntilde", "Ltilde", "newton_tol", "newton_max_iter", "continuation", "horizon"});
        if (n.contains("U")) cfg.num.U = integer(n.at("U"), "numerics.U");
        if (n.contains("Ntilde")) cfg.num.cheb_degree = integer(n.at("Ntilde"), "numerics.Ntilde");
        if (n.contains("Ltilde")) cfg.num.truncation_width = number(n.at("Ltilde"), "numerics.Ltilde");
        if (n.contains("newton_tol")) cfg.num.newton_tol = number(n.at("newton_tol"), "numerics.newton_tol");
        if (n.contains("newton_max_iter"))
            cfg.num.newton_max_iter = integer(n.at("newton_max_iter"), "numerics.newton_max_iter");
        if (n.contains("continuation")) {
            const std::string s = lower(text(n.at("continuation"), "numerics.continuation"));
            if (s == "auto")
                cfg.num.continuation = ContinuationSource::Auto;
            else if (s == "cfs")
                cfg.num.continuation = ContinuationSource::Cfs;
            else if (s == "sfp")
                cfg.num.continuation = ContinuationSource::Sfp;
            else
                throw ConfigError("numerics.continuation", "expected auto, cfs or sfp");
        }
        if (n.contains("horizon")) {
            const std::string s = lower(text(n.at("horizon"), "numerics.horizon"));
            if (s != "maturity" && s != "step") throw ConfigError("numerics.horizon", "expected maturity or step");
            cfg.num.horizon = s == "step" ? IntervalHorizon::Step : IntervalHorizon::Maturity;
        }
    }
    if (j.contains("output")) {
        const json& o = j.at("output");
        if (!o.is_object()) throw ConfigError("output", "expected an object");
        known_keys(o, "output", {"csv", "grid"});
        if (o.contains("csv")) cfg.out = text(o.at("csv"), "output.csv");
        if (o.contains("grid")) cfg.grid = integer(o.at("grid"), "output.grid");
    }
}

void check(const RunConfig& cfg) {
    if (!cfg.model) throw ConfigError("model", "missing (give --config with a model block or --set)");
    if (cfg.S.range == cfg.K.range) throw ConfigError("contract.S", "exactly one of contract.S and contract.K must be a range");
    if (cfg.grid < 1) throw ConfigError("output.grid", "must be positive");
    if (cfg.num.U < 8) throw ConfigError("numerics.U", "must be at least 8");
    if (cfg.num.cheb_degree < 2) throw ConfigError("numerics.Ntilde", "must be at least 2");
    if (!(cfg.num.truncation_width >= 8.0 && cfg.num.truncation_width <= 12.0))
        throw ConfigError("numerics.Ltilde", "must lie in [8, 12]");
    if (!cfg.S.range && !(cfg.S.value > 0.0)) throw ConfigError("contract.S", "must be positive");
    if (!cfg.K.range && !(cfg.K.value > 0.0)) throw ConfigError("contract.K", "must be positive");
    if (cfg.contract.is_barrier() && !cfg.contract.barrier) throw ConfigError("contract.B", "required for barriers");
}

std::vector<double> axis_points(const RunConfig& cfg) {
    const Axis& a = cfg.S.range ? cfg.S : cfg.K;
    return linspace(a.from, a.to, cfg.grid);
}

OptionContract contract_for(const RunConfig& cfg) {
    OptionContract c = cfg.contract;
    if (!cfg.K.range) c.strike = cfg.K.value;
    return c;
}

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<double>> cols;
};

Table price_table(const RunConfig& cfg) {
    const auto pts = axis_points(cfg);
    const OptionContract c = contract_for(cfg);
    Table t{{cfg.S.range ? "S" : "K", "price"}, {pts}};
    if (c.style == ExerciseStyle::American) {
        const auto curve = american_price(*cfg.model, c, c.dates, cfg.num);
        std::vector<double> v;
        for (double p : pts) v.push_back(cfg.S.range ? curve.value(p, c.strike) : curve.value(cfg.S.value, p));
        t.cols.push_back(v);
        return t;
    }
    if (c.is_barrier() && cfg.K.range) {
        t.cols.push_back(barrier_strike_prices(*cfg.model, c, cfg.S.value, pts, cfg.num));
        return t;
    }
    const auto curve =
        c.is_barrier() ? barrier_price(*cfg.model, c, cfg.num) : bermudan_price(*cfg.model, c, cfg.num);
    t.cols.push_back(cfg.S.range ? curve.at_spots(pts) : curve.at_strikes(cfg.S.value, pts));
    return t;
}

Table greeks_table(const RunConfig& cfg) {
    const OptionContract c = contract_for(cfg);
    if (c.style == ExerciseStyle::American)
        throw ConfigError("contract.style", "greeks need a bermudan, european or barrier contract");
    if (c.is_barrier() && cfg.K.range) throw ConfigError("contract.K", "barrier greeks need a spot range");
    const auto pts = axis_points(cfg);
    const auto curve =
        c.is_barrier() ? barrier_price(*cfg.model, c, cfg.num) : bermudan_price(*cfg.model, c, cfg.num);
    const auto g = greeks_curve(curve, cfg.num.degrees);
    Table t{{cfg.S.range ? "S" : "K", "price", "delta", "gamma"}, {pts, {}, {}, {}}};
    for (double p : pts) {
        const double S = cfg.S.range ? p : cfg.S.value;
        const double K = cfg.S.range ? c.strike : p;
        t.cols[1].push_back(curve.value(S, K));
        t.cols[2].push_back(g.delta.value(S, K));
        t.cols[3].push_back(g.gamma.value(S, K));
    }
    return t;
}

void write_table(std::ostream& os, const Table& t) {
    for (std::size_t i = 0; i < t.header.size(); ++i) os << (i ? "," : "") << t.header[i];
    os << '\n';
    const std::size_t rows = t.cols.empty() ? 0 : t.cols.front().size();
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t i = 0; i < t.cols.size(); ++i) os << (i ? "," : "") << format_number(t.cols[i][r]);
        os << '\n';
    }
}

template <class F>
void emit(const std::string& path, F&& write) {
    if (path.empty()) {
        write(std::cout);
        return;
    }
    std::ofstream f(path);
    if (!f) throw ConfigError("output.csv", "cannot open '" + path + "' for writing");
    write(f);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"SFP-FCC option pricing under exponential Levy models"};
    app.require_subcommand(1);

    std::string config_path, set_name, out;
    std::optional<int> U, Ntilde, L, grid;
    std::optional<double> Ltilde;
    const auto common = [&](CLI::App* s) {
        s->add_option("--config", config_path, "JSON run configuration");
        s->add_option("--set", set_name, "parameter set: VG1, CGMY1, CGMY2 or NIG1");
        s->add_option("--U", U, "Fourier terms");
        s->add_option("--Ntilde", Ntilde, "Chebyshev degree of continuation values");
        s->add_option("--L", L, "exercise or monitoring dates (Richardson level for american)");
        s->add_option("--Ltilde", Ltilde, "truncation interval width in [8, 12]");
        s->add_option("--out", out, "CSV output path (default stdout)");
        s->add_option("--grid", grid, "number of grid points");
    };
    auto* price = app.add_subcommand("price", "price curve on a spot or strike grid");
    auto* greeks = app.add_subcommand("greeks", "price, delta and gamma on a grid");
    auto* weights = app.add_subcommand("fcc-weights", "FCC weights w_n(k), n = 0..N");
    auto* jumps = app.add_subcommand("locate-jumps", "non-smooth points of the one-step density");
    auto* bench = app.add_subcommand("bench", "convergence sweeps of a parameter set");
    for (auto* s : {price, greeks, jumps, bench}) common(s);
    double k = 0.0;
    int n = 64;
    weights->add_option("--k", k, "frequency")->required();
    weights->add_option("--n", n, "highest Chebyshev index");
    weights->add_option("--out", out, "CSV output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (weights->parsed()) {
            if (n < 0) throw ConfigError("n", "must be non-negative");
            const auto w = fcc_weights(k, n);
            emit(out, [&](std::ostream& os) {
                os << "n,re,im\n";
                for (int i = 0; i <= n; ++i)
                    os << i << ',' << format_number(w.w[i].real()) << ',' << format_number(w.w[i].imag()) << '\n';
            });
            return 0;
        }
        if (bench->parsed()) {
            if (set_name.empty()) throw ConfigError("set", "bench needs --set");
            const auto names = parameter_set_names();
            if (std::find(names.begin(), names.end(), set_name) == names.end())
                throw ConfigError("set", "unknown parameter set '" + set_name + "'");
            const auto reports = run_benchmark(set_name);
            emit(out, [&](std::ostream& os) { write_bench_csv(os, reports); });
            return 0;
        }

        RunConfig cfg;
        if (!set_name.empty()) apply_set(cfg, set_name);
        if (!config_path.empty()) {
            std::ifstream f(config_path);
            if (!f) throw ConfigError("config", "cannot read '" + config_path + "'");
            json j;
            try {
                j = json::parse(f);
            } catch (const json::parse_error& e) {
                throw ConfigError("config", e.what());
            }
            apply_config(cfg, j);
        }
        if (U) cfg.num.U = *U;
        if (Ntilde) cfg.num.cheb_degree = *Ntilde;
        if (L) cfg.contract.dates = *L;
        if (Ltilde) cfg.num.truncation_width = *Ltilde;
        if (grid) cfg.grid = *grid;
        if (!out.empty()) cfg.out = out;

        if (jumps->parsed()) {
            if (!cfg.model) throw ConfigError("model", "missing (give --config with a model block or --set)");
            const double dt = cfg.contract.maturity / std::max(cfg.contract.dates, 1);
            const auto iv = truncation_interval(*cfg.model, dt, cfg.num.truncation_width);
            const auto xs = locate_jumps(density_coeffs(*cfg.model, dt, iv, cfg.num.U));
            emit(cfg.out, [&](std::ostream& os) {
                os << "index,x\n";
                for (std::size_t i = 0; i < xs.size(); ++i) os << i << ',' << format_number(xs[i]) << '\n';
            });
            return 0;
        }
        check(cfg);
        const Table t = price->parsed() ? price_table(cfg) : greeks_table(cfg);
        emit(cfg.out, [&](std::ostream& os) { write_table(os, t); });
        return 0;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 1;
    } catch (const ContractError& e) {
        std::cerr << "config error: contract: " << e.what() << '\n';
        return 1;
    } catch (const DomainError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 1;
    } catch (const NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "numerical error: " << e.what() << '\n';
        return 2;
    }
}
