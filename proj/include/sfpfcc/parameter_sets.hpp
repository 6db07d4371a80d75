#pragma once

#include <string>
#include <vector>

#include "sfpfcc/exercise_engine.hpp"

namespace sfpfcc {

/// Named test case: model, contract and the evaluation grid. For NIG1 the
/// grid runs over strikes at a fixed spot, otherwise over spots.
struct ParameterSet {
    std::string name;
    ModelSpec model;
    OptionContract contract;
    std::vector<double> grid;
    bool strike_grid = false;
    double spot = 0.0;
};

inline std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = n == 1 ? a : a + (b - a) * i / (n - 1);
    return v;
}

inline ParameterSet parameter_set(const std::string& name) {
    if (name == "VG1")
        return {name, ModelSpec::variance_gamma(0.12, -0.14, 0.2, 0.1, 0.0),
                OptionContract{OptionKind::Call, ExerciseStyle::Bermudan, 90.0, 0.1, 1000, {}}, linspace(80, 120, 401)};
    if (name == "CGMY1")
        return {name, ModelSpec::cgmy(1.0, 5.0, 5.0, 0.5, 0.1, 0.0),
                OptionContract{OptionKind::Put, ExerciseStyle::American, 1.0, 1.0, 2, {}}, linspace(0.5, 1.5, 14)};
    if (name == "CGMY2")
        return {name, ModelSpec::cgmy(4.0, 50.0, 60.0, 0.7, 0.05, 0.02),
                OptionContract{OptionKind::Call, ExerciseStyle::UpAndOut, 100.0, 1.0, 12, 120.0},
                linspace(80, 120, 41)};
    if (name == "NIG1")
        return {name, ModelSpec::nig(15.0, -5.0, 0.5, 0.05, 0.02),
                OptionContract{OptionKind::Call, ExerciseStyle::DownAndOut, 100.0, 1.0, 12, 80.0},
                linspace(80, 120, 80), true, 100.0};
    throw DomainError("unknown parameter set '" + name + "' (expected VG1, CGMY1, CGMY2 or NIG1)");
}

inline const std::vector<std::string>& parameter_set_names() {
    static const std::vector<std::string> names{"VG1", "CGMY1", "CGMY2", "NIG1"};
    return names;
}

}  // namespace sfpfcc
