#pragma once

#include <complex>

#include "sfpfcc/errors.hpp"

namespace sfpfcc {

using cplx = std::complex<double>;

/// A value together with a flag telling whether it was obtained outside the
/// fitted range.
struct Evaluation {
    double value;
    bool extrapolated;
};

}  // namespace sfpfcc
