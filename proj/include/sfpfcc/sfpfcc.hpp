#pragma once

#include "sfpfcc/bench.hpp"
#include "sfpfcc/cheb_approx.hpp"
#include "sfpfcc/common.hpp"
#include "sfpfcc/errors.hpp"
#include "sfpfcc/european.hpp"
#include "sfpfcc/exercise_engine.hpp"
#include "sfpfcc/fcc_quadrature.hpp"
#include "sfpfcc/fourier_payoff.hpp"
#include "sfpfcc/levy_models.hpp"
#include "sfpfcc/oracles.hpp"
#include "sfpfcc/parameter_sets.hpp"
#include "sfpfcc/price_curve.hpp"
#include "sfpfcc/sfp_core.hpp"
