#pragma once

#include "pldiv/polyfit.hpp"

namespace pldiv {

// Double-precision reference layer. Everything here is exact real arithmetic
// (up to double rounding); the fixed-point model is checked against it.

// z with 2^z <= x < 2^(z+1). Exponent extraction, no log call.
int floor_log2(double x);

// y_l(x, C) = (C - x*2^-z) * 2^-(z+1). The chord approximation of 1/x on the octave of x.
double linear_approx(double x, double C = 3.0);

// a = x*2^-z - 1, in [0, 1).
double fractional_position(double x);

// gamma(a) = 2 / (3(1+a) - (1+a)^2), the exact correction on [0, 1].
double correction_exact(double a);

// p(a) * y_l(x, 3): the real-valued model of the whole method.
double corrected_reciprocal(double x, const CorrectionPolynomial& poly);

}  // namespace pldiv
