#include "pldiv/reference_math.hpp"

#include <cmath>

#include "pldiv/errors.hpp"

namespace pldiv {

int floor_log2(double x) {
    if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("floor_log2: x must be > 0");
    int z = std::ilogb(x);
    // ilogb is exact for normal and subnormal doubles; guard the contract anyway
    if (std::ldexp(x, -z) < 1.0) --z;
    if (std::ldexp(x, -z) >= 2.0) ++z;
    return z;
}

double linear_approx(double x, double C) {
    int z = floor_log2(x);
    double m = std::ldexp(x, -z);
    return std::ldexp(C - m, -(z + 1));
}

double fractional_position(double x) {
    int z = floor_log2(x);
    return std::ldexp(x, -z) - 1.0;
}

double correction_exact(double a) {
    if (!(a >= 0.0 && a <= 1.0)) throw DomainError("correction_exact: a must be in [0,1]");
    double u = 1.0 + a;
    return 2.0 / (3.0 * u - u * u);
}

double corrected_reciprocal(double x, const CorrectionPolynomial& poly) {
    double a = fractional_position(x);
    return eval_poly(poly, a) * linear_approx(x, 3.0);
}

}  // namespace pldiv
