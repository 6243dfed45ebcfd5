#pragma once

#include <string>
#include <vector>

#include "pldiv/errors.hpp"

namespace pldiv {

enum class Provenance { fitted, table, derived };

// Correction polynomial p(a) = sum c_j a^j on [0, 1].
// Coefficients are stored ascending (c0 first). The built-in table lists them
// descending, the loader reverses; derived polynomials may have any shape.
struct CorrectionPolynomial {
    int degree = 0;
    std::vector<double> coeffs;  // size degree+1, ascending
    Provenance provenance = Provenance::derived;
};

CorrectionPolynomial make_polynomial(int degree, std::vector<double> coeffs_ascending,
                                     Provenance provenance);

// Node grid and degree for the least-squares fit.
// The grid is theta_k = theta_lo + k*theta_step for k = 0,1,... while theta_k <= theta_hi
// (closed-interval truncation; no extra endpoint is appended). With defaults this yields
// 314160 nodes, the grid that regenerates the built-in table.
struct FitSpec {
    int degree = 2;
    double theta_step = 1e-5;
    double theta_lo = -3.14159265358979323846;  // -pi
    double theta_hi = 0.0;
};

// Degree-2 hardware form c2*(a-0.5)^2 + Cprime.
struct FactoredDeg2 {
    double c2 = 0.0;
    double cprime = 0.0;  // c0 - 0.25*c2
};

// Degree-4 hardware form scale*(q1_const + q1_lin*a + a^2)*(q2_const + q2_lin*a + a^2).
struct FactoredDeg4 {
    double scale = 0.0;
    double q1_const = 0.0;
    double q1_lin = 0.0;
    double q2_const = 0.0;
    double q2_lin = 0.0;
};

// a_k = (cos(theta_k)+1)/2 over the FitSpec theta grid, ascending in a.
std::vector<double> chebyshev_nodes(const FitSpec& spec);

// Unweighted least squares of gamma over the nodes, solved by Householder QR
// (never normal equations).
CorrectionPolynomial fit_correction(const FitSpec& spec);

// Built-in coefficients, degrees 2..16 even.
CorrectionPolynomial table_polynomial(int degree);
const std::vector<int>& table_degrees();

// Horner evaluation.
double eval_poly(const CorrectionPolynomial& poly, double a);

// Requires degree 2 and c1 ~= -c2 (|c1+c2| <= 1e-6), which the factoring exploits.
FactoredDeg2 factor_degree2(const CorrectionPolynomial& poly);

double eval_factored2(const FactoredDeg2& f, double a);
double eval_factored4(const FactoredDeg4& f, double a);

// Symbolic expansion of the factored quartic into 5 ascending coefficients.
CorrectionPolynomial expand_factored_quartic(const FactoredDeg4& f);

// The degree-4 factorization constants used by the hardware model.
FactoredDeg4 quartic_constants();
// Same constants with the linear terms replaced by the shift-realizable -2.5 and 0.5.
FactoredDeg4 quartic_constants_rounded_linear();

// {degree, coeffs_ascending[], provenance}
std::string polynomial_to_json(const CorrectionPolynomial& poly);
CorrectionPolynomial polynomial_from_json(const std::string& text);

}  // namespace pldiv
