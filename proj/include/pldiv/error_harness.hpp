#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "pldiv/divider_model.hpp"

namespace pldiv {

enum class SweepModel {
    real_poly,    // corrected_reciprocal with a table polynomial
    real_gamma,   // exact correction in place of the polynomial (sanity reference)
    fixed_point,  // bit-exact divider with w = 1
};

enum class SweepReference { exact, optimal16 };

// Grid: with step set, the closed arithmetic grid x = start + i*step.
// Otherwise points_per_octave uniform points per octave, x = 2^z*(1 + j/N),
// j = 1..N, i.e. left-open right-closed within (start, end].
struct SweepSpec {
    SweepModel model = SweepModel::real_poly;
    int degree = 2;
    double x_start = 1.0;
    double x_end = 256.0;
    std::optional<double> step;
    int points_per_octave = 4096;
    SweepReference reference = SweepReference::exact;
    DividerConfig config;  // used by fixed_point (degree is taken from `degree`)
};

struct ErrorRow {
    double x = 0.0;
    double approx = 0.0;
    double exact = 0.0;
    double abs_err = 0.0;
    double rel_err = 0.0;  // x * abs_err
};

struct Summary {
    double max_abs = 0.0;
    double argmax_abs = 0.0;
    double max_rel = 0.0;
    double argmax_rel = 0.0;
};

// 1/x in double, rounded to the nearest multiple of 2^-16.
double optimal_16bit(double x);

std::vector<ErrorRow> sweep(const SweepSpec& spec);

Summary summarize(const std::vector<ErrorRow>& rows);

// Header `x,approx,exact,abs_err,rel_err`, 17 significant digits per field.
void write_csv(std::ostream& os, const std::vector<ErrorRow>& rows);

// {model, degree, range, max_abs, argmax_abs, max_rel, argmax_rel}
std::string summary_to_json(const SweepSpec& spec, const Summary& s);

// 17-significant-digit decimal, stable across runs.
std::string format_g17(double v);

}  // namespace pldiv
