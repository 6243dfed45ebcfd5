#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "pldiv/fixed_point.hpp"

namespace pldiv {

// Architecture selection and operand widths. Defaults match the synthesis
// scenario: integer x up to 16 bits, fractional w in Q16.16, all internal
// signals truncated to 17 fractional bits, result in Q1.16.
struct DividerConfig {
    int degree = 2;  // 2 or 4
    QFormat x_format = QFormat{16, 0, false};
    QFormat w_format = QFormat{16, 16, false};
    int internal_frac_bits = 17;
    QFormat out_format = QFormat{1, 16, false};
};

void validate_config(const DividerConfig& cfg);

// Datapath constants quantized (nearest-even) to internal_frac_bits.
struct DividerConstants {
    FixedPoint c2;        // degree-2 quadratic coefficient
    FixedPoint cprime;    // degree-2 offset c0 - 0.25*c2
    FixedPoint k0;        // quartic scale
    FixedPoint k1;        // quartic q1 constant
    FixedPoint k2;        // quartic q2 constant
    FixedPoint three;     // exact
    FixedPoint one_point_five;  // exact
    FixedPoint one;       // exact
};

DividerConstants divider_constants(const DividerConfig& cfg);

// Every wire of the diagram, after each stage truncation. y_l keeps the
// (3 - m) subtractor raw with the 2^-(z+1) fold expressed through frac_bits,
// so its value is exact and the raw matches the wire.
struct DividerTrace {
    int z = 0;
    FixedPoint m;
    FixedPoint a_signal;
    FixedPoint correction;
    FixedPoint y_l;
    FixedPoint w_shifted;
    FixedPoint result;
    DividerConstants constants;
};

// (m, z) with m = x*2^-z in [1, 2) at internal_frac_bits resolution.
std::pair<FixedPoint, int> normalize(FixedPoint x, const DividerConfig& cfg);

// w/x through the degree-2 architecture: corr = c2*(m-1.5)^2 + Cprime,
// result = (corr * (3-m)) * (w * 2^-(z+1)), truncating at every stage.
std::pair<FixedPoint, DividerTrace> divide_deg2(FixedPoint w, FixedPoint x,
                                                const DividerConfig& cfg);

// Degree-4 architecture: corr = k0*(k1 - 2.5a + a^2)*(k2 + 0.5a + a^2) with
// the linear terms realized as shifts and adds.
std::pair<FixedPoint, DividerTrace> divide_deg4(FixedPoint w, FixedPoint x,
                                                const DividerConfig& cfg);

// Dispatch on cfg.degree.
std::pair<FixedPoint, DividerTrace> divide(FixedPoint w, FixedPoint x, const DividerConfig& cfg);

// divide with w = 1 exactly.
FixedPoint reciprocal(FixedPoint x, const DividerConfig& cfg);

// One stimulus/expected line for an HDL testbench.
struct TestVector {
    uint64_t x_raw = 0;
    uint64_t w_raw = 0;
    int degree = 2;
    uint64_t result_raw = 0;
    int z = 0;
};

std::string format_vector_line(const TestVector& v);
TestVector parse_vector_line(const std::string& line);  // throws ConfigError on bad lines

// Seeded random stimuli; w is capped at 1.9*x so the output format cannot overflow.
std::vector<TestVector> generate_vectors(const DividerConfig& cfg, int count, uint64_t seed);

void write_vectors(std::ostream& os, const std::vector<TestVector>& vectors);
std::vector<TestVector> read_vectors(std::istream& is);

}  // namespace pldiv
