#pragma once

#include <cstdint>
#include <string>

#include "pldiv/errors.hpp"

namespace pldiv {

enum class Rounding { truncate, nearest_even };

// Binary fixed-point layout: int_bits before the point (sign excluded), frac_bits after.
// Total width capped at 64 so raw values always fit an int64_t.
struct QFormat {
    int int_bits = 0;
    int frac_bits = 0;
    bool is_signed = false;

    int width() const { return int_bits + frac_bits + (is_signed ? 1 : 0); }
    int64_t max_raw() const;
    int64_t min_raw() const;  // 0 if unsigned
    double step() const;      // 2^-frac_bits
    double max_value() const { return static_cast<double>(max_raw()) * step(); }
    double min_value() const { return static_cast<double>(min_raw()) * step(); }

    bool operator==(const QFormat&) const = default;
    std::string str() const;  // "Q16.16u"
};

QFormat make_qformat(int int_bits, int frac_bits, bool is_signed = false);
QFormat parse_qformat(const std::string& text);  // "Q16.16", "Q1.17u", "Q3.17s"

// A raw two's-complement integer plus its format. Value = raw * 2^-frac_bits.
struct FixedPoint {
    int64_t raw = 0;
    QFormat format;

    double to_real() const;
    bool operator==(const FixedPoint&) const = default;
};

// Checked constructor: raw must lie in the format's representable range.
FixedPoint make_fixed(int64_t raw, QFormat fmt);

// Real -> fixed. nearest_even is meant for compile-time constants, truncate for datapath values.
FixedPoint quantize(double v, QFormat fmt, Rounding mode);

// Full-precision integer product, then truncation (floor) to out.frac_bits.
FixedPoint fx_mul(FixedPoint a, FixedPoint b, QFormat out);

// Exact adds on aligned frac_bits. Result int_bits = max of operands;
// fx_sub always yields a signed format since differences can go negative.
FixedPoint fx_add(FixedPoint a, FixedPoint b);
FixedPoint fx_sub(FixedPoint a, FixedPoint b);

// k > 0 shifts right (floor), k < 0 shifts left (checked). Format unchanged.
FixedPoint fx_shift(FixedPoint a, int k);

// Change frac_bits keeping the value: widening is exact (checked), narrowing truncates.
// Not a hardware op, just rescaling plumbing between stages of differing resolution.
FixedPoint fx_rescale(FixedPoint a, int new_frac_bits, int new_int_bits, bool new_signed);

// Position of the most significant set bit relative to the binary point.
int leading_one(FixedPoint x);

}  // namespace pldiv
