#include "pldiv/fixed_point.hpp"

#include <bit>
#include <cctype>
#include <cmath>
#include <cstdio>

namespace pldiv {

namespace {

int64_t pow2_minus_one(int bits) {
    return bits >= 63 ? INT64_MAX : (int64_t{1} << bits) - 1;
}

// floor division by 2^k for possibly negative values, any width
__int128 floor_shift_right(__int128 v, int k) {
    if (k <= 0) return v;
    if (k >= 127) return v < 0 ? -1 : 0;
    return v >> k;  // arithmetic shift, floor semantics
}

void check_width(const QFormat& f) {
    if (f.int_bits < 0 || f.frac_bits < 0)
        throw ConfigError("QFormat: negative bit counts");
    if (f.width() > 64 || f.width() == 0)
        throw ConfigError("QFormat: width " + std::to_string(f.width()) + " outside [1,64]");
    // raw lives in an int64_t, so at most 63 value bits either way
    if (f.int_bits + f.frac_bits > 63)
        throw ConfigError("QFormat: more than 63 value bits");
}

}  // namespace

int64_t QFormat::max_raw() const {
    return pow2_minus_one(int_bits + frac_bits);
}

int64_t QFormat::min_raw() const {
    if (!is_signed) return 0;
    int mag = int_bits + frac_bits;
    return mag >= 63 ? INT64_MIN : -(int64_t{1} << mag);
}

double QFormat::step() const {
    return std::ldexp(1.0, -frac_bits);
}

std::string QFormat::str() const {
    char buf[32];
    std::snprintf(buf, sizeof buf, "Q%d.%d%c", int_bits, frac_bits, is_signed ? 's' : 'u');
    return buf;
}

QFormat make_qformat(int int_bits, int frac_bits, bool is_signed) {
    QFormat f{int_bits, frac_bits, is_signed};
    check_width(f);
    return f;
}

QFormat parse_qformat(const std::string& text) {
    // Q<int>.<frac> with optional trailing u/s
    if (text.size() < 4 || (text[0] != 'Q' && text[0] != 'q'))
        throw ConfigError("bad Q format '" + text + "'");
    size_t dot = text.find('.');
    if (dot == std::string::npos)
        throw ConfigError("bad Q format '" + text + "'");
    bool sign = false;
    std::string frac_part = text.substr(dot + 1);
    if (!frac_part.empty() && (frac_part.back() == 'u' || frac_part.back() == 's')) {
        sign = frac_part.back() == 's';
        frac_part.pop_back();
    }
    try {
        int ib = std::stoi(text.substr(1, dot - 1));
        int fb = std::stoi(frac_part);
        return make_qformat(ib, fb, sign);
    } catch (const std::logic_error&) {
        throw ConfigError("bad Q format '" + text + "'");
    }
}

double FixedPoint::to_real() const {
    return std::ldexp(static_cast<double>(raw), -format.frac_bits);
}

FixedPoint make_fixed(int64_t raw, QFormat fmt) {
    check_width(fmt);
    if (raw < fmt.min_raw() || raw > fmt.max_raw())
        throw RangeError("raw " + std::to_string(raw) + " does not fit " + fmt.str());
    return FixedPoint{raw, fmt};
}

FixedPoint quantize(double v, QFormat fmt, Rounding mode) {
    check_width(fmt);
    if (!std::isfinite(v)) throw DomainError("quantize: non-finite input");
    double scaled = std::ldexp(v, fmt.frac_bits);
    double r = mode == Rounding::truncate ? std::floor(scaled) : std::nearbyint(scaled);
    if (r < static_cast<double>(fmt.min_raw()) || r > static_cast<double>(fmt.max_raw()))
        throw RangeError("quantize: " + std::to_string(v) + " overflows " + fmt.str());
    return FixedPoint{static_cast<int64_t>(r), fmt};
}

FixedPoint fx_mul(FixedPoint a, FixedPoint b, QFormat out) {
    check_width(out);
    __int128 prod = static_cast<__int128>(a.raw) * static_cast<__int128>(b.raw);
    int shift = a.format.frac_bits + b.format.frac_bits - out.frac_bits;
    __int128 res;
    if (shift >= 0) {
        res = floor_shift_right(prod, shift);
    } else {
        res = prod << -shift;
        if (floor_shift_right(res, -shift) != prod)
            throw RangeError("fx_mul: rescale overflow");
    }
    if (res < out.min_raw() || res > out.max_raw())
        throw RangeError("fx_mul: product overflows " + out.str());
    return FixedPoint{static_cast<int64_t>(res), out};
}

namespace {

FixedPoint add_sub(FixedPoint a, FixedPoint b, bool subtract, bool force_signed) {
    if (a.format.frac_bits != b.format.frac_bits)
        throw UsageError("fx_add/fx_sub: frac_bits misaligned (" + a.format.str() + " vs " +
                         b.format.str() + ")");
    QFormat out = make_qformat(std::max(a.format.int_bits, b.format.int_bits),
                               a.format.frac_bits,
                               force_signed || a.format.is_signed || b.format.is_signed);
    __int128 r = static_cast<__int128>(a.raw) +
                 (subtract ? -static_cast<__int128>(b.raw) : static_cast<__int128>(b.raw));
    if (r < out.min_raw() || r > out.max_raw())
        throw RangeError(std::string(subtract ? "fx_sub" : "fx_add") + ": result overflows " +
                         out.str());
    return FixedPoint{static_cast<int64_t>(r), out};
}

}  // namespace

FixedPoint fx_add(FixedPoint a, FixedPoint b) { return add_sub(a, b, false, false); }
FixedPoint fx_sub(FixedPoint a, FixedPoint b) { return add_sub(a, b, true, true); }

FixedPoint fx_shift(FixedPoint a, int k) {
    if (k == 0) return a;
    if (k > 0) {
        int64_t r = k >= 63 ? (a.raw < 0 ? -1 : 0) : (a.raw >> k);
        return FixedPoint{r, a.format};
    }
    int left = -k;
    __int128 r = static_cast<__int128>(a.raw) << left;
    if (r < a.format.min_raw() || r > a.format.max_raw())
        throw RangeError("fx_shift: left shift overflows " + a.format.str());
    return FixedPoint{static_cast<int64_t>(r), a.format};
}

FixedPoint fx_rescale(FixedPoint a, int new_frac_bits, int new_int_bits, bool new_signed) {
    QFormat out = make_qformat(new_int_bits, new_frac_bits, new_signed);
    int d = new_frac_bits - a.format.frac_bits;
    __int128 r;
    if (d >= 0) {
        r = static_cast<__int128>(a.raw) << d;
    } else {
        r = floor_shift_right(a.raw, -d);
    }
    if (r < out.min_raw() || r > out.max_raw())
        throw RangeError("fx_rescale: value does not fit " + out.str());
    return FixedPoint{static_cast<int64_t>(r), out};
}

int leading_one(FixedPoint x) {
    if (x.raw <= 0) throw DomainError("leading_one: argument must be positive");
    int msb = std::bit_width(static_cast<uint64_t>(x.raw)) - 1;
    return msb - x.format.frac_bits;
}

}  // namespace pldiv
