#include "pldiv/divider_model.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>

#include "pldiv/polyfit.hpp"

namespace pldiv {

void validate_config(const DividerConfig& cfg) {
    if (cfg.degree != 2 && cfg.degree != 4)
        throw ConfigError("divider degree must be 2 or 4");
    if (cfg.x_format.is_signed || cfg.w_format.is_signed || cfg.out_format.is_signed)
        throw ConfigError("divider operands and result are unsigned");
    if (cfg.internal_frac_bits < cfg.out_format.frac_bits)
        throw ConfigError("internal_frac_bits below output resolution");
    if (cfg.internal_frac_bits < 1 || cfg.internal_frac_bits > 40)
        throw ConfigError("internal_frac_bits outside [1,40]");
    // widest intermediate: (w_int+1).F product before output truncation
    make_qformat(cfg.w_format.int_bits + 1, cfg.internal_frac_bits, false);
}

DividerConstants divider_constants(const DividerConfig& cfg) {
    validate_config(cfg);
    const int F = cfg.internal_frac_bits;
    FactoredDeg2 f2 = factor_degree2(table_polynomial(2));
    FactoredDeg4 f4 = quartic_constants();
    DividerConstants k;
    k.c2 = quantize(f2.c2, make_qformat(0, F), Rounding::nearest_even);
    k.cprime = quantize(f2.cprime, make_qformat(0, F), Rounding::nearest_even);
    k.k0 = quantize(f4.scale, make_qformat(0, F), Rounding::nearest_even);
    k.k1 = quantize(f4.q1_const, make_qformat(2, F), Rounding::nearest_even);
    k.k2 = quantize(f4.q2_const, make_qformat(1, F), Rounding::nearest_even);
    k.three = quantize(3.0, make_qformat(2, F), Rounding::nearest_even);
    k.one_point_five = quantize(1.5, make_qformat(1, F), Rounding::nearest_even);
    k.one = quantize(1.0, make_qformat(1, F), Rounding::nearest_even);
    return k;
}

std::pair<FixedPoint, int> normalize(FixedPoint x, const DividerConfig& cfg) {
    validate_config(cfg);
    if (x.raw <= 0 || x.to_real() < 1.0)
        throw DomainError("normalize: x must be >= 1");
    const int F = cfg.internal_frac_bits;
    int z = leading_one(x);
    FixedPoint wide = fx_rescale(x, F, x.format.int_bits, false);
    FixedPoint shifted = fx_shift(wide, z);
    FixedPoint m = fx_rescale(shifted, F, 1, false);
    return {m, z};
}

namespace {

// correction, y_l scaling and the dividend path shared by both architectures
std::pair<FixedPoint, DividerTrace> finish(FixedPoint w, FixedPoint m, int z, FixedPoint corr,
                                           FixedPoint a_sig, const DividerConstants& k,
                                           const DividerConfig& cfg) {
    const int F = cfg.internal_frac_bits;
    FixedPoint t = fx_sub(k.three, m);  // (3 - m), in (1, 2]
    FixedPoint u = fx_mul(corr, t, make_qformat(1, F));

    FixedPoint w_wide = fx_rescale(w, F, w.format.int_bits, false);
    FixedPoint w_shifted = fx_shift(w_wide, z + 1);

    FixedPoint full = fx_mul(u, w_shifted, make_qformat(w.format.int_bits + 1, F));
    FixedPoint result = fx_rescale(full, cfg.out_format.frac_bits, cfg.out_format.int_bits,
                                   cfg.out_format.is_signed);

    DividerTrace tr;
    tr.z = z;
    tr.m = m;
    tr.a_signal = a_sig;
    tr.correction = corr;
    tr.y_l = make_fixed(t.raw, make_qformat(t.format.int_bits, F + z + 1, t.format.is_signed));
    tr.w_shifted = w_shifted;
    tr.result = result;
    tr.constants = k;
    return {result, tr};
}

void check_w(FixedPoint w, const DividerConfig& cfg) {
    if (w.format != cfg.w_format)
        throw UsageError("w format " + w.format.str() + " does not match config " +
                         cfg.w_format.str());
    if (w.raw < 0) throw DomainError("w must be non-negative");
}

void check_x(FixedPoint x, const DividerConfig& cfg) {
    if (x.format != cfg.x_format)
        throw UsageError("x format " + x.format.str() + " does not match config " +
                         cfg.x_format.str());
}

}  // namespace

std::pair<FixedPoint, DividerTrace> divide_deg2(FixedPoint w, FixedPoint x,
                                                const DividerConfig& cfg) {
    validate_config(cfg);
    check_x(x, cfg);
    check_w(w, cfg);
    const int F = cfg.internal_frac_bits;
    DividerConstants k = divider_constants(cfg);
    auto [m, z] = normalize(x, cfg);

    FixedPoint a_sig = make_fixed(fx_sub(m, k.one).raw, make_qformat(0, F));
    FixedPoint s = fx_sub(m, k.one_point_five);  // in [-0.5, 0.5)
    FixedPoint sq = fx_mul(s, s, make_qformat(0, F));
    FixedPoint cm = fx_mul(k.c2, sq, make_qformat(0, F));
    FixedPoint corr = make_fixed(fx_add(cm, k.cprime).raw, make_qformat(0, F));

    return finish(w, m, z, corr, a_sig, k, cfg);
}

std::pair<FixedPoint, DividerTrace> divide_deg4(FixedPoint w, FixedPoint x,
                                                const DividerConfig& cfg) {
    validate_config(cfg);
    check_x(x, cfg);
    check_w(w, cfg);
    const int F = cfg.internal_frac_bits;
    DividerConstants k = divider_constants(cfg);
    auto [m, z] = normalize(x, cfg);

    FixedPoint a_sig = make_fixed(fx_sub(m, k.one).raw, make_qformat(0, F));
    FixedPoint aw = fx_rescale(a_sig, F, 2, false);
    FixedPoint two_a = fx_shift(aw, -1);
    FixedPoint half_a = fx_shift(aw, 1);
    FixedPoint a2 = fx_mul(a_sig, a_sig, make_qformat(0, F));

    // 2.5a as one left and one right shift plus adds, 0.5a as one right shift
    FixedPoint q1 = fx_add(fx_sub(fx_sub(k.k1, two_a), half_a), a2);  // in (1.56, 3.07]
    FixedPoint q2 = fx_add(fx_add(fx_rescale(k.k2, F, 2, false), half_a), a2);

    FixedPoint v = fx_mul(q1, q2, make_qformat(3, F));  // q1*q2 in (4.2, 4.8]
    FixedPoint corr = fx_mul(k.k0, v, make_qformat(0, F));

    return finish(w, m, z, corr, a_sig, k, cfg);
}

std::pair<FixedPoint, DividerTrace> divide(FixedPoint w, FixedPoint x, const DividerConfig& cfg) {
    return cfg.degree == 4 ? divide_deg4(w, x, cfg) : divide_deg2(w, x, cfg);
}

FixedPoint reciprocal(FixedPoint x, const DividerConfig& cfg) {
    validate_config(cfg);
    FixedPoint one = quantize(1.0, cfg.w_format, Rounding::truncate);
    return divide(one, x, cfg).first;
}

std::string format_vector_line(const TestVector& v) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "%llx %llx %x %llx %x",
                  static_cast<unsigned long long>(v.x_raw),
                  static_cast<unsigned long long>(v.w_raw), static_cast<unsigned>(v.degree),
                  static_cast<unsigned long long>(v.result_raw), static_cast<unsigned>(v.z));
    return buf;
}

TestVector parse_vector_line(const std::string& line) {
    std::istringstream is(line);
    TestVector v;
    if (!(is >> std::hex >> v.x_raw >> v.w_raw >> v.degree >> v.result_raw >> v.z))
        throw ConfigError("bad vector line: '" + line + "'");
    std::string extra;
    if (is >> extra) throw ConfigError("trailing fields in vector line: '" + line + "'");
    if (v.degree != 2 && v.degree != 4) throw ConfigError("bad degree in vector line");
    return v;
}

std::vector<TestVector> generate_vectors(const DividerConfig& cfg, int count, uint64_t seed) {
    validate_config(cfg);
    if (count <= 0) throw ConfigError("vector count must be positive");
    std::mt19937_64 rng(seed);
    const int64_t x_min = int64_t{1} << cfg.x_format.frac_bits;  // value 1.0
    const int64_t x_max = cfg.x_format.max_raw();
    std::uniform_int_distribution<int64_t> xd(x_min, x_max);
    std::vector<TestVector> out;
    out.reserve(count);
    for (int i = 0; i < count; ++i) {
        int64_t xr = xd(rng);
        FixedPoint x = make_fixed(xr, cfg.x_format);
        double w_cap = 1.9 * x.to_real();
        int64_t w_max = std::min<int64_t>(
            cfg.w_format.max_raw(),
            static_cast<int64_t>(std::floor(std::ldexp(w_cap, cfg.w_format.frac_bits))));
        std::uniform_int_distribution<int64_t> wd(0, std::max<int64_t>(w_max, 0));
        FixedPoint w = make_fixed(wd(rng), cfg.w_format);
        auto [res, tr] = divide(w, x, cfg);
        out.push_back(TestVector{static_cast<uint64_t>(x.raw), static_cast<uint64_t>(w.raw),
                                 cfg.degree, static_cast<uint64_t>(res.raw), tr.z});
    }
    return out;
}

void write_vectors(std::ostream& os, const std::vector<TestVector>& vectors) {
    os << "// x_raw w_raw degree result_raw z\n";
    for (const auto& v : vectors) os << format_vector_line(v) << "\n";
}

std::vector<TestVector> read_vectors(std::istream& is) {
    std::vector<TestVector> out;
    std::string line;
    while (std::getline(is, line)) {
        size_t start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos) continue;
        if (line.compare(start, 2, "//") == 0) continue;
        out.push_back(parse_vector_line(line));
    }
    return out;
}

}  // namespace pldiv
