#include <doctest.h>

#include <cmath>
#include <random>

#include "pldiv/fixed_point.hpp"
#include "pldiv/reference_math.hpp"

using namespace pldiv;

TEST_CASE("qformat ranges and width cap") {
    QFormat q = make_qformat(1, 17, false);
    CHECK(q.width() == 18);
    CHECK(q.max_raw() == (1 << 18) - 1);
    CHECK(q.min_raw() == 0);
    CHECK(q.step() == std::ldexp(1.0, -17));

    QFormat s = make_qformat(3, 17, true);
    CHECK(s.width() == 21);
    CHECK(s.min_raw() == -(1 << 20));
    CHECK(s.max_raw() == (1 << 20) - 1);

    CHECK_THROWS_AS(make_qformat(60, 10, false), ConfigError);
    CHECK_THROWS_AS(make_qformat(-1, 3, false), ConfigError);
    CHECK_THROWS_AS(make_qformat(0, 0, false), ConfigError);
}

TEST_CASE("qformat parse and print") {
    CHECK(parse_qformat("Q16.16") == make_qformat(16, 16, false));
    CHECK(parse_qformat("Q1.17u") == make_qformat(1, 17, false));
    CHECK(parse_qformat("Q3.17s") == make_qformat(3, 17, true));
    CHECK(make_qformat(16, 0, false).str() == "Q16.0u");
    CHECK_THROWS_AS(parse_qformat("16.16"), ConfigError);
    CHECK_THROWS_AS(parse_qformat("Qx.y"), ConfigError);
}

TEST_CASE("make_fixed checks range") {
    CHECK(make_fixed(65535, make_qformat(16, 0, false)).to_real() == 65535.0);
    CHECK_THROWS_AS(make_fixed(65536, make_qformat(16, 0, false)), RangeError);
    CHECK_THROWS_AS(make_fixed(-1, make_qformat(16, 0, false)), RangeError);
    CHECK(make_fixed(-8, make_qformat(1, 2, true)).to_real() == -2.0);
}

TEST_CASE("quantize examples") {
    QFormat q117 = make_qformat(1, 17, false);
    CHECK(quantize(0.5, q117, Rounding::truncate).raw == 65536);
    CHECK(quantize(1.0 / 3.0, q117, Rounding::truncate).raw == 43690);
    // round(0.998316470026731 * 2^17) = round(130851.336...) = 130851
    CHECK(quantize(0.998316470026731, q117, Rounding::nearest_even).raw == 130851);
}

TEST_CASE("quantize round trips and errors") {
    QFormat q = make_qformat(4, 12, true);
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> dist(q.min_value(), q.max_value());
    for (int i = 0; i < 20000; ++i) {
        double v = dist(rng);
        FixedPoint t = quantize(v, q, Rounding::truncate);
        CHECK(v - t.to_real() >= 0.0);
        CHECK(v - t.to_real() < q.step());
        FixedPoint n = quantize(v, q, Rounding::nearest_even);
        CHECK(std::fabs(v - n.to_real()) <= q.step() / 2);
        // exactly representable values round-trip exactly in both modes
        CHECK(quantize(t.to_real(), q, Rounding::truncate).raw == t.raw);
        CHECK(quantize(t.to_real(), q, Rounding::nearest_even).raw == t.raw);
    }
    CHECK_THROWS_AS(quantize(16.0, q, Rounding::truncate), RangeError);
    CHECK_THROWS_AS(quantize(-17.0, q, Rounding::truncate), RangeError);
    CHECK_THROWS_AS(quantize(std::nan(""), q, Rounding::truncate), DomainError);
}

TEST_CASE("fx_mul") {
    QFormat q117 = make_qformat(1, 17, false);
    QFormat q217 = make_qformat(2, 17, false);
    FixedPoint half = quantize(0.5, q117, Rounding::truncate);
    CHECK(fx_mul(half, half, q117).to_real() == 0.25);
    FixedPoint three_halves = quantize(1.5, q217, Rounding::truncate);
    CHECK(fx_mul(three_halves, three_halves, q217).to_real() == 2.25);
    FixedPoint eps = make_fixed(1, q117);
    CHECK(fx_mul(eps, eps, q117).raw == 0);  // 2^-34 truncates away

    // truncation error in [0, step) for non-negative operands
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int64_t> d(0, q117.max_raw());
    for (int i = 0; i < 20000; ++i) {
        FixedPoint a = make_fixed(d(rng), q117);
        FixedPoint b = make_fixed(d(rng), q117);
        FixedPoint p = fx_mul(a, b, make_qformat(2, 17, false));
        double exact = a.to_real() * b.to_real();
        CHECK(exact - p.to_real() >= 0.0);
        CHECK(exact - p.to_real() < std::ldexp(1.0, -17));
    }

    FixedPoint big = make_fixed(q117.max_raw(), q117);
    CHECK_THROWS_AS(fx_mul(big, big, make_qformat(1, 17, false)), RangeError);
}

TEST_CASE("fx_add and fx_sub") {
    QFormat q317 = make_qformat(3, 17, false);
    FixedPoint three = quantize(3.0, q317, Rounding::truncate);
    FixedPoint three_halves = quantize(1.5, q317, Rounding::truncate);
    FixedPoint d = fx_sub(three, three_halves);
    CHECK(d.to_real() == 1.5);
    CHECK(d.format.is_signed);

    FixedPoint zero = make_fixed(0, q317);
    FixedPoint x = quantize(2.625, q317, Rounding::truncate);
    CHECK(fx_add(zero, x).raw == x.raw);

    FixedPoint maxv = make_fixed(q317.max_raw(), q317);
    FixedPoint step = make_fixed(1, q317);
    CHECK_THROWS_AS(fx_add(maxv, step), RangeError);

    FixedPoint misaligned = quantize(1.0, make_qformat(3, 16, false), Rounding::truncate);
    CHECK_THROWS_AS(fx_add(three, misaligned), UsageError);
    CHECK_THROWS_AS(fx_sub(three, misaligned), UsageError);

    // subtraction below zero is representable in the signed result
    CHECK(fx_sub(three_halves, three).to_real() == -1.5);
}

TEST_CASE("fx_shift") {
    QFormat q317 = make_qformat(3, 17, true);
    FixedPoint v = quantize(1.5, q317, Rounding::truncate);
    CHECK(fx_shift(v, 1).to_real() == 0.75);
    CHECK(fx_shift(make_fixed(3, q317), 1).raw == 1);
    CHECK(fx_shift(make_fixed(-3, q317), 1).raw == -2);  // floor(-1.5)
    CHECK(fx_shift(v, 0).raw == v.raw);
    CHECK(fx_shift(v, -1).to_real() == 3.0);
    FixedPoint top = make_fixed(q317.max_raw(), q317);
    CHECK_THROWS_AS(fx_shift(top, -1), RangeError);
}

TEST_CASE("fx_rescale") {
    FixedPoint x = make_fixed(6, make_qformat(16, 0, false));
    FixedPoint w = fx_rescale(x, 17, 16, false);
    CHECK(w.raw == 6 << 17);
    CHECK(w.to_real() == 6.0);
    FixedPoint back = fx_rescale(w, 0, 16, false);
    CHECK(back.raw == 6);
    // narrowing truncates toward minus infinity
    FixedPoint f = make_fixed(3, make_qformat(1, 2, false));  // 0.75
    CHECK(fx_rescale(f, 1, 1, false).raw == 1);               // 0.5
    CHECK_THROWS_AS(fx_rescale(x, 17, 2, false), RangeError);
}

TEST_CASE("leading_one") {
    CHECK(leading_one(quantize(1.0, make_qformat(8, 8, false), Rounding::truncate)) == 0);
    CHECK(leading_one(quantize(6.0, make_qformat(8, 8, false), Rounding::truncate)) == 2);
    CHECK(leading_one(quantize(0.75, make_qformat(8, 8, false), Rounding::truncate)) == -1);
    CHECK_THROWS_AS(leading_one(make_fixed(0, make_qformat(8, 8, false))), DomainError);
    CHECK_THROWS_AS(leading_one(make_fixed(-1, make_qformat(8, 8, true))), DomainError);
}

TEST_CASE("leading_one matches floor_log2 exhaustively on Q8.8") {
    QFormat q = make_qformat(8, 8, false);
    for (int64_t raw = 1; raw <= q.max_raw(); ++raw) {
        FixedPoint v = make_fixed(raw, q);
        CHECK(leading_one(v) == floor_log2(v.to_real()));
    }
}
