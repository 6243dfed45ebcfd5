#include "pldiv/error_harness.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include <json.hpp>

#include "pldiv/polyfit.hpp"
#include "pldiv/reference_math.hpp"

namespace pldiv {

std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double optimal_16bit(double x) {
    if (!(x >= 1.0)) throw DomainError("optimal_16bit: x must be >= 1");
    return std::ldexp(std::nearbyint(std::ldexp(1.0 / x, 16)), -16);
}

namespace {

std::vector<double> build_grid(const SweepSpec& spec) {
    if (!(spec.x_start > 0.0) || !(spec.x_end >= spec.x_start))
        throw ConfigError("sweep: bad x range");
    if (spec.model == SweepModel::fixed_point && spec.x_start < 1.0)
        throw ConfigError("sweep: fixed-point model needs x_start >= 1");
    std::vector<double> xs;
    if (spec.step) {
        double step = *spec.step;
        if (!(step > 0.0)) throw ConfigError("sweep: step must be > 0");
        long n = static_cast<long>(std::floor((spec.x_end - spec.x_start) / step + 1e-9));
        xs.reserve(n + 1);
        for (long i = 0; i <= n; ++i) xs.push_back(spec.x_start + static_cast<double>(i) * step);
    } else {
        int N = spec.points_per_octave;
        if (N <= 0) throw ConfigError("sweep: points_per_octave must be > 0");
        for (int z = floor_log2(spec.x_start); std::ldexp(1.0, z) < spec.x_end; ++z) {
            for (int j = 1; j <= N; ++j) {
                double x = std::ldexp(1.0 + static_cast<double>(j) / N, z);
                if (x > spec.x_start && x <= spec.x_end) xs.push_back(x);
            }
        }
    }
    if (xs.empty()) throw ConfigError("sweep: empty grid");
    return xs;
}

}  // namespace

std::vector<ErrorRow> sweep(const SweepSpec& spec) {
    std::vector<double> xs = build_grid(spec);
    std::vector<ErrorRow> rows;
    rows.reserve(xs.size());

    CorrectionPolynomial poly;
    DividerConfig cfg = spec.config;
    FixedPoint w_one;
    if (spec.model == SweepModel::real_poly) {
        poly = table_polynomial(spec.degree);
    } else if (spec.model == SweepModel::fixed_point) {
        cfg.degree = spec.degree;
        validate_config(cfg);
        w_one = quantize(1.0, cfg.w_format, Rounding::truncate);
    }

    for (double x : xs) {
        ErrorRow row;
        if (spec.model == SweepModel::fixed_point) {
            FixedPoint xq = quantize(x, cfg.x_format, Rounding::truncate);
            if (xq.to_real() < 1.0) continue;
            row.x = xq.to_real();
            row.approx = divide(w_one, xq, cfg).first.to_real();
        } else if (spec.model == SweepModel::real_poly) {
            row.x = x;
            row.approx = corrected_reciprocal(x, poly);
        } else {
            row.x = x;
            row.approx = correction_exact(fractional_position(x)) * linear_approx(x, 3.0);
        }
        row.exact = spec.reference == SweepReference::optimal16 ? optimal_16bit(row.x)
                                                                : 1.0 / row.x;
        row.abs_err = std::fabs(row.exact - row.approx);
        row.rel_err = row.x * row.abs_err;
        rows.push_back(row);
    }
    if (rows.empty()) throw ConfigError("sweep: no evaluable points");
    return rows;
}

Summary summarize(const std::vector<ErrorRow>& rows) {
    if (rows.empty()) throw UsageError("summarize: no rows");
    Summary s;
    s.max_abs = -1.0;
    s.max_rel = -1.0;
    for (const auto& r : rows) {
        if (r.abs_err > s.max_abs) {
            s.max_abs = r.abs_err;
            s.argmax_abs = r.x;
        }
        if (r.rel_err > s.max_rel) {
            s.max_rel = r.rel_err;
            s.argmax_rel = r.x;
        }
    }
    return s;
}

void write_csv(std::ostream& os, const std::vector<ErrorRow>& rows) {
    os << "x,approx,exact,abs_err,rel_err\n";
    for (const auto& r : rows) {
        os << format_g17(r.x) << ',' << format_g17(r.approx) << ',' << format_g17(r.exact) << ','
           << format_g17(r.abs_err) << ',' << format_g17(r.rel_err) << '\n';
    }
}

std::string summary_to_json(const SweepSpec& spec, const Summary& s) {
    nlohmann::ordered_json j;
    switch (spec.model) {
        case SweepModel::real_poly: j["model"] = "real-poly"; break;
        case SweepModel::real_gamma: j["model"] = "real-gamma"; break;
        case SweepModel::fixed_point: j["model"] = "fixed-point"; break;
    }
    j["degree"] = spec.degree;
    j["range"] = {spec.x_start, spec.x_end};
    j["max_abs"] = s.max_abs;
    j["argmax_abs"] = s.argmax_abs;
    j["max_rel"] = s.max_rel;
    j["argmax_rel"] = s.argmax_rel;
    return j.dump(2) + "\n";
}

}  // namespace pldiv
