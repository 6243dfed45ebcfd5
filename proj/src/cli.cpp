#include "pldiv/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "pldiv/divider_model.hpp"
#include "pldiv/error_harness.hpp"
#include "pldiv/polyfit.hpp"
#include "pldiv/reference_math.hpp"

namespace pldiv {

namespace {

std::string hex_raw(int64_t raw) {
    char buf[24];
    std::snprintf(buf, sizeof buf, "%llx", static_cast<unsigned long long>(raw));
    return buf;
}

// "0x6:Q16.0" or "1a:Q16.16u"
FixedPoint parse_raw_operand(const std::string& text) {
    size_t colon = text.find(':');
    if (colon == std::string::npos)
        throw ConfigError("raw operand needs RAW:QFORMAT, got '" + text + "'");
    std::string rawpart = text.substr(0, colon);
    QFormat fmt = parse_qformat(text.substr(colon + 1));
    size_t pos = 0;
    int64_t raw;
    try {
        raw = std::stoll(rawpart, &pos, 16);
    } catch (const std::logic_error&) {
        throw ConfigError("bad raw value '" + rawpart + "'");
    }
    if (pos != rawpart.size()) throw ConfigError("bad raw value '" + rawpart + "'");
    return make_fixed(raw, fmt);
}

void write_text_output(const std::string& path, const std::string& text, std::ostream& out) {
    if (path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot open output file '" + path + "'");
    f << text;
}

struct SweepArgs {
    std::string model = "real";
    int degree = 2;
    double start = 1.0;
    double end = 256.0;
    double step = 0.0;  // 0 = per-octave mode
    int per_octave = 4096;
    std::string reference = "exact";
    std::string x_format = "Q16.0";
    std::string w_format = "Q16.16";
    std::string out_format = "Q1.16";
    int internal_frac = 17;
};

void add_sweep_options(CLI::App* cmd, SweepArgs& a) {
    cmd->add_option("--model", a.model, "Model layer: real, gamma or fixed")
        ->check(CLI::IsMember({"real", "gamma", "fixed"}));
    cmd->add_option("--degree", a.degree, "Correction polynomial degree");
    cmd->add_option("--start", a.start, "Range start")->required();
    cmd->add_option("--end", a.end, "Range end")->required();
    cmd->add_option("--step", a.step, "Arithmetic grid step (default: per-octave grid)");
    cmd->add_option("--per-octave", a.per_octave, "Uniform points per octave");
    cmd->add_option("--reference", a.reference, "Reference: exact or optimal16")
        ->check(CLI::IsMember({"exact", "optimal16"}));
    cmd->add_option("--x-format", a.x_format, "Fixed-point x format");
    cmd->add_option("--w-format", a.w_format, "Fixed-point w format");
    cmd->add_option("--out-format", a.out_format, "Fixed-point result format");
    cmd->add_option("--internal-frac", a.internal_frac, "Internal fractional bits");
}

SweepSpec to_spec(const SweepArgs& a) {
    SweepSpec spec;
    spec.model = a.model == "fixed"   ? SweepModel::fixed_point
                 : a.model == "gamma" ? SweepModel::real_gamma
                                      : SweepModel::real_poly;
    spec.degree = a.degree;
    spec.x_start = a.start;
    spec.x_end = a.end;
    if (a.step > 0.0) spec.step = a.step;
    spec.points_per_octave = a.per_octave;
    spec.reference =
        a.reference == "optimal16" ? SweepReference::optimal16 : SweepReference::exact;
    spec.config.degree = a.degree == 4 ? 4 : 2;
    spec.config.x_format = parse_qformat(a.x_format);
    spec.config.w_format = parse_qformat(a.w_format);
    spec.config.out_format = parse_qformat(a.out_format);
    spec.config.internal_frac_bits = a.internal_frac;
    return spec;
}

std::string describe_fixed(FixedPoint v) {
    return "raw " + hex_raw(v.raw) + " value " + format_g17(v.to_real()) + " (" +
           v.format.str() + ")";
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"single-pass division model"};
    app.require_subcommand(1);

    // fit
    auto* fit = app.add_subcommand("fit", "Fit a correction polynomial and emit JSON");
    int fit_degree = 2;
    double fit_theta_step = 1e-5;
    std::string fit_out;
    fit->add_option("--degree", fit_degree, "Polynomial degree")->required();
    fit->add_option("--theta-step", fit_theta_step, "Node grid step in theta");
    fit->add_option("--out", fit_out, "Output file (default stdout)");

    // eval
    auto* eval = app.add_subcommand("eval", "Evaluate the corrected reciprocal at a point");
    double eval_x = 0.0;
    int eval_degree = 2;
    eval->add_option("--x", eval_x, "Argument")->required();
    eval->add_option("--degree", eval_degree, "Correction polynomial degree");

    // simulate
    auto* sim = app.add_subcommand("simulate", "Run the fixed-point divider once");
    double sim_x = 0.0, sim_w = 1.0;
    std::string sim_x_raw, sim_w_raw;
    int sim_degree = 2;
    bool sim_trace = false;
    SweepArgs sim_fmt;
    sim->add_option("--x", sim_x, "Divisor (real, quantized by the model)");
    sim->add_option("--x-raw", sim_x_raw, "Divisor as RAW:QFORMAT, e.g. 0x6:Q16.0");
    sim->add_option("--w", sim_w, "Dividend (real, quantized by the model)");
    sim->add_option("--w-raw", sim_w_raw, "Dividend as RAW:QFORMAT");
    sim->add_option("--degree", sim_degree, "Architecture degree (2 or 4)");
    sim->add_flag("--trace", sim_trace, "Print every datapath wire");
    sim->add_option("--x-format", sim_fmt.x_format, "x format");
    sim->add_option("--w-format", sim_fmt.w_format, "w format");
    sim->add_option("--out-format", sim_fmt.out_format, "Result format");
    sim->add_option("--internal-frac", sim_fmt.internal_frac, "Internal fractional bits");

    // sweep
    auto* sw = app.add_subcommand("sweep", "Sweep a range and write an error CSV");
    SweepArgs sw_args;
    std::string sw_out;
    add_sweep_options(sw, sw_args);
    sw->add_option("--out", sw_out, "Output CSV file (default stdout)");

    // summary
    auto* sm = app.add_subcommand("summary", "Sweep a range and print JSON maxima");
    SweepArgs sm_args;
    add_sweep_options(sm, sm_args);

    // vectors
    auto* vec = app.add_subcommand("vectors", "Generate testbench stimulus vectors");
    int vec_degree = 2, vec_count = 256;
    uint64_t vec_seed = 1;
    std::string vec_out;
    SweepArgs vec_fmt;
    vec->add_option("--degree", vec_degree, "Architecture degree (2 or 4)");
    vec->add_option("--count", vec_count, "Number of vectors");
    vec->add_option("--seed", vec_seed, "RNG seed");
    vec->add_option("--out", vec_out, "Output file (default stdout)");
    vec->add_option("--x-format", vec_fmt.x_format, "x format");
    vec->add_option("--w-format", vec_fmt.w_format, "w format");
    vec->add_option("--out-format", vec_fmt.out_format, "Result format");
    vec->add_option("--internal-frac", vec_fmt.internal_frac, "Internal fractional bits");

    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("pldiv");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    try {
        if (*fit) {
            FitSpec spec;
            spec.degree = fit_degree;
            spec.theta_step = fit_theta_step;
            write_text_output(fit_out, polynomial_to_json(fit_correction(spec)), out);
            return 0;
        }
        if (*eval) {
            CorrectionPolynomial poly = table_polynomial(eval_degree);
            out << "real " << format_g17(corrected_reciprocal(eval_x, poly)) << "\n";
            if ((eval_degree == 2 || eval_degree == 4) && eval_x >= 1.0) {
                DividerConfig cfg;
                cfg.degree = eval_degree;
                FixedPoint xq = quantize(eval_x, cfg.x_format, Rounding::truncate);
                if (xq.to_real() >= 1.0)
                    out << "fixed " << format_g17(reciprocal(xq, cfg).to_real()) << "\n";
            }
            return 0;
        }
        if (*sim) {
            DividerConfig cfg;
            cfg.degree = sim_degree;
            cfg.x_format = parse_qformat(sim_fmt.x_format);
            cfg.w_format = parse_qformat(sim_fmt.w_format);
            cfg.out_format = parse_qformat(sim_fmt.out_format);
            cfg.internal_frac_bits = sim_fmt.internal_frac;
            FixedPoint x, w;
            if (!sim_x_raw.empty()) {
                x = parse_raw_operand(sim_x_raw);
                cfg.x_format = x.format;
            } else {
                if (!sim->count("--x")) throw ConfigError("simulate needs --x or --x-raw");
                if (sim_x < 1.0) throw DomainError("simulate: x must be >= 1");
                x = quantize(sim_x, cfg.x_format, Rounding::truncate);
            }
            if (!sim_w_raw.empty()) {
                w = parse_raw_operand(sim_w_raw);
                cfg.w_format = w.format;
            } else {
                w = quantize(sim_w, cfg.w_format, Rounding::truncate);
            }
            auto [res, tr] = divide(w, x, cfg);
            out << "result " << format_g17(res.to_real()) << " raw " << hex_raw(res.raw) << " ("
                << res.format.str() << ")\n";
            if (sim_trace) {
                out << "z " << tr.z << "\n";
                out << "m " << describe_fixed(tr.m) << "\n";
                out << "a " << describe_fixed(tr.a_signal) << "\n";
                out << "corr " << describe_fixed(tr.correction) << "\n";
                out << "y_l " << describe_fixed(tr.y_l) << "\n";
                out << "w_shifted " << describe_fixed(tr.w_shifted) << "\n";
                out << "result " << describe_fixed(tr.result) << "\n";
            }
            return 0;
        }
        if (*sw || *sm) {
            const SweepArgs& a = *sw ? sw_args : sm_args;
            SweepSpec spec = to_spec(a);
            std::vector<ErrorRow> rows = sweep(spec);
            if (*sw) {
                std::ostringstream csv;
                write_csv(csv, rows);
                write_text_output(sw_out, csv.str(), out);
            } else {
                out << summary_to_json(spec, summarize(rows));
            }
            return 0;
        }
        if (*vec) {
            DividerConfig cfg;
            cfg.degree = vec_degree;
            cfg.x_format = parse_qformat(vec_fmt.x_format);
            cfg.w_format = parse_qformat(vec_fmt.w_format);
            cfg.out_format = parse_qformat(vec_fmt.out_format);
            cfg.internal_frac_bits = vec_fmt.internal_frac;
            std::vector<TestVector> vectors = generate_vectors(cfg, vec_count, vec_seed);
            std::ostringstream body;
            write_vectors(body, vectors);
            write_text_output(vec_out, body.str(), out);
            return 0;
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    err << "error: no subcommand\n";
    return 1;
}

}  // namespace pldiv
