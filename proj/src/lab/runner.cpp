#include "lab/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <memory>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "zetalab/diophantine.hpp"
#include "zetalab/errors.hpp"
#include "zetalab/experiments.hpp"
#include "zetalab/selfapprox.hpp"
#include "zetalab/zeta_kernel.hpp"

namespace lab {

using nlohmann::json;

namespace {

// Large row sets are thinned to at most this many entries in the result
// document; aggregates always cover the full run.
constexpr std::size_t kMaxRows = 2000;
constexpr std::size_t kMaxHits = 1000;
constexpr std::size_t kCurvePoints = 200;

json complex_json(zetalab::Complex z) { return json::array({z.real(), z.imag()}); }

json eval_result(const ExperimentConfig& config, EvalCache* cache) {
    const double sigma = config.eval_s.real();
    const double t = config.eval_s.imag();
    zetalab::Complex value;
    if (!(cache && cache->lookup(sigma, t, &value))) {
        value = zetalab::zeta(config.eval_s, config.params);
        if (cache) cache->store(sigma, t, value);
    }
    return json{{"s", complex_json(config.eval_s)},
                {"value", complex_json(value)},
                {"abs", std::abs(value)},
                {"arg", std::arg(value)}};
}

json zeros_result(const ExperimentConfig& config) {
    const int count = zetalab::count_zeros(config.zeros_region, config.params);
    return json{{"region",
                 {{"sigma_min", config.zeros_region.sigma_min},
                  {"sigma_max", config.zeros_region.sigma_max},
                  {"t_min", config.zeros_region.t_min},
                  {"t_max", config.zeros_region.t_max}}},
                {"count", count}};
}

json sweep_result(const ExperimentConfig& config, int workers) {
    const auto report = zetalab::run_bound_sweep(config.sweep, workers);
    const std::size_t n = report.rows.size();
    const std::size_t stride = n <= kMaxRows ? 1 : (n + kMaxRows - 1) / kMaxRows;

    json scatter = json::array();
    for (std::size_t i = 0; i < n; i += stride) {
        const auto& row = report.rows[i];
        scatter.push_back(json{{"sigma", row.tuple.s.real()},
                               {"t", row.tuple.s.imag()},
                               {"z", row.tuple.z},
                               {"shift", json::array({row.tuple.shift.a(), row.tuple.shift.b()})},
                               {"c", row.tuple.c},
                               {"abs_product", row.abs_product},
                               {"bound", row.bound},
                               {"abs_tail", row.abs_tail},
                               {"tail_bound", row.tail_bound}});
    }
    return json{{"count", static_cast<std::int64_t>(n)},
                {"product_violations", report.product_violations},
                {"tail_violations", report.tail_violations},
                {"step_violations", report.step_violations},
                {"min_product_margin", report.min_product_margin},
                {"min_tail_margin", report.min_tail_margin},
                {"min_step_margin", report.min_step_margin},
                {"max_omega_identity_err", report.max_omega_identity_err},
                {"max_product_identity_err", report.max_product_identity_err},
                {"max_partial_sum_err", report.max_partial_sum_err},
                {"scatter_stride", static_cast<std::int64_t>(stride)},
                {"scatter", scatter}};
}

json kronecker_result(const ExperimentConfig& config, int workers) {
    const auto hits = zetalab::kronecker_scan(config.kronecker, workers);

    json first_hits = json::array();
    for (std::size_t i = 0; i < hits.taus.size() && i < kMaxHits; ++i)
        first_hits.push_back(hits.taus[i]);

    // Running density across <= 200 grid checkpoints.
    json curve = json::array();
    const std::int64_t grid = hits.grid_size;
    const auto n_checks = static_cast<std::int64_t>(
        std::min<std::int64_t>(static_cast<std::int64_t>(kCurvePoints), grid));
    std::size_t hit_idx = 0;
    for (std::int64_t i = 1; i <= n_checks; ++i) {
        const std::int64_t upto = grid * i / n_checks;  // first `upto` grid points
        const double t_upto = static_cast<double>(upto - 1) * config.kronecker.step;
        while (hit_idx < hits.taus.size() && hits.taus[hit_idx] <= t_upto + 1e-12) ++hit_idx;
        curve.push_back(json{{"T", t_upto},
                             {"density", static_cast<double>(hit_idx) / static_cast<double>(upto)}});
    }

    return json{{"grid_size", hits.grid_size},
                {"hit_count", static_cast<std::int64_t>(hits.taus.size())},
                {"density", zetalab::hit_density(hits)},
                {"first_hits", first_hits},
                {"density_vs_T", curve}};
}

json density_result(const ExperimentConfig& config, int workers) {
    const auto report = zetalab::density(config.density, workers, config.params);

    json first_hits = json::array();
    for (std::size_t i = 0; i < report.hits.size() && i < kMaxHits; ++i)
        first_hits.push_back(report.hits[i]);

    json curve = json::array();
    const std::int64_t total = report.total_count;
    const auto n_checks =
        static_cast<std::int64_t>(std::min<std::int64_t>(static_cast<std::int64_t>(kCurvePoints),
                                                         total));
    std::int64_t accepted = 0, skipped = 0, k = 0;
    for (std::int64_t i = 1; i <= n_checks; ++i) {
        const std::int64_t upto = total * i / n_checks;
        for (; k < upto; ++k) {
            const double sup = report.sup_trace[static_cast<std::size_t>(k)];
            if (std::isnan(sup)) {
                ++skipped;
            } else if (sup < config.density.epsilon) {
                ++accepted;
            }
        }
        const std::int64_t effective = upto - skipped;
        curve.push_back(json{
            {"T", static_cast<double>(upto) * config.density.tau_step},
            {"fraction",
             effective > 0 ? static_cast<double>(accepted) / static_cast<double>(effective)
                           : 0.0}});
    }

    return json{{"total_count", report.total_count},
                {"accepted_count", report.accepted_count},
                {"skipped_count", report.skipped_count},
                {"fraction", report.fraction},
                {"first_hits", first_hits},
                {"fraction_vs_T", curve}};
}

json pipeline_result(const ExperimentConfig& config, int workers) {
    const auto report = zetalab::run_pipeline_experiment(config.pipeline, workers, config.params);
    json samples = json::array();
    for (const auto& sample : report.samples) {
        samples.push_back(json{{"tau", sample.tau},
                               {"from_hit", sample.from_hit},
                               {"skipped", sample.skipped},
                               {"err_a", sample.result.err_a},
                               {"err_b", sample.result.err_b},
                               {"diff_zeta", sample.result.diff_zeta}});
    }
    return json{{"scan_hit_total", report.scan_hit_total},
                {"median_err_a_hits", report.median_err_a_hits},
                {"median_err_a_random", report.median_err_a_random},
                {"median_err_b_hits", report.median_err_b_hits},
                {"median_err_b_random", report.median_err_b_random},
                {"samples", samples}};
}

json remark_result(const ExperimentConfig& config, int workers) {
    const auto report = zetalab::run_remark_scan(config.remark, workers, config.params);
    const std::size_t n = report.rows.size();
    const std::size_t stride = n <= kMaxRows ? 1 : (n + kMaxRows - 1) / kMaxRows;
    json rows = json::array();
    for (std::size_t i = 0; i < n; i += stride) {
        const auto& row = report.rows[i];
        rows.push_back(json{{"tau", row.tau},
                            {"sup_abs_zeta", row.gap.sup_abs_zeta},
                            {"sup_ratio_minus_one", row.gap.sup_ratio_minus_one},
                            {"sup_difference", row.gap.sup_difference}});
    }
    return json{{"witness_tau", report.witness_tau},
                {"max_identity_residual", report.max_identity_residual},
                {"row_stride", static_cast<std::int64_t>(stride)},
                {"rows", rows}};
}

}  // namespace

json execute(const ExperimentConfig& config, int workers, EvalCache* cache) {
    config.validate();
    json result;
    switch (config.kind) {
        case Kind::Eval: result = eval_result(config, cache); break;
        case Kind::Zeros: result = zeros_result(config); break;
        case Kind::BoundSweep: result = sweep_result(config, workers); break;
        case Kind::Kronecker: result = kronecker_result(config, workers); break;
        case Kind::Density: result = density_result(config, workers); break;
        case Kind::Pipeline: result = pipeline_result(config, workers); break;
        case Kind::RemarkDemo: result = remark_result(config, workers); break;
    }
    return json{{"schema", "v1"},
                {"kind", kind_name(config.kind)},
                {"config", serialize_config(config)},
                {"result", result}};
}

namespace {

std::string fmt_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

// RFC-4180: quote a field when it contains a comma, quote, or newline.
// Numeric fields never trigger this; kept for schema fields that might.
std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    out += '"';
    return out;
}

std::string num(const json& v) { return csv_field(fmt_double(v.get<double>())); }
std::string integer(const json& v) { return std::to_string(v.get<std::int64_t>()); }
std::string flag(const json& v) { return v.get<bool>() ? "1" : "0"; }

}  // namespace

std::string csv_for_result(const json& result) {
    try {
        const std::string kind = result.at("kind").get<std::string>();
        const json& r = result.at("result");
        std::string out;

        if (kind == "eval") {
            out = "sigma,t,re,im,abs,arg\n";
            out += num(r.at("s")[0]) + "," + num(r.at("s")[1]) + "," + num(r.at("value")[0]) +
                   "," + num(r.at("value")[1]) + "," + num(r.at("abs")) + "," + num(r.at("arg")) +
                   "\n";
        } else if (kind == "zeros") {
            out = "sigma_min,sigma_max,t_min,t_max,count\n";
            const json& region = r.at("region");
            out += num(region.at("sigma_min")) + "," + num(region.at("sigma_max")) + "," +
                   num(region.at("t_min")) + "," + num(region.at("t_max")) + "," +
                   integer(r.at("count")) + "\n";
        } else if (kind == "bound-sweep") {
            out = "sigma,t,z,shift_a,shift_b,c,abs_product,bound,abs_tail,tail_bound\n";
            for (const json& row : r.at("scatter")) {
                out += num(row.at("sigma")) + "," + num(row.at("t")) + "," + num(row.at("z")) +
                       "," + integer(row.at("shift")[0]) + "," + integer(row.at("shift")[1]) +
                       "," + integer(row.at("c")) + "," + num(row.at("abs_product")) + "," +
                       num(row.at("bound")) + "," + num(row.at("abs_tail")) + "," +
                       num(row.at("tail_bound")) + "\n";
            }
        } else if (kind == "kronecker") {
            out = "T,density\n";
            for (const json& row : r.at("density_vs_T"))
                out += num(row.at("T")) + "," + num(row.at("density")) + "\n";
        } else if (kind == "density") {
            out = "T,fraction\n";
            for (const json& row : r.at("fraction_vs_T"))
                out += num(row.at("T")) + "," + num(row.at("fraction")) + "\n";
        } else if (kind == "pipeline") {
            out = "tau,from_hit,skipped,err_a,err_b,diff_zeta\n";
            for (const json& row : r.at("samples")) {
                out += num(row.at("tau")) + "," + flag(row.at("from_hit")) + "," +
                       flag(row.at("skipped")) + "," + num(row.at("err_a")) + "," +
                       num(row.at("err_b")) + "," + num(row.at("diff_zeta")) + "\n";
            }
        } else if (kind == "remark-demo") {
            out = "tau,sup_abs_zeta,sup_ratio_minus_one,sup_difference\n";
            for (const json& row : r.at("rows")) {
                out += num(row.at("tau")) + "," + num(row.at("sup_abs_zeta")) + "," +
                       num(row.at("sup_ratio_minus_one")) + "," + num(row.at("sup_difference")) +
                       "\n";
            }
        } else {
            throw zetalab::MalformedResult("csv_for_result: unknown kind \"" + kind + "\"");
        }
        return out;
    } catch (const json::exception& e) {
        throw zetalab::MalformedResult(std::string("csv_for_result: mangled result document: ") +
                                       e.what());
    }
}

RunArtifacts run_experiment(const ExperimentConfig& config, const RunOptions& options) {
    int workers = options.workers;
    if (workers <= 0) workers = static_cast<int>(std::thread::hardware_concurrency());
    if (workers <= 0) workers = 1;

    EvalCache* cache = nullptr;
    std::unique_ptr<EvalCache> owned;
    if (options.use_cache && config.kind == Kind::Eval) {
        owned = std::make_unique<EvalCache>(EvalCache::resolve_path(options.out_dir),
                                            config.params);
        cache = owned.get();
    }

    const auto t0 = std::chrono::steady_clock::now();
    const json result = execute(config, workers, cache);
    const auto t1 = std::chrono::steady_clock::now();
    const double wall = std::chrono::duration<double>(t1 - t0).count();

    RunArtifacts artifacts;
    const std::string base = options.out_dir + "/" + options.stem;
    artifacts.json_path = base + ".result.json";
    artifacts.csv_path = base + ".result.csv";
    artifacts.timings_path = base + ".timings.json";

    auto write_file = [](const std::string& path, const std::string& content) {
        std::ofstream out(path, std::ios::binary);
        if (!out.good())
            throw std::runtime_error("cannot write artifact \"" + path + "\"");
        out << content;
        if (!out.good()) throw std::runtime_error("short write on \"" + path + "\"");
    };

    write_file(artifacts.json_path, result.dump(2) + "\n");
    write_file(artifacts.csv_path, csv_for_result(result));

    // Timings live in a separate sidecar so the primary artifacts stay
    // byte-reproducible across machines and worker counts.
    const json timings{{"schema", "v1"},
                       {"kind", kind_name(config.kind)},
                       {"workers", workers},
                       {"wall_seconds", wall}};
    write_file(artifacts.timings_path, timings.dump(2) + "\n");
    return artifacts;
}

}  // namespace lab
