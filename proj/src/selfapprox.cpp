#include "zetalab/selfapprox.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "stream_eval.hpp"
#include "zetalab/errors.hpp"
#include "zetalab/parallel.hpp"
#include "zetalab/twisted_euler.hpp"
#include "zetalab/zeta_kernel.hpp"

namespace zetalab {

CompactSetSpec CompactSetSpec::disk(Complex center, double radius, int grid_points) {
    CompactSetSpec spec;
    spec.shape = Shape::Disk;
    spec.center = center;
    spec.radius = radius;
    spec.grid_points = grid_points;
    return spec;
}

CompactSetSpec CompactSetSpec::rectangle(const RectRegion& rect, int grid_points) {
    CompactSetSpec spec;
    spec.shape = Shape::Rectangle;
    spec.rect = rect;
    spec.grid_points = grid_points;
    return spec;
}

void CompactSetSpec::validate() const {
    if (grid_points < 1)
        throw std::invalid_argument("CompactSetSpec: grid_points must be positive");
    if (shape == Shape::Disk) {
        if (!(radius > 0.0))
            throw std::invalid_argument("CompactSetSpec: disk radius must be positive");
        if (!(center.real() - radius > 0.5) || !(center.real() + radius < 1.0))
            throw SetOutsideStrip("CompactSetSpec: disk [" +
                                  std::to_string(center.real() - radius) + ", " +
                                  std::to_string(center.real() + radius) +
                                  "] leaves the strip (1/2, 1)");
    } else {
        rect.validate();
        if (!(rect.sigma_min > 0.5) || !(rect.sigma_max < 1.0))
            throw SetOutsideStrip("CompactSetSpec: rectangle [" +
                                  std::to_string(rect.sigma_min) + ", " +
                                  std::to_string(rect.sigma_max) +
                                  "] leaves the strip (1/2, 1)");
    }
}

ShiftMode ShiftMode::rational(const RationalShift& s) {
    ShiftMode m;
    m.kind = Kind::Rational;
    m.shift = s;
    return m;
}

ShiftMode ShiftMode::real(double d) {
    ShiftMode m;
    m.kind = Kind::Real;
    m.d_real = d;
    return m;
}

ShiftMode ShiftMode::bagchi() {
    ShiftMode m;
    m.kind = Kind::Bagchi;
    return m;
}

double ShiftMode::d() const {
    switch (kind) {
        case Kind::Rational: return shift.d();
        case Kind::Real: return d_real;
        case Kind::Bagchi: return 0.0;
    }
    return 0.0;
}

bool ShiftMode::covered_by_theorem() const {
    return kind == Kind::Rational && shift.covered_by_theorem();
}

void ShiftExperiment::validate() const {
    K.validate();
    if (!(epsilon > 0.0)) throw std::invalid_argument("ShiftExperiment: epsilon must be positive");
    if (!(tau_step > 0.0))
        throw std::invalid_argument("ShiftExperiment: tau_step must be positive");
    if (!(T >= 100.0 * tau_step))
        throw std::invalid_argument("ShiftExperiment: T must be at least 100 * tau_step");
    if (mode.kind == ShiftMode::Kind::Real && !std::isfinite(mode.d_real))
        throw std::invalid_argument("ShiftExperiment: d must be finite");
}

std::vector<Complex> sample_grid(const CompactSetSpec& K) {
    K.validate();
    std::vector<Complex> pts;
    if (K.shape == CompactSetSpec::Shape::Disk) {
        if (K.grid_points == 1) return {K.center};
        // Center plus concentric rings out to the boundary circle.  Ring
        // spacing r/n_r and arc spacing <= h keep the grid pitch within
        // h = 2r/sqrt(G).
        const double root = std::sqrt(static_cast<double>(K.grid_points));
        const double h = 2.0 * K.radius / root;
        const int n_rings = static_cast<int>(std::ceil(root / 2.0));
        pts.push_back(K.center);
        for (int i = 1; i <= n_rings; ++i) {
            const double rho = static_cast<double>(i) * K.radius / n_rings;
            const int n_arc =
                std::max(6, static_cast<int>(std::ceil(2.0 * std::numbers::pi * rho / h)));
            for (int k = 0; k < n_arc; ++k) {
                const double angle = 2.0 * std::numbers::pi * k / n_arc;
                pts.emplace_back(K.center.real() + rho * std::cos(angle),
                                 K.center.imag() + rho * std::sin(angle));
            }
        }
    } else {
        if (K.grid_points == 1) {
            pts.emplace_back((K.rect.sigma_min + K.rect.sigma_max) / 2.0,
                             (K.rect.t_min + K.rect.t_max) / 2.0);
            return pts;
        }
        const int m = std::max(2, static_cast<int>(std::llround(
                                      std::sqrt(static_cast<double>(K.grid_points)))));
        // The last lattice index is pinned to the exact bound; accumulating
        // width*(m-1)/(m-1) can overshoot by an ulp and leave the rectangle.
        for (int i = 0; i < m; ++i) {
            const double sigma =
                i == m - 1 ? K.rect.sigma_max
                           : K.rect.sigma_min + K.rect.width() * static_cast<double>(i) / (m - 1);
            for (int j = 0; j < m; ++j) {
                const double t =
                    j == m - 1 ? K.rect.t_max
                               : K.rect.t_min + K.rect.height() * static_cast<double>(j) / (m - 1);
                pts.emplace_back(sigma, t);
            }
        }
    }
    return pts;
}

namespace {

Complex eval_target(Target target, Complex s, const EvalParams& params) {
    if (target == Target::Zeta) return zeta(s, params);
    try {
        return log_zeta(s, params);
    } catch (const BranchObstruction& e) {
        throw SkippedTau(std::string("log zeta branch failed: ") + e.what());
    }
}

}  // namespace

double sup_norm_diff(Target target, const CompactSetSpec& K, double tau, double d,
                     const EvalParams& params) {
    const auto grid = sample_grid(K);
    double sup = 0.0;
    for (const Complex& s : grid) {
        const Complex f1 = eval_target(target, s + Complex(0.0, tau), params);
        const Complex f2 = eval_target(target, s + Complex(0.0, d * tau), params);
        sup = std::max(sup, std::abs(f1 - f2));
    }
    return sup;
}

namespace {

// Streamed tau scan for the zeta target: one evaluator per shift factor,
// blocks processed independently and merged in order.
void scan_zeta_target(const ShiftExperiment& exp, const std::vector<Complex>& grid,
                      std::int64_t k_last, int workers, const EvalParams& params,
                      std::vector<double>& sup_trace) {
    const double d = exp.mode.d();
    const detail::StreamShiftEvaluator eval1(grid, exp.tau_step, 1.0, k_last, params);

    // d = 0 compares against the fixed values f(s); d = 1 against the same
    // moving shift, which the block loop below handles without a second
    // evaluator in either case.
    const bool fixed_base = (d == 0.0);
    const bool same_shift = (d == 1.0);
    std::vector<Complex> base;
    if (fixed_base)
        for (const Complex& s : grid) base.push_back(zeta(s, params));

    std::unique_ptr<detail::StreamShiftEvaluator> eval2;
    if (!fixed_base && !same_shift)
        eval2 = std::make_unique<detail::StreamShiftEvaluator>(grid, exp.tau_step, d, k_last,
                                                               params);

    const std::int64_t n_blocks = eval1.block_count();
    parallel_blocks(n_blocks, workers, [&](std::int64_t block) {
        std::vector<Complex> vals1;
        std::vector<Complex> vals2;
        const std::int64_t width = eval1.eval_block(block, vals1);
        if (eval2) eval2->eval_block(block, vals2);
        const std::int64_t k_begin = 1 + block * detail::StreamShiftEvaluator::kBlock;
        for (std::int64_t col = 0; col < width; ++col) {
            double sup = 0.0;
            for (std::size_t j = 0; j < grid.size(); ++j) {
                const Complex v1 = vals1[j * static_cast<std::size_t>(width) +
                                         static_cast<std::size_t>(col)];
                Complex v2;
                if (same_shift)
                    v2 = v1;
                else if (fixed_base)
                    v2 = base[j];
                else
                    v2 = vals2[j * static_cast<std::size_t>(width) +
                               static_cast<std::size_t>(col)];
                sup = std::max(sup, std::abs(v1 - v2));
            }
            sup_trace[static_cast<std::size_t>(k_begin + col - 1)] = sup;
        }
    });
}

void scan_log_zeta_target(const ShiftExperiment& exp, const std::vector<Complex>& grid,
                          std::int64_t k_last, int workers, const EvalParams& params,
                          std::vector<double>& sup_trace) {
    const double d = exp.mode.d();
    const bool fixed_base = (d == 0.0);
    std::vector<Complex> base;
    if (fixed_base) {
        try {
            for (const Complex& s : grid) base.push_back(log_zeta(s, params));
        } catch (const BranchObstruction&) {
            // The tau-independent base fails, so every tau is skipped; leave
            // the whole trace as NaN rather than abort the scan.
            return;
        }
    }

    constexpr std::int64_t kChunk = 64;
    const std::int64_t n_chunks = (k_last + kChunk - 1) / kChunk;
    parallel_blocks(n_chunks, workers, [&](std::int64_t chunk) {
        const std::int64_t k_begin = 1 + chunk * kChunk;
        const std::int64_t k_end = std::min(k_last + 1, k_begin + kChunk);
        for (std::int64_t k = k_begin; k < k_end; ++k) {
            const double tau = static_cast<double>(k) * exp.tau_step;
            double sup = 0.0;
            try {
                for (std::size_t j = 0; j < grid.size(); ++j) {
                    const Complex f1 = eval_target(Target::LogZeta,
                                                   grid[j] + Complex(0.0, tau), params);
                    const Complex f2 =
                        fixed_base ? base[j]
                                   : eval_target(Target::LogZeta,
                                                 grid[j] + Complex(0.0, d * tau), params);
                    sup = std::max(sup, std::abs(f1 - f2));
                }
            } catch (const SkippedTau&) {
                sup = std::numeric_limits<double>::quiet_NaN();
            }
            sup_trace[static_cast<std::size_t>(k - 1)] = sup;
        }
    });
}

}  // namespace

DensityReport density(const ShiftExperiment& exp, int workers, const EvalParams& params) {
    exp.validate();
    params.validate();
    const auto grid = sample_grid(exp.K);
    const auto k_last = static_cast<std::int64_t>(std::floor(exp.T / exp.tau_step + 1e-9));

    DensityReport report;
    report.total_count = k_last;
    report.sup_trace.assign(static_cast<std::size_t>(k_last),
                            std::numeric_limits<double>::quiet_NaN());

    if (exp.target == Target::Zeta)
        scan_zeta_target(exp, grid, k_last, workers, params, report.sup_trace);
    else
        scan_log_zeta_target(exp, grid, k_last, workers, params, report.sup_trace);

    for (std::int64_t k = 1; k <= k_last; ++k) {
        const double sup = report.sup_trace[static_cast<std::size_t>(k - 1)];
        if (std::isnan(sup)) {
            ++report.skipped_count;
        } else if (sup < exp.epsilon) {
            ++report.accepted_count;
            report.hits.push_back(static_cast<double>(k) * exp.tau_step);
        }
    }
    const std::int64_t effective = report.total_count - report.skipped_count;
    report.fraction =
        effective > 0 ? static_cast<double>(report.accepted_count) / static_cast<double>(effective)
                      : 0.0;
    return report;
}

RemarkGapResult remark_gap_demo(const CompactSetSpec& K, double tau, double d,
                                const EvalParams& params) {
    const auto grid = sample_grid(K);
    RemarkGapResult out;
    for (const Complex& s : grid) {
        const Complex z1 = zeta(s + Complex(0.0, tau), params);
        if (std::abs(z1) < 1e-10)
            throw DivisionNearZero("remark_gap_demo: |zeta(s+i tau)| < 1e-10 at the grid point (" +
                                   std::to_string(s.real()) + ", " + std::to_string(s.imag()) +
                                   ")");
        const Complex z2 = zeta(s + Complex(0.0, d * tau), params);
        out.sup_abs_zeta = std::max(out.sup_abs_zeta, std::abs(z1));
        out.sup_ratio_minus_one = std::max(out.sup_ratio_minus_one, std::abs(z2 / z1 - 1.0));
        out.sup_difference = std::max(out.sup_difference, std::abs(z1 - z2));
    }
    return out;
}

PipelineResult proof_pipeline(double tau, const Truncation& trunc, const RationalShift& shift,
                              const CompactSetSpec& K, const EvalParams& params) {
    if (shift.q() == 0)
        throw DegenerateShift("proof_pipeline: a = b has no twisted target");
    const auto grid = sample_grid(K);
    PipelineResult out;
    const long long exps[2] = {shift.a(), shift.b()};
    double* errs[2] = {&out.err_a, &out.err_b};
    for (int idx = 0; idx < 2; ++idx) {
        const long long c = exps[idx];
        double err = 0.0;
        for (const Complex& s : grid) {
            const Complex lz = eval_target(Target::LogZeta,
                                           s + Complex(0.0, static_cast<double>(c) * tau), params);
            // Kronecker alignment gives p^{i tau} close to omega(p), so the
            // shifted shorthand p^{-i c tau} tracks omega(p)^{-c}.
            const Complex lp = log_truncated_product(s, trunc, -c, shift);
            err = std::max(err, std::abs(lz - lp));
        }
        *errs[idx] = err;
    }
    double diff = 0.0;
    for (const Complex& s : grid) {
        const Complex za = zeta(s + Complex(0.0, static_cast<double>(shift.a()) * tau), params);
        const Complex zb = zeta(s + Complex(0.0, static_cast<double>(shift.b()) * tau), params);
        diff = std::max(diff, std::abs(za - zb));
    }
    out.diff_zeta = diff;
    return out;
}

}  // namespace zetalab
