#include "zetalab/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "zetalab/errors.hpp"
#include "zetalab/parallel.hpp"
#include "zetalab/rng.hpp"
#include "zetalab/twisted_euler.hpp"
#include "zetalab/zeta_kernel.hpp"

namespace zetalab {

void SweepSpec::validate() const {
    if (count < 1) throw std::invalid_argument("SweepSpec: count must be positive");
    if (!(sigma_min > 0.5) || !(sigma_min <= sigma_max))
        throw std::invalid_argument("SweepSpec: need 0.5 < sigma_min <= sigma_max");
    if (!(t_max >= 0.0)) throw std::invalid_argument("SweepSpec: t_max must be >= 0");
    if (z_values.empty() || shifts.empty())
        throw std::invalid_argument("SweepSpec: z_values and shifts must be non-empty");
    for (double z : z_values)
        if (!(z >= 2.0)) throw std::invalid_argument("SweepSpec: every z must be >= 2");
    for (const RationalShift& s : shifts)
        if (s.q() == 0) throw std::invalid_argument("SweepSpec: shifts need a != b");
}

std::vector<SweepTuple> make_sweep(const SweepSpec& spec) {
    spec.validate();
    SplitMix64 rng(spec.seed);
    std::vector<SweepTuple> tuples;
    tuples.reserve(static_cast<std::size_t>(spec.count));
    for (std::int64_t i = 0; i < spec.count; ++i) {
        SweepTuple tuple;
        const double sigma = rng.uniform(spec.sigma_min, spec.sigma_max);
        const double t = rng.uniform(-spec.t_max, spec.t_max);
        tuple.s = Complex(sigma, t);
        tuple.z = spec.z_values[rng.below(spec.z_values.size())];
        tuple.shift = spec.shifts[rng.below(spec.shifts.size())];
        tuple.c = rng.below(2) == 0 ? tuple.shift.a() : tuple.shift.b();
        tuples.push_back(tuple);
    }
    return tuples;
}

namespace {

// 7 * sum_{2<=n<=z} n^{-2sigma} vs sum_{p<=z} 1/(p^{2sigma} - p^{sigma}):
// the elementwise comparison behind the tail majorant's constant.
double step_margin(double sigma, double z, const std::vector<std::int64_t>& primes) {
    double lhs = 0.0;
    for (std::int64_t p : primes) {
        const double pd = static_cast<double>(p);
        lhs += 1.0 / (std::pow(pd, 2.0 * sigma) - std::pow(pd, sigma));
    }
    double rhs = 0.0;
    const auto zi = static_cast<std::int64_t>(std::floor(z));
    for (std::int64_t n = 2; n <= zi; ++n)
        rhs += std::pow(static_cast<double>(n), -2.0 * sigma);
    return 7.0 * rhs - lhs;
}

double median(std::vector<double> v) {
    if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    if (n % 2 == 1) return v[n / 2];
    return 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

SweepReport run_bound_sweep(const SweepSpec& spec, int workers) {
    const auto tuples = make_sweep(spec);
    SweepReport report;
    report.rows.resize(tuples.size());

    struct ChunkStats {
        std::int64_t product_violations = 0;
        std::int64_t tail_violations = 0;
        std::int64_t step_violations = 0;
        double min_product_margin = std::numeric_limits<double>::infinity();
        double min_tail_margin = std::numeric_limits<double>::infinity();
        double min_step_margin = std::numeric_limits<double>::infinity();
        double max_omega_err = 0.0;
        double max_product_err = 0.0;
        double max_partial_err = 0.0;
    };

    constexpr std::int64_t kChunk = 256;
    const auto n = static_cast<std::int64_t>(tuples.size());
    const std::int64_t n_chunks = (n + kChunk - 1) / kChunk;
    std::vector<ChunkStats> stats(static_cast<std::size_t>(n_chunks));

    parallel_blocks(n_chunks, workers, [&](std::int64_t chunk) {
        ChunkStats& st = stats[static_cast<std::size_t>(chunk)];
        const std::int64_t lo = chunk * kChunk;
        const std::int64_t hi = std::min(n, lo + kChunk);
        for (std::int64_t i = lo; i < hi; ++i) {
            const SweepTuple& tuple = tuples[static_cast<std::size_t>(i)];
            const Truncation trunc(tuple.z);
            SweepRow& row = report.rows[static_cast<std::size_t>(i)];
            row.tuple = tuple;
            row.abs_product = std::abs(truncated_product(tuple.s, trunc, tuple.c, tuple.shift));
            row.bound = bound_rhs(tuple.s, trunc, tuple.shift);
            row.abs_tail = std::abs(tail_sum(tuple.s, trunc, tuple.c, tuple.shift));
            row.tail_bound = tail_bound(tuple.s.real(), trunc);

            if (row.abs_product > row.bound) ++st.product_violations;
            if (row.abs_tail > row.tail_bound) ++st.tail_violations;
            st.min_product_margin =
                std::min(st.min_product_margin, std::log(row.bound / row.abs_product));
            st.min_tail_margin = std::min(st.min_tail_margin, row.tail_bound - row.abs_tail);

            const auto primes = primes_upto(tuple.z);
            const double sm = step_margin(tuple.s.real(), tuple.z, primes);
            if (sm < 0.0) ++st.step_violations;
            st.min_step_margin = std::min(st.min_step_margin, sm);

            for (std::size_t m = 1; m <= primes.size(); ++m) {
                const Complex wa = omega_pow(static_cast<std::int64_t>(m), tuple.shift.a(),
                                             tuple.shift);
                const Complex wb = omega_pow(static_cast<std::int64_t>(m), tuple.shift.b(),
                                             tuple.shift);
                st.max_omega_err = std::max(st.max_omega_err, std::abs(wa - wb));
            }
            const Complex pa = truncated_product(tuple.s, trunc, -tuple.shift.a(), tuple.shift);
            const Complex pb = truncated_product(tuple.s, trunc, -tuple.shift.b(), tuple.shift);
            st.max_product_err = std::max(st.max_product_err, std::abs(pa - pb));

            const Complex direct = leading_sum_direct(tuple.s, trunc, tuple.c, tuple.shift);
            const Complex partial = leading_sum_partial(tuple.s, trunc, tuple.c, tuple.shift);
            st.max_partial_err = std::max(st.max_partial_err, std::abs(direct - partial));
        }
    });

    report.min_product_margin = std::numeric_limits<double>::infinity();
    report.min_tail_margin = std::numeric_limits<double>::infinity();
    report.min_step_margin = std::numeric_limits<double>::infinity();
    for (const ChunkStats& st : stats) {
        report.product_violations += st.product_violations;
        report.tail_violations += st.tail_violations;
        report.step_violations += st.step_violations;
        report.min_product_margin = std::min(report.min_product_margin, st.min_product_margin);
        report.min_tail_margin = std::min(report.min_tail_margin, st.min_tail_margin);
        report.min_step_margin = std::min(report.min_step_margin, st.min_step_margin);
        report.max_omega_identity_err = std::max(report.max_omega_identity_err, st.max_omega_err);
        report.max_product_identity_err =
            std::max(report.max_product_identity_err, st.max_product_err);
        report.max_partial_sum_err = std::max(report.max_partial_sum_err, st.max_partial_err);
    }
    return report;
}

void PipelineSpec::validate() const {
    query.validate();
    K.validate();
    if (hit_count < 1 || random_count < 1)
        throw std::invalid_argument("PipelineSpec: sample counts must be positive");
}

PipelineReport run_pipeline_experiment(const PipelineSpec& spec, int workers,
                                       const EvalParams& params) {
    spec.validate();
    const TauHits scan = kronecker_scan(spec.query, workers);

    PipelineReport report;
    report.scan_hit_total = static_cast<std::int64_t>(scan.taus.size());

    const std::size_t n_hits =
        std::min<std::size_t>(scan.taus.size(), static_cast<std::size_t>(spec.hit_count));
    for (std::size_t i = 0; i < n_hits; ++i) {
        PipelineSample sample;
        sample.tau = scan.taus[i];
        sample.from_hit = true;
        report.samples.push_back(sample);
    }
    SplitMix64 rng(spec.seed);
    for (int i = 0; i < spec.random_count; ++i) {
        PipelineSample sample;
        sample.tau = rng.uniform(0.0, spec.query.T);
        sample.from_hit = false;
        report.samples.push_back(sample);
    }

    const Truncation trunc(spec.query.z);
    const auto n_samples = static_cast<std::int64_t>(report.samples.size());
    parallel_blocks(n_samples, workers, [&](std::int64_t i) {
        PipelineSample& sample = report.samples[static_cast<std::size_t>(i)];
        try {
            sample.result =
                proof_pipeline(sample.tau, trunc, spec.query.shift, spec.K, params);
        } catch (const SkippedTau&) {
            sample.skipped = true;
        }
    });

    std::vector<double> a_hits, a_rand, b_hits, b_rand;
    for (const PipelineSample& sample : report.samples) {
        if (sample.skipped) continue;
        (sample.from_hit ? a_hits : a_rand).push_back(sample.result.err_a);
        (sample.from_hit ? b_hits : b_rand).push_back(sample.result.err_b);
    }
    report.median_err_a_hits = median(a_hits);
    report.median_err_a_random = median(a_rand);
    report.median_err_b_hits = median(b_hits);
    report.median_err_b_random = median(b_rand);
    return report;
}

void RemarkScanSpec::validate() const {
    K.validate();
    if (!(tau_step > 0.0)) throw std::invalid_argument("RemarkScanSpec: tau_step must be positive");
    if (!(tau_min <= tau_max))
        throw std::invalid_argument("RemarkScanSpec: need tau_min <= tau_max");
    if (!std::isfinite(d)) throw std::invalid_argument("RemarkScanSpec: d must be finite");
}

RemarkScanReport run_remark_scan(const RemarkScanSpec& spec, int workers,
                                 const EvalParams& params) {
    spec.validate();
    const auto grid = sample_grid(spec.K);
    const auto n_steps =
        static_cast<std::int64_t>(std::floor((spec.tau_max - spec.tau_min) / spec.tau_step + 1e-9));

    RemarkScanReport report;
    report.rows.resize(static_cast<std::size_t>(n_steps + 1));

    parallel_blocks(n_steps + 1, workers, [&](std::int64_t i) {
        const double tau = spec.tau_min + static_cast<double>(i) * spec.tau_step;
        RemarkScanRow& row = report.rows[static_cast<std::size_t>(i)];
        row.tau = tau;
        double residual = 0.0;
        RemarkGapResult gap;
        for (const Complex& s : grid) {
            const Complex z1 = zeta(s + Complex(0.0, tau), params);
            if (std::abs(z1) < 1e-10)
                throw DivisionNearZero("remark scan: |zeta| < 1e-10 at tau = " +
                                       std::to_string(tau));
            const Complex z2 = zeta(s + Complex(0.0, spec.d * tau), params);
            const double diff = std::abs(z1 - z2);
            const double via_ratio = std::abs(z1) * std::abs(z2 / z1 - 1.0);
            residual = std::max(residual, std::abs(diff - via_ratio));
            gap.sup_abs_zeta = std::max(gap.sup_abs_zeta, std::abs(z1));
            gap.sup_ratio_minus_one = std::max(gap.sup_ratio_minus_one, std::abs(z2 / z1 - 1.0));
            gap.sup_difference = std::max(gap.sup_difference, diff);
        }
        row.gap = gap;
        row.max_identity_residual = residual;
    });

    report.witness_tau = -1.0;
    for (const RemarkScanRow& row : report.rows) {
        report.max_identity_residual =
            std::max(report.max_identity_residual, row.max_identity_residual);
        if (report.witness_tau < 0.0 && row.gap.sup_abs_zeta > 1.0 &&
            row.gap.sup_difference > row.gap.sup_ratio_minus_one)
            report.witness_tau = row.tau;
    }
    return report;
}

}  // namespace zetalab
