#ifndef ZETALAB_EXPERIMENTS_HPP
#define ZETALAB_EXPERIMENTS_HPP

#include <cstdint>
#include <vector>

#include "zetalab/diophantine.hpp"
#include "zetalab/selfapprox.hpp"
#include "zetalab/types.hpp"

namespace zetalab {

// ---------------------------------------------------------------------------
// Bound sweep: random (s, z, shift, c) tuples checked against the closed-form
// product bound and the tail majorant.
// ---------------------------------------------------------------------------

struct SweepSpec {
    std::int64_t count = 10000;
    std::uint64_t seed = 20260823ULL;
    double sigma_min = 0.55;
    double sigma_max = 0.95;
    double t_max = 50.0;
    std::vector<double> z_values{10.0, 100.0, 1000.0, 10000.0};
    std::vector<RationalShift> shifts{{3, 1}, {5, 2}, {7, 3}};

    void validate() const;
};

struct SweepTuple {
    Complex s;
    double z;
    RationalShift shift{3, 1};
    std::int64_t c = 1;  // drawn from {a, b}
};

struct SweepRow {
    SweepTuple tuple;
    double abs_product = 0.0;   // |prod_z(s, omega^c)|
    double bound = 0.0;         // closed-form bound
    double abs_tail = 0.0;      // |tail_sum|
    double tail_bound = 0.0;    // 7(1-z^{1-2sigma})/(2sigma-1)
};

struct SweepReport {
    std::vector<SweepRow> rows;
    std::int64_t product_violations = 0;  // abs_product > bound
    std::int64_t tail_violations = 0;     // abs_tail > tail_bound
    std::int64_t step_violations = 0;     // prime-power step sum > 7 * zeta
    double min_product_margin = 0.0;      // min of log(bound/abs_product)
    double min_tail_margin = 0.0;         // min of tail_bound - abs_tail
    double min_step_margin = 0.0;         // min of 7*sum(n^-2s) - sum over primes
    // Exact-identity residuals maximized over the sweep:
    double max_omega_identity_err = 0.0;    // |omega(p)^a - omega(p)^b|
    double max_product_identity_err = 0.0;  // |prod(omega^{-a}) - prod(omega^{-b})|
    double max_partial_sum_err = 0.0;       // |direct - partial| leading sums
};

std::vector<SweepTuple> make_sweep(const SweepSpec& spec);
SweepReport run_bound_sweep(const SweepSpec& spec, int workers = 1);

// ---------------------------------------------------------------------------
// Product-approximation pipeline over Kronecker hits vs random taus.
// ---------------------------------------------------------------------------

struct PipelineSpec {
    KroneckerQuery query;         // scan that supplies aligned taus
    CompactSetSpec K;
    int hit_count = 20;           // first hits taken from the scan
    int random_count = 20;        // uniform taus in [0, query.T]
    std::uint64_t seed = 20260823ULL;

    void validate() const;
};

struct PipelineSample {
    double tau = 0.0;
    bool from_hit = false;
    bool skipped = false;  // branch obstruction; excluded from medians
    PipelineResult result;
};

struct PipelineReport {
    std::vector<PipelineSample> samples;  // hits first, then randoms
    double median_err_a_hits = 0.0;
    double median_err_a_random = 0.0;
    double median_err_b_hits = 0.0;
    double median_err_b_random = 0.0;
    std::int64_t scan_hit_total = 0;  // full hit count of the underlying scan
};

PipelineReport run_pipeline_experiment(const PipelineSpec& spec, int workers = 1,
                                       const EvalParams& params = {});

// ---------------------------------------------------------------------------
// Ratio-vs-difference scan: searches [tau_min, tau_max] for shifts where
// |zeta| > 1 makes the difference exceed the ratio deviation.
// ---------------------------------------------------------------------------

struct RemarkScanSpec {
    CompactSetSpec K;
    double d = 3.0;
    double tau_min = 0.0;
    double tau_max = 100.0;
    double tau_step = 0.5;

    void validate() const;
};

struct RemarkScanRow {
    double tau = 0.0;
    RemarkGapResult gap;
    double max_identity_residual = 0.0;  // pointwise factorization check
};

struct RemarkScanReport {
    std::vector<RemarkScanRow> rows;
    // First scanned tau with sup_abs_zeta > 1 and sup_difference >
    // sup_ratio_minus_one; -1 when none was found.
    double witness_tau = -1.0;
    double max_identity_residual = 0.0;
};

RemarkScanReport run_remark_scan(const RemarkScanSpec& spec, int workers = 1,
                                 const EvalParams& params = {});

}  // namespace zetalab

#endif
