#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "zetalab/experiments.hpp"
#include "zetalab/rng.hpp"

using namespace zetalab;

namespace {

bool same_tuple(const SweepTuple& x, const SweepTuple& y) {
    return x.s == y.s && x.z == y.z && x.shift == y.shift && x.c == y.c;
}

SweepSpec small_sweep() {
    SweepSpec spec;
    spec.count = 150;
    spec.z_values = {10.0, 100.0, 1000.0};
    spec.shifts = {{3, 1}, {5, 2}};
    return spec;
}

}  // namespace

TEST_CASE("splitmix generator basics") {
    SplitMix64 a(42), b(42), c(43);
    for (int i = 0; i < 100; ++i) {
        const double u = a.uniform01();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        CHECK(u == b.uniform01());  // same seed, same stream
        CHECK(a.below(17) < 17);
        b.below(17);
    }
    // a different seed diverges immediately
    SplitMix64 a2(42);
    CHECK(a2.next() != c.next());
}

TEST_CASE("sweep sampling is seeded and in range") {
    const SweepSpec spec = small_sweep();
    const auto tuples = make_sweep(spec);
    REQUIRE(tuples.size() == 150);

    const auto again = make_sweep(spec);
    for (std::size_t i = 0; i < tuples.size(); ++i) CHECK(same_tuple(tuples[i], again[i]));

    SweepSpec other = spec;
    other.seed = 7;
    const auto different = make_sweep(other);
    bool any_diff = false;
    for (std::size_t i = 0; i < tuples.size(); ++i)
        if (!same_tuple(tuples[i], different[i])) any_diff = true;
    CHECK(any_diff);

    for (const auto& tuple : tuples) {
        CHECK(tuple.s.real() >= spec.sigma_min);
        CHECK(tuple.s.real() <= spec.sigma_max);
        CHECK(std::abs(tuple.s.imag()) <= spec.t_max);
        CHECK((tuple.z == 10.0 || tuple.z == 100.0 || tuple.z == 1000.0));
        CHECK((tuple.c == tuple.shift.a() || tuple.c == tuple.shift.b()));
    }
}

TEST_CASE("sweep spec validation") {
    SweepSpec spec = small_sweep();
    spec.sigma_min = 0.5;
    CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
    spec = small_sweep();
    spec.z_values = {1.0};
    CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
    spec = small_sweep();
    spec.shifts.clear();
    CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
    spec = small_sweep();
    spec.count = 0;
    CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
}

TEST_CASE("bound sweep: no violations, exact identities, determinism") {
    const SweepSpec spec = small_sweep();
    const auto report = run_bound_sweep(spec);
    REQUIRE(report.rows.size() == 150);

    CHECK(report.product_violations == 0);
    CHECK(report.tail_violations == 0);
    CHECK(report.step_violations == 0);
    CHECK(report.min_product_margin > 0.0);
    CHECK(report.min_tail_margin > 0.0);
    CHECK(report.min_step_margin > 0.0);

    // The congruence omega^a = omega^b is enforced in integer arithmetic, so
    // the identity residuals are exactly zero, not merely small.
    CHECK(report.max_omega_identity_err == 0.0);
    CHECK(report.max_product_identity_err == 0.0);
    CHECK(report.max_partial_sum_err < 1e-10);

    for (const auto& row : report.rows) {
        CHECK(row.abs_product <= row.bound);
        CHECK(row.abs_tail <= row.tail_bound);
    }

    const auto threaded = run_bound_sweep(spec, 4);
    CHECK(threaded.min_product_margin == report.min_product_margin);
    CHECK(threaded.min_tail_margin == report.min_tail_margin);
    CHECK(threaded.min_step_margin == report.min_step_margin);
    for (std::size_t i = 0; i < report.rows.size(); ++i) {
        CHECK(report.rows[i].abs_product == threaded.rows[i].abs_product);
        CHECK(report.rows[i].abs_tail == threaded.rows[i].abs_tail);
    }
}

TEST_CASE("pipeline experiment: structure, sources, determinism") {
    PipelineSpec spec;
    spec.query.z = 5.0;
    spec.query.shift = RationalShift{3, 1};
    spec.query.delta = 0.25;
    spec.query.T = 500.0;
    spec.query.step = 0.05;
    spec.K = CompactSetSpec::disk(Complex(0.75, 0.5), 0.03, 5);
    spec.hit_count = 5;
    spec.random_count = 5;

    const auto report = run_pipeline_experiment(spec);
    REQUIRE(report.samples.size() == 10);

    // the hit taus are the first accepted taus of the underlying scan
    const auto scan = kronecker_scan(spec.query);
    CHECK(report.scan_hit_total == static_cast<std::int64_t>(scan.taus.size()));
    REQUIRE(scan.taus.size() >= 5);
    for (int i = 0; i < 5; ++i) {
        CHECK(report.samples[static_cast<std::size_t>(i)].from_hit);
        CHECK(report.samples[static_cast<std::size_t>(i)].tau == scan.taus[static_cast<std::size_t>(i)]);
    }
    // the random taus replay the seeded stream, committed ahead of the run
    SplitMix64 rng(spec.seed);
    for (int i = 5; i < 10; ++i) {
        const auto& sample = report.samples[static_cast<std::size_t>(i)];
        CHECK_FALSE(sample.from_hit);
        CHECK(sample.tau == rng.uniform(0.0, spec.query.T));
        CHECK(sample.tau >= 0.0);
        CHECK(sample.tau <= spec.query.T);
    }

    for (const auto& sample : report.samples) {
        CHECK_FALSE(sample.skipped);
        CHECK(sample.result.err_a >= 0.0);
        CHECK(sample.result.err_b >= 0.0);
        CHECK(sample.result.diff_zeta >= 0.0);
    }
    CHECK(std::isfinite(report.median_err_a_hits));
    CHECK(std::isfinite(report.median_err_a_random));
    CHECK(std::isfinite(report.median_err_b_hits));
    CHECK(std::isfinite(report.median_err_b_random));

    const auto threaded = run_pipeline_experiment(spec, 3);
    REQUIRE(threaded.samples.size() == report.samples.size());
    for (std::size_t i = 0; i < report.samples.size(); ++i) {
        CHECK(threaded.samples[i].tau == report.samples[i].tau);
        CHECK(threaded.samples[i].result.err_a == report.samples[i].result.err_a);
        CHECK(threaded.samples[i].result.diff_zeta == report.samples[i].result.diff_zeta);
    }
    CHECK(threaded.median_err_a_hits == report.median_err_a_hits);
    CHECK(threaded.median_err_a_random == report.median_err_a_random);
}

TEST_CASE("pipeline spec validation") {
    PipelineSpec spec;
    spec.K = CompactSetSpec::disk(Complex(0.75, 0.5), 0.03, 5);
    CHECK_NOTHROW(spec.validate());
    spec.hit_count = 0;
    CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
    spec.hit_count = 5;
    spec.random_count = -1;
    CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
}

TEST_CASE("remark scan finds an early witness and verifies the identity") {
    RemarkScanSpec spec;
    spec.K = CompactSetSpec::disk(Complex(0.75, 0.0), 0.05, 9);
    spec.d = 3.0;
    spec.tau_min = 0.0;
    spec.tau_max = 10.0;
    spec.tau_step = 0.5;

    const auto report = run_remark_scan(spec);
    REQUIRE(report.rows.size() == 21);
    CHECK(report.rows.front().tau == 0.0);
    CHECK(report.rows.back().tau == doctest::Approx(10.0));

    // |z1 - z2| = |z1| * |z2/z1 - 1| holds pointwise to rounding error
    CHECK(report.max_identity_residual < 1e-12);
    for (const auto& row : report.rows) {
        CHECK(row.gap.sup_difference <=
              row.gap.sup_abs_zeta * row.gap.sup_ratio_minus_one + 1e-9);
    }

    // zeta exceeds 1 on this disk at low heights, so a tau where the
    // difference dominates the ratio deviation appears quickly
    CHECK(report.witness_tau > 0.0);
    CHECK(report.witness_tau <= 10.0);

    const auto threaded = run_remark_scan(spec, 4);
    CHECK(threaded.witness_tau == report.witness_tau);
    for (std::size_t i = 0; i < report.rows.size(); ++i)
        CHECK(threaded.rows[i].gap.sup_difference == report.rows[i].gap.sup_difference);
}

TEST_CASE("remark scan validation") {
    RemarkScanSpec spec;
    spec.K = CompactSetSpec::disk(Complex(0.75, 0.0), 0.05, 9);
    spec.tau_step = 0.0;
    CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
    spec.tau_step = 0.5;
    spec.tau_min = 5.0;
    spec.tau_max = 1.0;
    CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
}
