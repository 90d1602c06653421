#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "zetalab/errors.hpp"
#include "zetalab/selfapprox.hpp"
#include "zetalab/twisted_euler.hpp"
#include "zetalab/zeta_kernel.hpp"

using namespace zetalab;

TEST_CASE("compact set validation") {
    CHECK_NOTHROW(CompactSetSpec::disk(Complex(0.75, 0.0), 0.05, 25).validate());
    // closure must stay inside the open strip
    CHECK_THROWS_AS(CompactSetSpec::disk(Complex(0.75, 0.0), 0.3, 25).validate(),
                    SetOutsideStrip);
    CHECK_THROWS_AS(CompactSetSpec::disk(Complex(0.55, 0.0), 0.06, 25).validate(),
                    SetOutsideStrip);
    CHECK_THROWS_AS(
        CompactSetSpec::rectangle(RectRegion{0.5, 0.9, -0.1, 0.1}, 9).validate(),
        SetOutsideStrip);
    CHECK_THROWS_AS(
        CompactSetSpec::rectangle(RectRegion{0.6, 1.0, -0.1, 0.1}, 9).validate(),
        SetOutsideStrip);
    CHECK_THROWS_AS(CompactSetSpec::disk(Complex(0.75, 0.0), 0.05, 0).validate(),
                    std::invalid_argument);
}

TEST_CASE("sampling grids") {
    SUBCASE("disk budget 25 realizes 34 points") {
        const auto K = CompactSetSpec::disk(Complex(0.75, 0.0), 0.05, 25);
        const auto grid = sample_grid(K);
        CHECK(grid.size() == 34);
        CHECK(grid.front() == Complex(0.75, 0.0));
        double max_dist = 0.0;
        bool boundary_hit = false;
        for (Complex p : grid) {
            const double dist = std::abs(p - K.center);
            CHECK(dist <= K.radius + 1e-12);
            max_dist = std::max(max_dist, dist);
            if (std::abs(dist - K.radius) < 1e-12) boundary_hit = true;
        }
        CHECK(boundary_hit);
        CHECK(max_dist == doctest::Approx(K.radius));
    }
    SUBCASE("disk budget 9 realizes 17 points") {
        const auto grid = sample_grid(CompactSetSpec::disk(Complex(0.8, 0.0), 0.03, 9));
        CHECK(grid.size() == 17);
    }
    SUBCASE("budget 1 gives the center alone") {
        const auto grid = sample_grid(CompactSetSpec::disk(Complex(0.75, 0.1), 0.05, 1));
        REQUIRE(grid.size() == 1);
        CHECK(grid[0] == Complex(0.75, 0.1));
    }
    SUBCASE("rectangle lattice contains the corners") {
        const RectRegion r{0.6, 0.9, -0.1, 0.3};
        const auto grid = sample_grid(CompactSetSpec::rectangle(r, 9));
        CHECK(grid.size() == 9);
        for (Complex corner : {Complex(0.6, -0.1), Complex(0.6, 0.3), Complex(0.9, -0.1),
                               Complex(0.9, 0.3)}) {
            CHECK(std::count(grid.begin(), grid.end(), corner) == 1);
        }
        for (Complex p : grid) {
            CHECK(p.real() >= r.sigma_min);
            CHECK(p.real() <= r.sigma_max);
            CHECK(p.imag() >= r.t_min);
            CHECK(p.imag() <= r.t_max);
        }
    }
}

TEST_CASE("shift modes") {
    CHECK(ShiftMode::rational(RationalShift{3, 1}).d() == doctest::Approx(3.0));
    CHECK(ShiftMode::rational(RationalShift{-5, 2}).d() == doctest::Approx(-2.5));
    CHECK(ShiftMode::real(2.718).d() == doctest::Approx(2.718));
    CHECK(ShiftMode::bagchi().d() == 0.0);

    CHECK(ShiftMode::rational(RationalShift{3, 1}).covered_by_theorem());
    CHECK_FALSE(ShiftMode::rational(RationalShift{2, 1}).covered_by_theorem());
    CHECK_FALSE(ShiftMode::real(3.0).covered_by_theorem());
    CHECK_FALSE(ShiftMode::bagchi().covered_by_theorem());
}

TEST_CASE("experiment validation") {
    ShiftExperiment exp;
    exp.K = CompactSetSpec::disk(Complex(0.75, 0.0), 0.05, 9);
    CHECK_NOTHROW(exp.validate());
    exp.epsilon = 0.0;
    CHECK_THROWS_AS(exp.validate(), std::invalid_argument);
    exp.epsilon = 0.5;
    exp.T = 1.0;  // fewer than 100 grid points
    CHECK_THROWS_AS(exp.validate(), std::invalid_argument);
}

TEST_CASE("sup norm: degenerate shifts vanish identically") {
    const auto K = CompactSetSpec::disk(Complex(0.75, 0.1), 0.05, 9);
    CHECK(sup_norm_diff(Target::Zeta, K, 0.0, 3.0) == 0.0);
    CHECK(sup_norm_diff(Target::Zeta, K, 17.3, 1.0) == 0.0);
    CHECK(sup_norm_diff(Target::LogZeta, K, 9.1, 1.0) == 0.0);
}

TEST_CASE("sup norm matches a direct grid maximum") {
    const auto K = CompactSetSpec::disk(Complex(0.75, 0.0), 0.05, 9);
    const double tau = 1.7, d = 3.0;
    const double sup = sup_norm_diff(Target::Zeta, K, tau, d);
    double expected = 0.0;
    for (Complex s : sample_grid(K)) {
        expected = std::max(expected, std::abs(zeta(s + Complex(0.0, tau)) -
                                               zeta(s + Complex(0.0, d * tau))));
    }
    CHECK(sup == expected);
    CHECK(sup > 0.0);
}

TEST_CASE("sup norm propagates branch failures as skips") {
    // d = 0 forces an evaluation at the real point of the disk, where the
    // log branch cannot be continued past the pole.
    const auto K = CompactSetSpec::disk(Complex(0.75, 0.0), 0.05, 25);
    CHECK_THROWS_AS(sup_norm_diff(Target::LogZeta, K, 5.0, 0.0), SkippedTau);
}

TEST_CASE("sup norm is monotone under nested rectangle lattices") {
    // The m-by-m lattices for m = 3, 5, 9 are nested, so the grid maximum
    // can only grow with the budget.
    const RectRegion r{0.7, 0.8, 0.2, 0.4};
    const double tau = 2.3, d = 3.0;
    const double s9 = sup_norm_diff(Target::Zeta, CompactSetSpec::rectangle(r, 9), tau, d);
    const double s25 = sup_norm_diff(Target::Zeta, CompactSetSpec::rectangle(r, 25), tau, d);
    const double s81 = sup_norm_diff(Target::Zeta, CompactSetSpec::rectangle(r, 81), tau, d);
    CHECK(s9 <= s25);
    CHECK(s25 <= s81);
}

TEST_CASE("density: identical shifts accept everything") {
    ShiftExperiment exp;
    exp.target = Target::Zeta;
    exp.mode = ShiftMode::real(1.0);
    exp.epsilon = 1e-12;
    exp.T = 10.0;
    exp.tau_step = 0.05;
    exp.K = CompactSetSpec::disk(Complex(0.75, 0.0), 0.05, 9);

    const auto report = density(exp);
    CHECK(report.total_count == 200);
    CHECK(report.skipped_count == 0);
    CHECK(report.accepted_count == 200);
    CHECK(report.fraction == 1.0);
    CHECK(report.hits.size() == 200);
    CHECK(report.hits.front() == doctest::Approx(0.05));  // tau = 0 is excluded
    for (double sup : report.sup_trace) CHECK(sup == 0.0);
}

TEST_CASE("density: huge tolerance accepts everything") {
    ShiftExperiment exp;
    exp.target = Target::Zeta;
    exp.mode = ShiftMode::rational(RationalShift{3, 1});
    exp.epsilon = 1e6;
    exp.T = 10.0;
    exp.tau_step = 0.05;
    exp.K = CompactSetSpec::disk(Complex(0.75, 0.0), 0.05, 1);
    const auto report = density(exp);
    CHECK(report.fraction == 1.0);
    CHECK(report.accepted_count == report.total_count);
}

TEST_CASE("density: fraction is monotone in the tolerance") {
    ShiftExperiment exp;
    exp.target = Target::Zeta;
    exp.mode = ShiftMode::rational(RationalShift{3, 1});
    exp.T = 25.0;
    exp.tau_step = 0.05;
    exp.K = CompactSetSpec::disk(Complex(0.75, 0.0), 0.05, 1);

    exp.epsilon = 0.3;
    const double f1 = density(exp).fraction;
    exp.epsilon = 0.6;
    const double f2 = density(exp).fraction;
    exp.epsilon = 1.2;
    const double f3 = density(exp).fraction;
    CHECK(f1 <= f2);
    CHECK(f2 <= f3);
    CHECK(f3 > 0.0);
}

TEST_CASE("density: report fields are consistent and match the scalar path") {
    ShiftExperiment exp;
    exp.target = Target::Zeta;
    exp.mode = ShiftMode::rational(RationalShift{3, 1});
    exp.epsilon = 0.5;
    exp.T = 10.0;
    exp.tau_step = 0.05;
    exp.K = CompactSetSpec::disk(Complex(0.75, 0.0), 0.05, 9);

    const auto report = density(exp);
    CHECK(report.total_count == static_cast<std::int64_t>(report.sup_trace.size()));
    CHECK(report.accepted_count == static_cast<std::int64_t>(report.hits.size()));
    CHECK(report.fraction ==
          doctest::Approx(static_cast<double>(report.accepted_count) /
                          static_cast<double>(report.total_count - report.skipped_count)));

    // The streamed per-tau sups agree with one-off scalar evaluations.
    for (std::int64_t k : {1, 7, 64, 200}) {
        const double tau = static_cast<double>(k) * exp.tau_step;
        const double direct = sup_norm_diff(Target::Zeta, exp.K, tau, 3.0);
        CHECK(report.sup_trace[static_cast<std::size_t>(k - 1)] ==
              doctest::Approx(direct).epsilon(1e-9));
    }
}

TEST_CASE("density: independent of the worker count") {
    ShiftExperiment exp;
    exp.target = Target::Zeta;
    exp.mode = ShiftMode::rational(RationalShift{5, 2});
    exp.epsilon = 0.8;
    exp.T = 60.0;
    exp.tau_step = 0.05;
    exp.K = CompactSetSpec::disk(Complex(0.75, 0.0), 0.05, 9);

    const auto serial = density(exp, 1);
    const auto threaded = density(exp, 4);
    CHECK(serial.sup_trace == threaded.sup_trace);  // bitwise
    CHECK(serial.hits == threaded.hits);
    CHECK(serial.fraction == threaded.fraction);
}

TEST_CASE("density: log target skips, and an impossible base skips everything") {
    SUBCASE("clean log scan") {
        ShiftExperiment exp;
        exp.target = Target::LogZeta;
        exp.mode = ShiftMode::rational(RationalShift{3, 1});
        exp.epsilon = 1e6;
        exp.T = 10.0;
        exp.tau_step = 0.05;
        exp.K = CompactSetSpec::rectangle(RectRegion{0.7, 0.8, 0.1, 0.2}, 4);
        const auto report = density(exp);
        CHECK(report.skipped_count == 0);
        CHECK(report.fraction == 1.0);
    }
    SUBCASE("fixed base on the real axis cannot be continued") {
        ShiftExperiment exp;
        exp.target = Target::LogZeta;
        exp.mode = ShiftMode::bagchi();
        exp.epsilon = 1e6;
        exp.T = 10.0;
        exp.tau_step = 0.05;
        exp.K = CompactSetSpec::disk(Complex(0.75, 0.0), 0.05, 9);  // contains Im = 0
        const auto report = density(exp);
        CHECK(report.skipped_count == report.total_count);
        CHECK(report.accepted_count == 0);
        CHECK(report.fraction == 0.0);
    }
}

TEST_CASE("ratio-versus-difference gap view") {
    const auto K = CompactSetSpec::disk(Complex(0.75, 0.3), 0.05, 9);
    SUBCASE("degenerate comparison") {
        const auto r = remark_gap_demo(K, 4.2, 1.0);
        CHECK(r.sup_ratio_minus_one == 0.0);
        CHECK(r.sup_difference == 0.0);
        CHECK(r.sup_abs_zeta > 0.0);
    }
    SUBCASE("sups satisfy the factorization inequality") {
        const auto r = remark_gap_demo(K, 4.2, 3.0);
        CHECK(r.sup_difference > 0.0);
        CHECK(r.sup_difference <= r.sup_abs_zeta * r.sup_ratio_minus_one + 1e-12);
    }
}

TEST_CASE("pipeline: congruent exponents give identical truncated targets") {
    // omega^{-a} = omega^{-b}, so at tau = 0 the two legs compare the same
    // log zeta value against the same product: the errors coincide exactly
    // and the zeta difference vanishes.
    const auto K = CompactSetSpec::disk(Complex(0.75, 0.6), 0.05, 9);
    const auto res = proof_pipeline(0.0, Truncation(10.0), RationalShift{3, 1}, K);
    CHECK(res.err_a == res.err_b);
    CHECK(res.diff_zeta == 0.0);
    CHECK(res.err_a > 0.01);  // the truncated twisted product is not log zeta at tau = 0
}

TEST_CASE("pipeline: errors match a manual recomputation on a single point") {
    const Complex s0(0.75, 0.6);
    const auto K = CompactSetSpec::disk(s0, 0.01, 1);
    const Truncation z(10.0);
    const RationalShift shift{3, 1};
    const double tau = 2.0;
    const auto res = proof_pipeline(tau, z, shift, K);

    const double err_a =
        std::abs(log_zeta(s0 + Complex(0.0, 3.0 * tau)) - log_truncated_product(s0, z, -3, shift));
    const double err_b =
        std::abs(log_zeta(s0 + Complex(0.0, 1.0 * tau)) - log_truncated_product(s0, z, -1, shift));
    const double diff = std::abs(zeta(s0 + Complex(0.0, 3.0 * tau)) -
                                 zeta(s0 + Complex(0.0, 1.0 * tau)));
    CHECK(res.err_a == err_a);
    CHECK(res.err_b == err_b);
    CHECK(res.diff_zeta == diff);
}

TEST_CASE("pipeline: skip and degenerate guards") {
    const auto real_axis_K = CompactSetSpec::disk(Complex(0.75, 0.0), 0.05, 9);
    // tau = 0 with a real grid point puts the log evaluation on the pole path
    CHECK_THROWS_AS(proof_pipeline(0.0, Truncation(10.0), RationalShift{3, 1}, real_axis_K),
                    SkippedTau);
    CHECK_THROWS_AS(proof_pipeline(1.0, Truncation(10.0), RationalShift{1, 1}, real_axis_K),
                    DegenerateShift);
}
