#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "zetalab/errors.hpp"
#include "zetalab/twisted_euler.hpp"

using namespace zetalab;

TEST_CASE("weights are the expected roots of unity") {
    const RationalShift half{3, 1};  // a-b = 2: omega(m) = (-1)^m
    CHECK(omega(1, half).real() == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(std::abs(omega(1, half).imag()) < 1e-15);
    CHECK(omega(2, half).real() == doctest::Approx(1.0).epsilon(1e-15));

    const RationalShift third{5, 2};  // a-b = 3
    CHECK(omega(1, third).real() == doctest::Approx(std::cos(2.0 * std::numbers::pi / 3.0)));
    CHECK(omega(1, third).imag() == doctest::Approx(std::sin(2.0 * std::numbers::pi / 3.0)));
    CHECK(std::abs(omega(3, third) - Complex(1.0, 0.0)) < 1e-15);

    // negative modulus runs the other way around the circle
    const RationalShift neg{1, 4};  // a-b = -3
    CHECK(omega(1, neg).real() == doctest::Approx(-0.5));
    CHECK(omega(1, neg).imag() == doctest::Approx(-std::sqrt(3.0) / 2.0));

    CHECK_THROWS_AS(omega(1, RationalShift(1, 1)), DegenerateShift);
    CHECK_THROWS_AS(omega(0, half), std::invalid_argument);
}

TEST_CASE("congruent exponents give bitwise identical weights") {
    // The key algebraic fact behind the two-sided product comparison:
    // omega(m)^a = omega(m)^b because a = b (mod a-b).  The reduction
    // happens in integer arithmetic, so the equality is exact, not approximate.
    const RationalShift shifts[] = {{3, 1}, {5, 2}, {7, 3}, {1, 4}, {-3, 1}};
    for (const auto& shift : shifts) {
        for (std::int64_t m = 1; m <= 200; ++m) {
            const Complex wa = omega_pow(m, shift.a(), shift);
            const Complex wb = omega_pow(m, shift.b(), shift);
            CHECK(wa.real() == wb.real());
            CHECK(wa.imag() == wb.imag());
            // periodicity in the exponent, same exactness
            const Complex w1 = omega_pow(m, 1, shift);
            const Complex w1q = omega_pow(m, 1 + shift.q(), shift);
            CHECK(w1.real() == w1q.real());
            CHECK(w1.imag() == w1q.imag());
        }
    }
}

TEST_CASE("weight partial sums stay bounded by the modulus") {
    // Full periods cancel, so the running sum never accumulates; this is
    // what makes the leading sum O(1) instead of O(pi(z)).
    const RationalShift shift{5, 2};
    Complex running{0.0, 0.0};
    for (std::int64_t m = 1; m <= 500; ++m) {
        running += omega_pow(m, 1, shift);
        CHECK(std::abs(running) < static_cast<double>(std::abs(shift.q())) + 1e-9);
    }
}

TEST_CASE("two-factor product against a frozen reference") {
    // primes 2 and 3, alternating weights: checked against an
    // arbitrary-precision evaluation and frozen.
    const Complex prod = truncated_product(Complex(0.75, 0.0), Truncation(3.0), 1, {3, 1});
    CHECK(prod.real() == doctest::Approx(1.1172375579433086).epsilon(1e-12));
    CHECK(std::abs(prod.imag()) < 1e-14);
}

TEST_CASE("untwisted product converges to zeta(2)") {
    // exponent c = a-b turns every weight into 1, so the product is the
    // classical Euler product for zeta, truncated at z.
    const double zeta2 = 1.6449340668482264;
    const Complex prod = truncated_product(Complex(2.0, 0.0), Truncation(1e4), 2, {3, 1});
    const double diff = zeta2 - prod.real();
    CHECK(diff > 0.0);  // every omitted factor exceeds 1
    CHECK(diff < 1e-3);
    CHECK(diff == doctest::Approx(1.6146102e-5).epsilon(1e-4));
}

TEST_CASE("log of the product exponentiates back") {
    const Complex samples[] = {{0.75, 0.0}, {0.6, 12.5}, {0.9, -4.0}, {1.3, 100.0}};
    for (Complex s : samples) {
        for (std::int64_t c : {1, 2, 3}) {
            const Complex lp = log_truncated_product(s, Truncation(200.0), c, {5, 2});
            const Complex p = truncated_product(s, Truncation(200.0), c, {5, 2});
            CHECK(std::abs(std::exp(lp) - p) < 1e-12 * std::abs(p));
        }
    }
}

TEST_CASE("leading sum: direct and summation-by-parts forms agree") {
    const Complex samples[] = {{0.75, 0.0}, {0.55, 33.0}, {1.1, -7.5}};
    const double zs[] = {10.0, 10.5, 97.0, 500.0};
    for (Complex s : samples) {
        for (double z : zs) {
            for (std::int64_t c : {1, 2}) {
                const Complex direct = leading_sum_direct(s, Truncation(z), c, {7, 3});
                const Complex parts = leading_sum_partial(s, Truncation(z), c, {7, 3});
                CHECK(std::abs(direct - parts) < 1e-12 * (1.0 + std::abs(direct)));
            }
        }
    }
}

TEST_CASE("tail sum: closed forms for a single prime") {
    // Only p = 2 participates at z = 2.  With weight +1 at s = 2 the inner
    // series is sum_{k>=2} (1/4)^k / k = -log(3/4) - 1/4; with weight -1 it
    // is 1/4 - log(5/4).
    const Complex plus = tail_sum(Complex(2.0, 0.0), Truncation(2.0), 2, {3, 1});
    CHECK(plus.real() == doctest::Approx(0.037682072451780927).epsilon(1e-13));
    CHECK(std::abs(plus.imag()) < 1e-15);

    const Complex minus = tail_sum(Complex(2.0, 0.0), Truncation(2.0), 1, {3, 1});
    CHECK(minus.real() == doctest::Approx(0.02685644868579024).epsilon(1e-12));
}

TEST_CASE("tail sum against a frozen reference") {
    const Complex tail = tail_sum(Complex(0.6, 3.0), Truncation(50.0), 1, {3, 1});
    CHECK(tail.real() == doctest::Approx(-0.16976015758056686).epsilon(1e-11));
    CHECK(tail.imag() == doctest::Approx(0.17183581502167844).epsilon(1e-11));
}

TEST_CASE("tail majorant dominates the tail sum") {
    for (double sigma : {0.55, 0.6, 0.75, 0.95}) {
        for (double t : {0.0, 8.0, 120.0}) {
            for (double z : {10.0, 100.0, 1000.0}) {
                const Complex tail = tail_sum(Complex(sigma, t), Truncation(z), 1, {5, 2});
                CHECK(std::abs(tail) <= tail_bound(sigma, Truncation(z)));
            }
        }
    }
    // closed form at a point where it simplifies: 7(1 - 1/10)/(1/2) * 2
    CHECK(tail_bound(0.75, Truncation(100.0)) == doctest::Approx(12.6).epsilon(1e-12));
}

TEST_CASE("sup bound: degenerate cutoff and frozen value") {
    // z = 1 collapses the formula to exp(|a-b|) regardless of s.
    CHECK(bound_rhs_formula(Complex(0.75, 0.0), 1.0, {3, 1}) ==
          doctest::Approx(std::exp(2.0)).epsilon(1e-12));
    CHECK(bound_rhs_formula(Complex(0.9, 55.0), 1.0, {5, 2}) ==
          doctest::Approx(std::exp(3.0)).epsilon(1e-12));

    CHECK(bound_rhs(Complex(0.75, 0.0), Truncation(100.0), {3, 1}) ==
          doctest::Approx(5771122.8641966493).epsilon(1e-10));

    // grows with the cutoff once 2|s| > 1
    CHECK(bound_rhs(Complex(0.75, 0.0), Truncation(10.0), {3, 1}) <
          bound_rhs(Complex(0.75, 0.0), Truncation(1000.0), {3, 1}));

    CHECK_THROWS_AS(bound_rhs(Complex(0.5, 0.0), Truncation(10.0), {3, 1}), SigmaOutOfRange);
    CHECK_THROWS_AS(bound_rhs_formula(Complex(0.75, 0.0), 0.5, {3, 1}), std::invalid_argument);
}

TEST_CASE("sup bound dominates the product at sample points") {
    const Complex samples[] = {{0.75, 5.0}, {0.6, 20.0}, {0.95, -40.0}};
    for (Complex s : samples) {
        for (double z : {10.0, 100.0, 1000.0}) {
            for (std::int64_t c : {1, 2, 3}) {
                const double prod = std::abs(truncated_product(s, Truncation(z), c, {3, 1}));
                CHECK(prod <= bound_rhs(s, Truncation(z), {3, 1}));
            }
        }
    }
}

TEST_CASE("domain guards") {
    CHECK_THROWS_AS(truncated_product(Complex(0.0, 3.0), Truncation(10.0), 1, {3, 1}),
                    SigmaOutOfRange);
    CHECK_THROWS_AS(tail_sum(Complex(0.5, 3.0), Truncation(10.0), 1, {3, 1}), SigmaOutOfRange);
    CHECK_THROWS_AS(truncated_product(Complex(0.75, 0.0), Truncation(10.0), 1, {1, 1}),
                    DegenerateShift);
}
