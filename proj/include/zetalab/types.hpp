#ifndef ZETALAB_TYPES_HPP
#define ZETALAB_TYPES_HPP

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace zetalab {

using Complex = std::complex<double>;

/// Tuning knobs for the Euler-Maclaurin evaluator.
///
/// `series_terms_n` is a lower bound on the main-sum cutoff; the evaluator
/// raises it to 2(|t|+10) automatically, so the default reproduces the
/// standard parameter policy N = max(50, ceil(2(|t|+10))).
struct EvalParams {
    int series_terms_n = 50;     // >= 16
    int bernoulli_order = 12;    // even, in [2, 24]; highest Bernoulli index used
    double target_abs_err = 1e-10;  // >= 1e-12

    void validate() const {
        if (series_terms_n < 16)
            throw std::invalid_argument("EvalParams: series_terms_n must be >= 16");
        if (bernoulli_order < 2 || bernoulli_order > 24 || bernoulli_order % 2 != 0)
            throw std::invalid_argument("EvalParams: bernoulli_order must be even in [2,24]");
        if (!(target_abs_err >= 1e-12))
            throw std::invalid_argument("EvalParams: target_abs_err must be >= 1e-12");
    }
};

/// Axis-aligned rectangle in the s-plane, sigma = Re(s), t = Im(s).
struct RectRegion {
    double sigma_min = 0.0;
    double sigma_max = 1.0;
    double t_min = 0.0;
    double t_max = 1.0;

    void validate() const {
        if (!(sigma_min < sigma_max) || !(t_min < t_max))
            throw std::invalid_argument("RectRegion: need sigma_min < sigma_max and t_min < t_max");
    }
    double width() const { return sigma_max - sigma_min; }
    double height() const { return t_max - t_min; }
};

/// Shift parameter d = a/b in lowest terms, sign carried by a, b >= 1.
class RationalShift {
public:
    RationalShift(long long a, long long b) : a_(a), b_(b) {
        if (a == 0 || b == 0)
            throw std::invalid_argument("RationalShift: a and b must be nonzero");
        if (b < 0) { a_ = -a_; b_ = -b_; }
        if (gcd_ll(a_ < 0 ? -a_ : a_, b_) != 1)
            throw std::invalid_argument("RationalShift: gcd(a,b) must be 1");
    }

    long long a() const { return a_; }
    long long b() const { return b_; }
    double d() const { return static_cast<double>(a_) / static_cast<double>(b_); }

    /// Twist modulus a-b (signed, may be negative; zero only when d = 1).
    long long q() const { return a_ - b_; }

    /// The zeta self-approximation theorem covers d = a/b with a != b and |a-b| != 1.
    bool covered_by_theorem() const {
        long long diff = a_ - b_;
        return diff != 0 && diff != 1 && diff != -1;
    }

    bool operator==(const RationalShift& o) const { return a_ == o.a_ && b_ == o.b_; }

private:
    static long long gcd_ll(long long x, long long y) {
        while (y != 0) { long long r = x % y; x = y; y = r; }
        return x < 0 ? -x : x;
    }
    long long a_;
    long long b_;
};

/// Euler-product cutoff: primes p <= z participate.
class Truncation {
public:
    explicit Truncation(double z) : z_(z) {
        if (!(z >= 2.0))
            throw std::invalid_argument("Truncation: z must be >= 2 so at least one prime participates");
    }
    double z() const { return z_; }

private:
    double z_;
};

}  // namespace zetalab

#endif
