#include "zetalab/twisted_euler.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "zetalab/diophantine.hpp"
#include "zetalab/errors.hpp"

namespace zetalab {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Reduces num mod |q| carrying the sign of q into the residue, so the
// returned r in [0,|q|) satisfies num/q = r/|q| (mod 1).
std::int64_t reduced_residue(std::int64_t num, std::int64_t q) {
    const std::int64_t qa = q > 0 ? q : -q;
    std::int64_t r = num % qa;
    if (r < 0) r += qa;
    if (q < 0) r = (qa - r) % qa;
    return r;
}

Complex unit_root(std::int64_t num, std::int64_t q) {
    const std::int64_t qa = q > 0 ? q : -q;
    const std::int64_t r = reduced_residue(num, q);
    return std::polar(1.0, kTwoPi * static_cast<double>(r) / static_cast<double>(qa));
}

void require_positive_sigma(Complex s, const char* op) {
    if (!(s.real() > 0.0))
        throw SigmaOutOfRange(std::string(op) + ": sigma must be positive, got " +
                              std::to_string(s.real()));
}

}  // namespace

Complex omega(std::int64_t m, const RationalShift& shift) {
    if (shift.q() == 0)
        throw DegenerateShift("omega: a = b makes the weight modulus zero");
    if (m < 1) throw std::invalid_argument("omega: prime index m must be positive");
    return unit_root(m, shift.q());
}

Complex omega_pow(std::int64_t m, std::int64_t c, const RationalShift& shift) {
    if (shift.q() == 0)
        throw DegenerateShift("omega_pow: a = b makes the weight modulus zero");
    if (m < 1) throw std::invalid_argument("omega_pow: prime index m must be positive");
    // The exponent is reduced in integer arithmetic before the single trig
    // call, so congruent exponents (notably c = a vs c = b) give bitwise
    // identical weights.
    return unit_root(m * c, shift.q());
}

Complex truncated_product(Complex s, const Truncation& trunc, std::int64_t exponent_c,
                          const RationalShift& shift) {
    require_positive_sigma(s, "truncated_product");
    const auto primes = primes_upto(trunc.z());
    Complex prod{1.0, 0.0};
    for (std::size_t i = 0; i < primes.size(); ++i) {
        const Complex w = omega_pow(static_cast<std::int64_t>(i) + 1, exponent_c, shift);
        const Complex p_pow = std::exp(-s * std::log(static_cast<double>(primes[i])));
        prod /= Complex(1.0, 0.0) - w * p_pow;
    }
    return prod;
}

Complex log_truncated_product(Complex s, const Truncation& trunc, std::int64_t exponent_c,
                              const RationalShift& shift) {
    require_positive_sigma(s, "log_truncated_product");
    const auto primes = primes_upto(trunc.z());
    Complex sum{0.0, 0.0};
    for (std::size_t i = 0; i < primes.size(); ++i) {
        const Complex w = omega_pow(static_cast<std::int64_t>(i) + 1, exponent_c, shift);
        const Complex p_pow = std::exp(-s * std::log(static_cast<double>(primes[i])));
        // |w p^{-s}| = p^{-sigma} < 1, so the factor lies in the open right
        // half-plane and the principal log is the analytic one.
        sum -= std::log(Complex(1.0, 0.0) - w * p_pow);
    }
    return sum;
}

double bound_rhs_formula(Complex s, double z, const RationalShift& shift) {
    const double sigma = s.real();
    if (!(sigma > 0.5))
        throw SigmaOutOfRange("bound_rhs: sigma must exceed 1/2, got " + std::to_string(sigma));
    if (!(z >= 1.0))
        throw std::invalid_argument("bound_rhs: z must be >= 1");
    const double q_abs = std::abs(static_cast<double>(shift.q()));
    const double tail_part = 7.0 * (1.0 - std::pow(z, 1.0 - 2.0 * sigma)) / (2.0 * sigma - 1.0);
    const double z_sig = std::pow(z, -sigma);
    const double lead_part = q_abs * (z_sig + 2.0 * std::abs(s) * (1.0 - z_sig));
    return std::exp(tail_part + lead_part);
}

double bound_rhs(Complex s, const Truncation& trunc, const RationalShift& shift) {
    return bound_rhs_formula(s, trunc.z(), shift);
}

Complex leading_sum_direct(Complex s, const Truncation& trunc, std::int64_t exponent_c,
                           const RationalShift& shift) {
    require_positive_sigma(s, "leading_sum_direct");
    const auto primes = primes_upto(trunc.z());
    Complex sum{0.0, 0.0};
    for (std::size_t i = 0; i < primes.size(); ++i) {
        const Complex w = omega_pow(static_cast<std::int64_t>(i) + 1, exponent_c, shift);
        sum += w * std::exp(-s * std::log(static_cast<double>(primes[i])));
    }
    return sum;
}

Complex leading_sum_partial(Complex s, const Truncation& trunc, std::int64_t exponent_c,
                            const RationalShift& shift) {
    require_positive_sigma(s, "leading_sum_partial");
    const auto primes = primes_upto(trunc.z());
    // The weight step function is constant on [floor(z), z], so the exact
    // discrete summation-by-parts runs over integers up to floor(z).
    const auto zi = static_cast<std::int64_t>(std::floor(trunc.z()));

    std::vector<Complex> w_partial(static_cast<std::size_t>(zi) + 1, Complex{0.0, 0.0});
    Complex running{0.0, 0.0};
    std::size_t next_prime = 0;
    for (std::int64_t n = 1; n <= zi; ++n) {
        if (next_prime < primes.size() && primes[next_prime] == n) {
            running += omega_pow(static_cast<std::int64_t>(next_prime) + 1, exponent_c, shift);
            ++next_prime;
        }
        w_partial[static_cast<std::size_t>(n)] = running;
    }

    auto int_pow = [&](std::int64_t n) {
        return std::exp(-s * std::log(static_cast<double>(n)));
    };
    Complex sum = w_partial[static_cast<std::size_t>(zi)] * int_pow(zi);
    for (std::int64_t n = 1; n < zi; ++n)
        sum += w_partial[static_cast<std::size_t>(n)] * (int_pow(n) - int_pow(n + 1));
    return sum;
}

Complex tail_sum(Complex s, const Truncation& trunc, std::int64_t exponent_c,
                 const RationalShift& shift) {
    if (!(s.real() > 0.5))
        throw SigmaOutOfRange("tail_sum: sigma must exceed 1/2, got " + std::to_string(s.real()));
    const auto primes = primes_upto(trunc.z());
    Complex sum{0.0, 0.0};
    for (std::size_t i = 0; i < primes.size(); ++i) {
        const Complex w = omega_pow(static_cast<std::int64_t>(i) + 1, exponent_c, shift);
        const Complex p_pow = std::exp(-s * std::log(static_cast<double>(primes[i])));
        Complex power = w * p_pow;          // (omega^c p^{-s})^k
        double power_abs = std::abs(p_pow); // p^{-k sigma}
        for (int k = 2; k <= 2000; ++k) {
            power *= w * p_pow;
            power_abs *= std::abs(p_pow);
            if (power_abs / static_cast<double>(k) < 1e-16) break;
            sum += power / static_cast<double>(k);
        }
    }
    return sum;
}

double tail_bound(double sigma, const Truncation& trunc) {
    if (!(sigma > 0.5))
        throw SigmaOutOfRange("tail_bound: sigma must exceed 1/2, got " + std::to_string(sigma));
    return 7.0 * (1.0 - std::pow(trunc.z(), 1.0 - 2.0 * sigma)) / (2.0 * sigma - 1.0);
}

}  // namespace zetalab
