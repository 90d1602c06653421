#ifndef ZETALAB_TWISTED_EULER_HPP
#define ZETALAB_TWISTED_EULER_HPP

#include <cstdint>
#include <vector>

#include "zetalab/types.hpp"

namespace zetalab {

/// Root-of-unity weight attached to the m-th prime (p_1 = 2, p_2 = 3, ...):
/// exp(2*pi*i*m / (a-b)).  The exponent is reduced mod |a-b| in integer
/// arithmetic before any trig call, so omega(m)^a and omega(m)^b are equal
/// bit for bit.  Throws DegenerateShift when a = b.
Complex omega(std::int64_t m, const RationalShift& shift);

/// omega(m)^c with the same integer-exact reduction.
Complex omega_pow(std::int64_t m, std::int64_t c, const RationalShift& shift);

/// Truncated weighted Euler product: prod_{p <= z} (1 - omega(p)^c p^{-s})^{-1}.
/// Valid for Re(s) > 0 where every factor stays away from zero.
Complex truncated_product(Complex s, const Truncation& trunc, std::int64_t exponent_c,
                          const RationalShift& shift);

/// log of the truncated product, summed factor-wise with principal logs;
/// each factor 1 - omega^c p^{-s} lies in the right half-plane for sigma > 0,
/// so no branch ambiguity arises.
Complex log_truncated_product(Complex s, const Truncation& trunc, std::int64_t exponent_c,
                              const RationalShift& shift);

/// Closed-form sup bound for |truncated_product|:
/// exp( 7(1-z^{1-2sigma})/(2sigma-1) + |a-b| (z^{-sigma} + 2|s|(1-z^{-sigma})) ).
/// Requires sigma > 1/2 strictly; throws SigmaOutOfRange otherwise.
double bound_rhs(Complex s, const Truncation& trunc, const RationalShift& shift);

/// The same closed form on a raw cutoff, without the prime-content
/// requirement of Truncation; z = 1 collapses both z-terms and returns
/// exp(|a-b|), which makes the formula testable in isolation.
double bound_rhs_formula(Complex s, double z, const RationalShift& shift);

/// First-order part of log of the product, summed two ways.
/// Direct: sum_{p <= z} omega(p)^c p^{-s}.
Complex leading_sum_direct(Complex s, const Truncation& trunc, std::int64_t exponent_c,
                           const RationalShift& shift);

/// Same quantity via summation by parts with the weight partial sums
/// W_n = sum_{m : p_m <= n} omega(p_m)^c:
///   W_z z^{-s} + sum_{n=1}^{z-1} W_n (n^{-s} - (n+1)^{-s}).
Complex leading_sum_partial(Complex s, const Truncation& trunc, std::int64_t exponent_c,
                            const RationalShift& shift);

/// Higher-order remainder of log of the product:
/// sum_{p <= z} sum_{k >= 2} omega(p)^{ck} / (k p^{ks}), truncated in k once
/// a term drops below 1e-16 in magnitude.  Requires sigma > 1/2.
Complex tail_sum(Complex s, const Truncation& trunc, std::int64_t exponent_c,
                 const RationalShift& shift);

/// Analytic majorant of |tail_sum|: 7 (1 - z^{1-2sigma}) / (2sigma - 1).
double tail_bound(double sigma, const Truncation& trunc);

}  // namespace zetalab

#endif
