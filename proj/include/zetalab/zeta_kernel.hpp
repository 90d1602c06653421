#ifndef ZETALAB_ZETA_KERNEL_HPP
#define ZETALAB_ZETA_KERNEL_HPP

#include <vector>

#include "zetalab/types.hpp"

namespace zetalab {

/// Riemann zeta via Euler-Maclaurin summation.
///
/// Truncation length N and correction order are chosen from params and |Im s|;
/// the analytic remainder bound is checked against params.target_abs_err and
/// AccuracyUnreachable is thrown when it cannot be met.  Throws PoleAtOne
/// within 1e-12 of s = 1.
Complex zeta(Complex s, const EvalParams& params = {});

/// log zeta(s) with the branch fixed by continuation along the horizontal
/// segment from sigma = 10 (where the Dirichlet series converges absolutely
/// and the principal branch applies) leftwards to s.  Throws BranchObstruction
/// when the path passes too close to a zero to track the argument reliably.
Complex log_zeta(Complex s, const EvalParams& params = {});

/// Number of zeta zeros strictly inside a rectangle, by the argument
/// principle applied to (s-1)*zeta(s) on the boundary.  The contour is
/// refined adaptively; ContourThroughZero is thrown if refinement stalls
/// near a boundary zero, PoleInRegion if s = 1 lies strictly inside.
int count_zeros(const RectRegion& region, const EvalParams& params = {});

namespace detail {

/// (s-1)*zeta(s): entire, zero set identical to zeta away from s = 1.
/// Near s = 1 the removable singularity is filled with the Laurent value
/// 1 + euler_gamma*(s-1) + O((s-1)^2).
Complex zeta_entire(Complex s, const EvalParams& params);

/// Upper bound for the Euler-Maclaurin remainder with the given geometry.
double em_remainder_bound(Complex s, int n_terms, int order);

/// Walks log zeta from the absolutely convergent region to sigma_target
/// along Im(s) = t, accumulating continuous argument.
///
/// The main-sum terms n^{-s} are kept as a vector and re-weighted by n^{h}
/// per step, so a whole path costs one batch of exponentials plus cheap
/// per-step scaling -- the difference between milliseconds and seconds at
/// heights where the cutoff runs to 10^5 terms.
class HorizontalPathEvaluator {
public:
    HorizontalPathEvaluator(double t, const EvalParams& params);

    /// log zeta at sigma + i*t on the tracked branch; sigma must not exceed
    /// the previously queried sigma (the path only ever moves left).
    Complex advance_to(double sigma);

    double current_sigma() const { return sigma_; }

private:
    static constexpr double kStep = 0.05;

    Complex assemble(double sigma) const;
    void apply_step(double h);

    double t_;
    EvalParams params_;
    double sigma_;
    int n_terms_ = 0;
    std::vector<Complex> terms_;       // n^{-sigma - i t}, n = 1..cutoff-1
    std::vector<double> step_scale_;   // n^{kStep}
    Complex value_;                    // zeta at the current path point
    double arg_ = 0.0;                 // continuously tracked argument
    double log_abs_ = 0.0;             // log|zeta| at the current point
};

}  // namespace detail
}  // namespace zetalab

#endif
