#include "zetalab/zeta_kernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "zetalab/errors.hpp"

namespace zetalab {
namespace {

constexpr double kEulerGamma = 0.57721566490153286060651209008;
constexpr double kPi = std::numbers::pi;

// B_{2j} for j = 1..13 (B_2 .. B_26), exact rationals.
constexpr double kBernoulliEven[13] = {
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
    8553103.0 / 6.0,
};

int choose_cutoff(double abs_t, const EvalParams& params) {
    const double wanted = 2.0 * (abs_t + 10.0);
    return std::max(params.series_terms_n, static_cast<int>(std::ceil(wanted)));
}

// Main-sum + correction assembly once the cutoff n_terms and Bernoulli order
// are fixed.  Terms are summed in ascending n.
Complex em_assemble(Complex s, int n_terms, int order) {
    Complex sum{0.0, 0.0};
    for (int n = 1; n < n_terms; ++n)
        sum += std::exp(-s * std::log(static_cast<double>(n)));

    const double nd = static_cast<double>(n_terms);
    const Complex npow_s = std::exp(-s * std::log(nd));  // N^{-s}
    sum += npow_s * nd / (s - 1.0);
    sum += 0.5 * npow_s;

    Complex rising = s;              // s(s+1)...(s+2j-2), built incrementally
    Complex npow = npow_s / nd;      // N^{-s-2j+1}
    const double inv_n2 = 1.0 / (nd * nd);
    double fact = 2.0;               // (2j)!
    for (int j = 1; 2 * j <= order; ++j) {
        if (j > 1) {
            rising *= (s + static_cast<double>(2 * j - 3)) * (s + static_cast<double>(2 * j - 2));
            npow *= inv_n2;
            fact *= static_cast<double>((2 * j - 1) * (2 * j));
        }
        sum += (kBernoulliEven[j - 1] / fact) * rising * npow;
    }
    return sum;
}

}  // namespace

namespace detail {

double em_remainder_bound(Complex s, int n_terms, int order) {
    // First omitted correction term, inflated by the standard
    // |s+M+1| / (sigma+M+1) comparison factor.
    const int m = order;
    const double sigma = s.real();
    if (sigma + m + 1 <= 0.0) return std::numeric_limits<double>::infinity();

    double rising_abs = 1.0;  // |s (s+1) ... (s+M)|
    for (int k = 0; k <= m; ++k) rising_abs *= std::abs(s + static_cast<double>(k));

    double fact = 1.0;  // (M+2)!
    for (int i = 2; i <= m + 2; ++i) fact *= static_cast<double>(i);

    const double npow = std::exp(-(sigma + m + 1) * std::log(static_cast<double>(n_terms)));
    const double lead = std::abs(kBernoulliEven[(m + 2) / 2 - 1]) / fact * rising_abs * npow;
    return lead * std::abs(s + static_cast<double>(m + 1)) / (sigma + m + 1);
}

Complex zeta_entire(Complex s, const EvalParams& params) {
    const Complex u = s - Complex(1.0, 0.0);
    if (std::abs(u) < 1e-8) {
        // Laurent expansion of (s-1)zeta(s) about the pole; the quadratic
        // term is below double resolution at this radius.
        return Complex(1.0, 0.0) + kEulerGamma * u;
    }
    return u * zeta(s, params);
}

}  // namespace detail

Complex zeta(Complex s, const EvalParams& params) {
    params.validate();
    if (std::abs(s - Complex(1.0, 0.0)) < 1e-12)
        throw PoleAtOne("zeta: s = 1 is the pole");
    const double abs_t = std::abs(s.imag());
    if (abs_t > 1e6)
        throw AccuracyUnreachable("zeta: |Im s| = " + std::to_string(abs_t) +
                                  " exceeds the supported height 1e6");

    const int n_terms = choose_cutoff(abs_t, params);
    const int order = params.bernoulli_order;
    const double bound = detail::em_remainder_bound(s, n_terms, order);
    if (!(bound <= params.target_abs_err))
        throw AccuracyUnreachable(
            "zeta: remainder bound " + std::to_string(bound) + " exceeds target " +
            std::to_string(params.target_abs_err) + " at s = (" + std::to_string(s.real()) +
            ", " + std::to_string(s.imag()) + ") with N=" + std::to_string(n_terms) +
            ", M=" + std::to_string(order));
    return em_assemble(s, n_terms, order);
}

namespace detail {

HorizontalPathEvaluator::HorizontalPathEvaluator(double t, const EvalParams& params)
    : t_(t), params_(params), sigma_(10.0) {
    params_.validate();
    n_terms_ = choose_cutoff(std::abs(t), params_);

    // Main-sum terms n^{-s} at the path start s = 10 + it, kept as a vector
    // so the walk can re-weight them by n^{h} per step instead of
    // re-exponentiating the whole sum at every stop.
    terms_.resize(static_cast<std::size_t>(n_terms_ - 1));
    const Complex s0(10.0, t);
    for (int n = 1; n < n_terms_; ++n)
        terms_[static_cast<std::size_t>(n - 1)] = std::exp(-s0 * std::log(static_cast<double>(n)));

    step_scale_.resize(static_cast<std::size_t>(n_terms_ - 1));
    for (int n = 1; n < n_terms_; ++n)
        step_scale_[static_cast<std::size_t>(n - 1)] = std::pow(static_cast<double>(n), kStep);

    value_ = assemble(sigma_);
    arg_ = std::arg(value_);
    log_abs_ = std::log(std::abs(value_));
}

Complex HorizontalPathEvaluator::assemble(double sigma) const {
    const Complex s(sigma, t_);
    const double bound = em_remainder_bound(s, n_terms_, params_.bernoulli_order);
    if (!(bound <= params_.target_abs_err))
        throw AccuracyUnreachable("log zeta path: remainder bound " + std::to_string(bound) +
                                  " exceeds target at sigma = " + std::to_string(sigma));

    Complex sum{0.0, 0.0};
    for (const Complex& term : terms_) sum += term;

    const double nd = static_cast<double>(n_terms_);
    const Complex npow_s = std::exp(-s * std::log(nd));
    sum += npow_s * nd / (s - 1.0);
    sum += 0.5 * npow_s;

    Complex rising = s;
    Complex npow = npow_s / nd;
    const double inv_n2 = 1.0 / (nd * nd);
    double fact = 2.0;
    for (int j = 1; 2 * j <= params_.bernoulli_order; ++j) {
        if (j > 1) {
            rising *= (s + static_cast<double>(2 * j - 3)) * (s + static_cast<double>(2 * j - 2));
            npow *= inv_n2;
            fact *= static_cast<double>((2 * j - 1) * (2 * j));
        }
        sum += (kBernoulliEven[j - 1] / fact) * rising * npow;
    }
    return sum;
}

void HorizontalPathEvaluator::apply_step(double h) {
    if (h == kStep) {
        for (std::size_t i = 0; i < terms_.size(); ++i) terms_[i] *= step_scale_[i];
    } else {
        for (std::size_t i = 0; i < terms_.size(); ++i)
            terms_[i] *= std::pow(static_cast<double>(i + 1), h);
    }
    const double sigma_next = sigma_ - h;
    const Complex next = assemble(sigma_next);

    if (std::abs(next) < 1e-6)
        throw BranchObstruction("log zeta path: |zeta| < 1e-6 at sigma = " +
                                std::to_string(sigma_next) + ", t = " + std::to_string(t_));
    const double darg = std::arg(next / value_);
    if (std::abs(darg) > kPi / 2.0)
        throw BranchObstruction("log zeta path: argument jump " + std::to_string(darg) +
                                " exceeds pi/2 at sigma = " + std::to_string(sigma_next));
    // Newton quotient |zeta| / |zeta'| estimates the distance to the nearest
    // zero; inside the guard radius the tracked argument is unreliable.
    const double dist_est = std::abs(next) * h / std::abs(next - value_);
    if (dist_est < 1e-3)
        throw BranchObstruction("log zeta path: estimated zero distance " +
                                std::to_string(dist_est) + " inside guard radius at sigma = " +
                                std::to_string(sigma_next) + ", t = " + std::to_string(t_));

    sigma_ = sigma_next;
    value_ = next;
    arg_ += darg;
    log_abs_ = std::log(std::abs(next));
}

Complex HorizontalPathEvaluator::advance_to(double sigma) {
    if (sigma > sigma_ + 1e-12)
        throw std::invalid_argument("HorizontalPathEvaluator: path only moves left");
    while (sigma_ - sigma > kStep + 1e-12) apply_step(kStep);
    const double rest = sigma_ - sigma;
    if (rest > 1e-12) apply_step(rest);
    return Complex(log_abs_, arg_);
}

}  // namespace detail

Complex log_zeta(Complex s, const EvalParams& params) {
    params.validate();
    if (!(s.real() > 0.4))
        throw SigmaOutOfRange("log_zeta: sigma must exceed 0.4, got " + std::to_string(s.real()));
    if (std::abs(s - Complex(1.0, 0.0)) < 1e-12)
        throw PoleAtOne("log_zeta: s = 1 is the pole");
    if (std::abs(s.imag()) <= 1e-12 && s.real() < 1.0)
        throw BranchObstruction(
            "log_zeta: the continuation path along Im(s) = 0 passes through the pole at s = 1");
    if (s.real() >= 10.0) {
        // Absolute-convergence region: zeta is within 2^{-9} of 1, so the
        // principal branch and the continued branch coincide.
        return std::log(zeta(s, params));
    }
    detail::HorizontalPathEvaluator path(s.imag(), params);
    return path.advance_to(s.real());
}

namespace {

struct Contour {
    // Closed rectangle boundary, positively oriented; corner k spans
    // points[corner_offset[k]] .. points[corner_offset[k+1]].
    std::vector<Complex> points;  // samples, the last wraps to the first
};

Contour sample_boundary(const RectRegion& r, int per_unit) {
    Contour c;
    const double xs[5] = {r.sigma_min, r.sigma_max, r.sigma_max, r.sigma_min, r.sigma_min};
    const double ts[5] = {r.t_min, r.t_min, r.t_max, r.t_max, r.t_min};
    for (int e = 0; e < 4; ++e) {
        const double len = std::hypot(xs[e + 1] - xs[e], ts[e + 1] - ts[e]);
        const int n = std::max(2, static_cast<int>(std::ceil(len * per_unit)));
        for (int i = 0; i < n; ++i) {
            const double u = static_cast<double>(i) / static_cast<double>(n);
            c.points.emplace_back(xs[e] + u * (xs[e + 1] - xs[e]), ts[e] + u * (ts[e + 1] - ts[e]));
        }
    }
    return c;
}

// Winding number of (s-1)zeta(s) around the contour, or -1 when some
// argument increment reaches pi/2 (needs refinement).
int try_winding(const RectRegion& region, const EvalParams& params, int per_unit) {
    const Contour c = sample_boundary(region, per_unit);
    const std::size_t n = c.points.size();
    double total = 0.0;
    Complex prev = detail::zeta_entire(c.points[0], params);
    for (std::size_t i = 1; i <= n; ++i) {
        const Complex cur = detail::zeta_entire(c.points[i % n], params);
        if (cur == Complex(0.0, 0.0)) return -1;
        const double darg = std::arg(cur / prev);
        if (std::abs(darg) >= kPi / 2.0) return -1;
        total += darg;
        prev = cur;
    }
    const double turns = total / (2.0 * kPi);
    const long long count = std::llround(turns);
    if (std::abs(turns - static_cast<double>(count)) > 0.1 || count < 0) return -1;
    return static_cast<int>(count);
}

}  // namespace

int count_zeros(const RectRegion& region, const EvalParams& params) {
    params.validate();
    region.validate();
    if (region.sigma_min < 1.0 && 1.0 < region.sigma_max && region.t_min < 0.0 &&
        0.0 < region.t_max)
        throw PoleInRegion("count_zeros: s = 1 lies inside the region");

    // The (s-1) factor in the tracked function removes the pole, so a
    // boundary passing through s = 1 (t_min = 0 rectangles) stays regular;
    // away from s = 1 the winding equals the zeta argument change / 2pi.
    RectRegion r = region;
    for (int attempt = 0; attempt < 2; ++attempt) {
        for (int per_unit = 8, k = 0; k <= 12; ++k, per_unit *= 2) {
            const int count = try_winding(r, params, per_unit);
            if (count >= 0) return count;
        }
        // One retry with the boundary pushed outward, in case a zero sits on
        // the contour itself.
        r.sigma_min -= 1e-4;
        r.sigma_max += 1e-4;
        r.t_min -= 1e-4;
        r.t_max += 1e-4;
    }
    throw ContourThroughZero("count_zeros: argument increments stay >= pi/2 after refinement; "
                             "a zero is too close to the boundary");
}

}  // namespace zetalab
