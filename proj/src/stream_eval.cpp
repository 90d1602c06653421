#include "stream_eval.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "zetalab/errors.hpp"
#include "zetalab/zeta_kernel.hpp"

namespace zetalab {
namespace detail {
namespace {

// B_{2j} for j = 1..12, duplicated from the scalar kernel's table (kept
// file-local there; the two must stay in sync with the shared formula).
constexpr double kBernoulliEven[12] = {
    1.0 / 6.0, -1.0 / 30.0, 1.0 / 42.0, -1.0 / 30.0, 5.0 / 66.0, -691.0 / 2730.0,
    7.0 / 6.0, -3617.0 / 510.0, 43867.0 / 798.0, -174611.0 / 330.0,
    854513.0 / 138.0, -236364091.0 / 2730.0,
};

// N^{1-s}/(s-1) + N^{-s}/2 + Bernoulli corrections for the cutoff n_terms.
Complex em_corrections(Complex s, int n_terms, int order) {
    const double nd = static_cast<double>(n_terms);
    const Complex npow_s = std::exp(-s * std::log(nd));
    Complex sum = npow_s * nd / (s - 1.0) + 0.5 * npow_s;

    Complex rising = s;
    Complex npow = npow_s / nd;
    const double inv_n2 = 1.0 / (nd * nd);
    double fact = 2.0;
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

StreamShiftEvaluator::StreamShiftEvaluator(const std::vector<Complex>& grid, double tau_step,
                                           double factor, std::int64_t k_last,
                                           const EvalParams& params)
    : grid_(grid), tau_step_(tau_step), factor_(factor), k_last_(k_last), params_(params) {
    params_.validate();
    if (grid_.empty()) throw std::invalid_argument("StreamShiftEvaluator: empty grid");
    if (!(tau_step > 0.0) || k_last < 1)
        throw std::invalid_argument("StreamShiftEvaluator: need tau_step > 0 and k_last >= 1");

    n_blocks_ = (k_last_ + kBlock - 1) / kBlock;

    u_abs_max_ = 0.0;
    sigma_min_ = grid_[0].real();
    for (const Complex& s : grid_) {
        u_abs_max_ = std::max(u_abs_max_, std::abs(s.imag()));
        sigma_min_ = std::min(sigma_min_, s.real());
    }
    const double t_abs_max =
        u_abs_max_ + std::abs(factor_) * static_cast<double>(k_last_) * tau_step_;
    if (t_abs_max > 1e6)
        throw AccuracyUnreachable("StreamShiftEvaluator: shifted height " +
                                  std::to_string(t_abs_max) + " exceeds the supported 1e6");
    n_max_ = cutoff_for(t_abs_max);

    ln_.resize(static_cast<std::size_t>(n_max_));
    ln_[0] = 0.0;
    for (int n = 1; n < n_max_; ++n) ln_[static_cast<std::size_t>(n)] = std::log(static_cast<double>(n));

    coef_re_.resize(grid_.size());
    coef_im_.resize(grid_.size());
    for (std::size_t j = 0; j < grid_.size(); ++j) {
        coef_re_[j].resize(static_cast<std::size_t>(n_max_ - 1));
        coef_im_[j].resize(static_cast<std::size_t>(n_max_ - 1));
        const double sigma = grid_[j].real();
        const double u = grid_[j].imag();
        for (int n = 1; n < n_max_; ++n) {
            const double lnn = ln_[static_cast<std::size_t>(n)];
            const double mag = std::exp(-sigma * lnn);
            coef_re_[j][static_cast<std::size_t>(n - 1)] = mag * std::cos(u * lnn);
            coef_im_[j][static_cast<std::size_t>(n - 1)] = mag * -std::sin(u * lnn);
        }
    }
}

int StreamShiftEvaluator::cutoff_for(double t_abs) const {
    const double wanted = 2.0 * (t_abs + 10.0);
    return std::max(params_.series_terms_n, static_cast<int>(std::ceil(wanted)));
}

std::int64_t StreamShiftEvaluator::eval_block(std::int64_t block, std::vector<Complex>& values) const {
    const std::int64_t k_begin = 1 + block * kBlock;
    const std::int64_t k_end = std::min(k_last_ + 1, k_begin + kBlock);
    const std::int64_t width = k_end - k_begin;
    const std::size_t n_grid = grid_.size();
    values.assign(static_cast<std::size_t>(width) * n_grid, Complex{0.0, 0.0});

    // One cutoff per block, chosen for the block's largest height; the
    // remainder bound is checked once at the worst corner (smallest sigma,
    // largest height).
    const double block_t_max =
        u_abs_max_ + std::abs(factor_) * static_cast<double>(k_end - 1) * tau_step_;
    const int n_terms = cutoff_for(block_t_max);
    const std::size_t n_len = static_cast<std::size_t>(n_terms - 1);
    const double bound =
        em_remainder_bound(Complex(sigma_min_, block_t_max), n_terms, params_.bernoulli_order);
    if (!(bound <= params_.target_abs_err))
        throw AccuracyUnreachable("StreamShiftEvaluator: remainder bound " +
                                  std::to_string(bound) + " exceeds target in block " +
                                  std::to_string(block));

    // Phase vector e^{-i * factor * tau * ln n} at tau = k_begin * tau_step,
    // and its per-k rotation e^{-i * factor * tau_step * ln n}.
    std::vector<double> ph_re(n_len), ph_im(n_len), rot_re(n_len), rot_im(n_len);
    const double tau0 = static_cast<double>(k_begin) * tau_step_;
    for (std::size_t i = 0; i < n_len; ++i) {
        const double lnn = ln_[i + 1];
        const double a0 = -factor_ * tau0 * lnn;
        ph_re[i] = std::cos(a0);
        ph_im[i] = std::sin(a0);
        const double da = -factor_ * tau_step_ * lnn;
        rot_re[i] = std::cos(da);
        rot_im[i] = std::sin(da);
    }

    for (std::int64_t k = k_begin; k < k_end; ++k) {
        const double tau = static_cast<double>(k) * tau_step_;
        const std::int64_t col = k - k_begin;
        for (std::size_t j = 0; j < n_grid; ++j) {
            const double* cre = coef_re_[j].data();
            const double* cim = coef_im_[j].data();
            const double* pre = ph_re.data();
            const double* pim = ph_im.data();

            // Four fixed accumulator lanes, combined in a fixed order:
            // deterministic and wide enough for the vectorizer.
            double ar[4] = {0.0, 0.0, 0.0, 0.0};
            double ai[4] = {0.0, 0.0, 0.0, 0.0};
            const std::size_t n4 = n_len & ~static_cast<std::size_t>(3);
            for (std::size_t n = 0; n < n4; n += 4) {
                for (std::size_t l = 0; l < 4; ++l) {
                    ar[l] += cre[n + l] * pre[n + l] - cim[n + l] * pim[n + l];
                    ai[l] += cre[n + l] * pim[n + l] + cim[n + l] * pre[n + l];
                }
            }
            double sum_re = (ar[0] + ar[1]) + (ar[2] + ar[3]);
            double sum_im = (ai[0] + ai[1]) + (ai[2] + ai[3]);
            for (std::size_t n = n4; n < n_len; ++n) {
                sum_re += cre[n] * pre[n] - cim[n] * pim[n];
                sum_im += cre[n] * pim[n] + cim[n] * pre[n];
            }

            const Complex s(grid_[j].real(), grid_[j].imag() + factor_ * tau);
            values[j * static_cast<std::size_t>(width) + static_cast<std::size_t>(col)] =
                Complex(sum_re, sum_im) + em_corrections(s, n_terms, params_.bernoulli_order);
        }
        if (k + 1 < k_end) {
            for (std::size_t i = 0; i < n_len; ++i) {
                const double r = ph_re[i] * rot_re[i] - ph_im[i] * rot_im[i];
                const double m = ph_re[i] * rot_im[i] + ph_im[i] * rot_re[i];
                ph_re[i] = r;
                ph_im[i] = m;
            }
        }
    }
    return width;
}

}  // namespace detail
}  // namespace zetalab
