#ifndef ZETALAB_SRC_STREAM_EVAL_HPP
#define ZETALAB_SRC_STREAM_EVAL_HPP

#include <cstdint>
#include <vector>

#include "zetalab/types.hpp"

namespace zetalab {
namespace detail {

/// Batch Euler-Maclaurin evaluator for zeta(s_j + i*factor*tau_k) over a
/// fixed grid {s_j} and the arithmetic progression tau_k = k*tau_step.
///
/// The main sums for all grid points share one phase vector e^{-i*t*ln n}
/// that advances by a per-term rotation each k, while the grid enters only
/// through a precomputed coefficient table n^{-sigma_j} e^{-i*u_j*ln n}.
/// Work is organized in fixed blocks of 1024 consecutive k; each block
/// re-initializes its phases from exact trig calls, so results are bitwise
/// identical however blocks are distributed over threads, and rotation
/// round-off cannot accumulate past a block.
class StreamShiftEvaluator {
public:
    static constexpr std::int64_t kBlock = 1024;

    /// k_last bounds the progression (tau <= k_last * tau_step) and fixes
    /// the coefficient table size.
    StreamShiftEvaluator(const std::vector<Complex>& grid, double tau_step, double factor,
                         std::int64_t k_last, const EvalParams& params);

    std::int64_t block_count() const { return n_blocks_; }
    std::int64_t k_last() const { return k_last_; }

    /// Fills values[j * width + (k - k_begin)] for the block's k range
    /// [k_begin, k_end) where k_begin = 1 + block*kBlock,
    /// width = k_end - k_begin.  Returns the width.
    std::int64_t eval_block(std::int64_t block, std::vector<Complex>& values) const;

private:
    int cutoff_for(double t_abs) const;

    std::vector<Complex> grid_;
    double tau_step_;
    double factor_;
    std::int64_t k_last_ = 0;
    std::int64_t n_blocks_ = 0;
    EvalParams params_;
    int n_max_ = 0;          // table size: covers the largest per-block cutoff
    double u_abs_max_ = 0.0; // max |Im s_j|
    double sigma_min_ = 0.0;

    std::vector<double> ln_;   // ln n, n = 1..n_max-1
    // Coefficient tables, SoA per grid point: coef_re_[j], coef_im_[j].
    std::vector<std::vector<double>> coef_re_;
    std::vector<std::vector<double>> coef_im_;
};

}  // namespace detail
}  // namespace zetalab

#endif
