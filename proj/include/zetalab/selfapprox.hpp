#ifndef ZETALAB_SELFAPPROX_HPP
#define ZETALAB_SELFAPPROX_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "zetalab/types.hpp"

namespace zetalab {

enum class Target { Zeta, LogZeta };

/// Compact subset of the open strip 1/2 < Re s < 1, with a sampling budget.
/// The realized grid always contains boundary points and has spacing no
/// coarser than 2*radius/sqrt(grid_points) (disks) or the analogous lattice
/// pitch (rectangles).
struct CompactSetSpec {
    enum class Shape { Disk, Rectangle };

    Shape shape = Shape::Disk;
    Complex center{0.75, 0.0};  // disk only
    double radius = 0.05;       // disk only
    RectRegion rect{0.6, 0.9, -0.1, 0.1};  // rectangle only
    int grid_points = 25;

    static CompactSetSpec disk(Complex center, double radius, int grid_points);
    static CompactSetSpec rectangle(const RectRegion& rect, int grid_points);

    /// Throws SetOutsideStrip if the closure leaves the strip,
    /// std::invalid_argument on a non-positive budget.
    void validate() const;
};

/// How the second shift in f(s+i*tau) vs f(s+i*d*tau) is specified.
struct ShiftMode {
    enum class Kind { Rational, Real, Bagchi };

    Kind kind = Kind::Rational;
    RationalShift shift{3, 1};  // Rational only
    double d_real = 0.0;        // Real only

    static ShiftMode rational(const RationalShift& s);
    static ShiftMode real(double d);
    static ShiftMode bagchi();  // d = 0: compare f(s+i*tau) against f(s)

    double d() const;
    /// True when the rational-shift existence theorem applies (a != b and
    /// |a-b| != 1).  Real and d=0 modes are exploratory and return false.
    bool covered_by_theorem() const;
};

struct ShiftExperiment {
    Target target = Target::Zeta;
    ShiftMode mode;
    double epsilon = 0.5;
    double T = 5000.0;
    double tau_step = 0.05;
    CompactSetSpec K;

    void validate() const;
};

struct DensityReport {
    std::int64_t accepted_count = 0;
    std::int64_t total_count = 0;
    std::int64_t skipped_count = 0;  // branch failures for log zeta targets
    double fraction = 0.0;           // accepted / (total - skipped)
    std::vector<double> hits;        // accepted tau, ascending
    // Per-tau grid sup of the shift difference, in scan order (NaN where the
    // tau was skipped); feeds the per-tau tables and the fraction-vs-T curve.
    std::vector<double> sup_trace;
};

/// Deterministic sampling grid for K: center plus concentric rings for
/// disks, an m-by-m lattice including corners for rectangles.
std::vector<Complex> sample_grid(const CompactSetSpec& K);

/// max over grid points s of |f(s+i*tau) - f(s+i*d*tau)| with f chosen by
/// target.  A grid maximum, hence a lower bound for the true sup over K.
/// Throws SkippedTau when target is LogZeta and the branch cannot be tracked
/// at some grid point.
double sup_norm_diff(Target target, const CompactSetSpec& K, double tau, double d,
                     const EvalParams& params = {});

/// Scans tau = tau_step, 2*tau_step, ..., T and counts sup_norm_diff < epsilon.
/// Deterministic: the report is independent of the worker count.
DensityReport density(const ShiftExperiment& exp, int workers = 1,
                      const EvalParams& params = {});

/// Grid-sup view of the factorization
/// |zeta(s+i*tau) - zeta(s+i*d*tau)| = |zeta(s+i*tau)| * |zeta(s+i*d*tau)/zeta(s+i*tau) - 1|.
/// When zeta exceeds 1 somewhere, closeness of the ratio to 1 is strictly
/// stronger than closeness of the difference to 0.
struct RemarkGapResult {
    double sup_abs_zeta = 0.0;
    double sup_ratio_minus_one = 0.0;
    double sup_difference = 0.0;
};

RemarkGapResult remark_gap_demo(const CompactSetSpec& K, double tau, double d,
                                const EvalParams& params = {});

/// One tau of the product-approximation experiment: how well the truncated
/// weighted products track log zeta along the shifts a*tau and b*tau.
///   err_c   = grid-sup |log zeta(s + i*c*tau) - log prod_z(s, omega^{-c})|, c = a, b
///   diff_zeta = grid-sup |zeta(s+i*a*tau) - zeta(s+i*b*tau)|
/// The two truncated targets coincide identically, so small err_a + err_b
/// forces small diff_zeta.
struct PipelineResult {
    double err_a = 0.0;
    double err_b = 0.0;
    double diff_zeta = 0.0;
};

PipelineResult proof_pipeline(double tau, const Truncation& trunc, const RationalShift& shift,
                              const CompactSetSpec& K, const EvalParams& params = {});

}  // namespace zetalab

#endif
