#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "intermit/ensemble.hpp"

namespace intermit {

struct MomentOverflow : std::overflow_error
{
    MomentOverflow(std::string const& what, double max_q) : std::overflow_error(what), max_finite_q(max_q) {}
    double max_finite_q;
};

/// Mean of |X(t)|^q with CLT standard error. Throws std::domain_error for
/// q < 0 when some X(t) = 0, MomentOverflow when |X|^q overflows.
MomentEstimate empirical_moment(std::span<double const> values, double q, double t);
MomentEstimate empirical_moment(PathEnsemble const& e, double q, std::size_t t_index);

struct ScalingEstimate
{
    std::vector<double> q_grid;
    std::vector<double> tau_hat;
    std::vector<double> stderr_;
    std::vector<double> r_squared;
    /// Fraction of replications carrying 99% of the moment mass at the
    /// largest fitted time, per q.
    std::vector<double> effective_fraction;
    double t_lo = 0.0;
    double t_hi = 0.0;
    std::vector<std::string> warnings;
    /// Delete-a-group jackknife replicates of tau_hat, one row per group of
    /// consecutive replications. Empty when there are too few replications.
    std::vector<std::vector<double>> tau_jackknife;
};

/// Number of jackknife groups used by estimate_scaling_function.
inline constexpr std::size_t kJackknifeGroups = 20;

/// Default orders 0, 0.25, ..., 4 clipped to (q_lo, q_hi).
std::vector<double> default_q_grid(double q_lo = 0.0, double q_hi = 4.0);

/// Per-q OLS slope of log(empirical moment) on log t. The standard error is
/// the larger of the residual-based one and the Monte Carlo error of the
/// moments propagated through the regression. Needs >= 3 times spanning at
/// least 1.5 decades.
ScalingEstimate estimate_scaling_function(PathEnsemble const& e, std::span<double const> q_grid,
                                          std::span<std::size_t const> t_indices);

void write_csv(std::ostream& os, ScalingEstimate const& est);

struct IntermittencyVerdict
{
    bool intermittent = false;
    /// Fitted hinge; with no verdict the single-segment slope is in H_hat
    /// and b_hat, breakpoint fields are empty.
    std::optional<double> q_star;
    /// Profile-likelihood band for the breakpoint.
    std::optional<std::pair<double, double>> q_star_band;
    double H_hat = 0.0;
    double b_hat = 0.0;
    double a_hat = 0.0;
    double slope_gap = 0.0;
    double slope_gap_se = 0.0;
    std::vector<std::string> diagnostics;
};

struct DetectOptions
{
    /// Resolution floor of a log-log slope at finite t, added in quadrature
    /// to the statistical error of the slope gap.
    double systematic_se = 0.01;
    double threshold = 3.0;
};

/// Two-segment convex hinge through the origin, tau(q) = H q +
/// (b - H)(q - q*)_+, fitted by weighted least squares over a fine grid of
/// candidate q*. The verdict is positive when b - H exceeds three times its
/// combined standard error. Its statistical part is the larger of the
/// weighted least-squares error and the jackknife one, which captures the
/// strong correlation of tau_hat across q; `systematic_se` is added in
/// quadrature. Also reports convexity and monotone-ratio violations of
/// the estimate.
IntermittencyVerdict detect_intermittency(ScalingEstimate const& est, DetectOptions const& opts = {});

/// Convex repair of a noisy estimate: the segment slopes are replaced by
/// their weighted isotonic regression (pool-adjacent-violators, weights =
/// segment lengths) and the values re-integrated from q = 0, or from the
/// first point when 0 is not on the grid. Segment-length weights keep the
/// total rise over the grid unchanged.
std::vector<double> convex_repair(std::span<double const> q, std::span<double const> tau);

}  // namespace intermit
