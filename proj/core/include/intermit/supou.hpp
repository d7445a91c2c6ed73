#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "intermit/levy.hpp"
#include "intermit/model.hpp"
#include "intermit/rng.hpp"

namespace intermit {

/// i.i.d. decay rates from the mixing law; rejects m = 0.
std::vector<double> sample_mixing(MixingSpec const& pi, std::size_t m, RngStream& rng);

/// Driver of a single OU process dV = -xi V dt + dL(t): Brownian variance
/// rate plus centred two-sided exponential jumps.
struct OuDriver
{
    double gauss_var_rate = 0.0;
    JumpLaw jumps;
};

/// Stationary OU path at 0, delta, ..., n_steps delta.
///
/// Exact transition over each step. V(0) is drawn from the stationary law
/// (normal with variance gauss_var_rate / (2 xi) for the Gaussian part; a
/// difference of Gamma variables for the jumps), then `burn_in` extra time
/// is simulated and discarded.
std::vector<double> simulate_ou_path(double xi, OuDriver const& driver, double delta, std::size_t n_steps,
                                     double burn_in, RngStream& rng);

/// Stream layout of one supOU replication: component k uses substream
/// kComponentStreamBase + k (its decay rate, initial state and jumps); the
/// spectral Gaussian part uses kGaussianStream.
inline constexpr std::uint32_t kGaussianStream = 16;
inline constexpr std::uint32_t kComponentStreamBase = 64;

/// Stationary supOU path Y at 0, delta, ..., n_steps delta, built from
/// m_components OU processes with i.i.d. decay rates xi_k and drivers
/// carrying 1/m of the basis cumulant on the clock xi_k t.
std::vector<double> simulate_supou(model::SupOU const& config, std::size_t n_steps, std::uint64_t seed,
                                   std::uint64_t replication);

/// Cumulative trapezoid rule on a uniform grid: X(0) = 0,
/// X(t_n) = X(t_{n-1}) + (delta/2)(Y(t_{n-1}) + Y(t_n)).
std::vector<double> integrate_path(std::span<double const> y, double delta);

enum class SupOUCase {
    /// b > 0, alpha in (0, 1): fBm limit, H = 1 - alpha/2.
    Gaussian,
    /// b = 0, alpha in (0, 1), Blumenthal-Getoor index below 1 + alpha.
    StableLevy,
    /// b = 0, alpha in (0, 1), 1 + alpha < beta < 2.
    StableDependent,
    /// alpha > 1: Brownian limit.
    Brownian,
};

std::string to_string(SupOUCase c);

struct TheoreticalH
{
    double H;
    SupOUCase which;
};

/// Self-similarity index of the limit of the integrated process.
/// beta_bg is the Blumenthal-Getoor index of the Levy measure and is
/// needed only when b_gauss = 0 and alpha < 1. Throws on the uncovered
/// boundaries alpha = 1 and beta_bg = 1 + alpha.
TheoreticalH theoretical_H(double b_gauss, double alpha, std::optional<double> beta_bg);

/// Blumenthal-Getoor index of a driver: 0 for compound Poisson, none for a
/// driver without jumps.
std::optional<double> blumenthal_getoor(LevyDriverSpec const& spec);

/// Var X(t) of the integrated process, X(t) = int_0^t Y without
/// discretisation: variance_rate * int_0^t (t - u) (1 + u/rate)^-alpha du,
/// where variance_rate = b + intensity * E J^2 equals 2 Var Y.
double supou_integrated_variance(double variance_rate, MixingSpec const& pi, double t);

}  // namespace intermit
