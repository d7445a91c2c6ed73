#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "intermit/fgn.hpp"
#include "intermit/model.hpp"
#include "intermit/rng.hpp"
#include "intermit/time_grid.hpp"

namespace intermit {

/// One independent draw per grid time: t^H w.p. 1 - t^-a, t^b w.p. t^-a.
std::vector<double> simulate_biscale_det(double H, double b, double a, TimeGrid const& grid, RngStream& rng);

/// Three-point law with the middle scale t^((H+b)/2) taken w.p. t^(-a/2).
/// Rejects grids on which t^(-a/2) + t^(-a) > 1.
std::vector<double> simulate_triscale_det(double H, double b, double a, TimeGrid const& grid, RngStream& rng);

/// Substreams used by the mixture; fixed so that changing `a` leaves the
/// fBm paths and the uniforms behind the switches untouched.
inline constexpr std::uint32_t kStreamBH = 1;
inline constexpr std::uint32_t kStreamBb = 2;
inline constexpr std::uint32_t kStreamSwitch = 3;

struct MixturePath
{
    std::vector<double> x;
    std::vector<std::uint8_t> u;
    std::vector<double> bh;
    std::vector<double> bb;
};

/// fBm mixture on the lattice t_n = n delta, n = 1..n_steps. Holds the two
/// fBm generators so that repeated replications share their set-up cost.
class FbmMixtureSimulator
{
  public:
    FbmMixtureSimulator(model::FbmMixture params, std::size_t n_steps);

    MixturePath run(std::uint64_t seed, std::uint64_t replication) const;
    /// Switch indicators alone, identical to run(...).u.
    std::vector<std::uint8_t> switches(std::uint64_t seed, std::uint64_t replication) const;

    model::FbmMixture const& params() const { return params_; }
    std::size_t n_steps() const { return n_; }

  private:
    model::FbmMixture params_;
    std::size_t n_;
    FbmGenerator gen_h_;
    FbmGenerator gen_b_;
};

MixturePath simulate_fbm_mixture(model::FbmMixture const& params, std::size_t n_steps, std::uint64_t seed,
                                 std::uint64_t replication);

/// sum_{n=1}^{N} (n delta)^-a: expected number of switch events.
double expected_switch_count(double a, std::size_t n_steps, double delta = 1.0);
/// sum p_n (1 - p_n): Poisson-binomial variance of the switch count.
double switch_count_variance(double a, std::size_t n_steps, double delta = 1.0);

}  // namespace intermit
