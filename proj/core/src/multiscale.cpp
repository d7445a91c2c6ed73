#include "intermit/multiscale.hpp"

#include <cmath>
#include <stdexcept>

namespace intermit {
namespace {

void check(double H, double b, double a, TimeGrid const& grid)
{
    if (!(H > 0.0 && H < b))
        throw std::invalid_argument("multiscale: requires 0 < H < b");
    if (!(a > 0.0))
        throw std::invalid_argument("multiscale: requires a > 0");
    grid.require_rate_grid();
}

}  // namespace

std::vector<double> simulate_biscale_det(double H, double b, double a, TimeGrid const& grid, RngStream& rng)
{
    check(H, b, a, grid);
    std::vector<double> x(grid.size());
    for (std::size_t j = 0; j < grid.size(); ++j) {
        double const t = grid[j];
        x[j] = rng.uniform() < std::pow(t, -a) ? std::pow(t, b) : std::pow(t, H);
    }
    return x;
}

std::vector<double> simulate_triscale_det(double H, double b, double a, TimeGrid const& grid, RngStream& rng)
{
    check(H, b, a, grid);
    double const c = 0.5 * (H + b);
    for (double t : grid.values()) {
        if (std::pow(t, -a / 2.0) + std::pow(t, -a) > 1.0)
            throw std::invalid_argument("simulate_triscale_det: t^(-a/2) + t^(-a) exceeds 1 on the grid");
    }
    std::vector<double> x(grid.size());
    for (std::size_t j = 0; j < grid.size(); ++j) {
        double const t = grid[j];
        double const u = rng.uniform();
        double const p_top = std::pow(t, -a);
        double const p_mid = std::pow(t, -a / 2.0);
        if (u < p_top)
            x[j] = std::pow(t, b);
        else if (u < p_top + p_mid)
            x[j] = std::pow(t, c);
        else
            x[j] = std::pow(t, H);
    }
    return x;
}

FbmMixtureSimulator::FbmMixtureSimulator(model::FbmMixture params, std::size_t n_steps)
    : params_(params), n_(n_steps), gen_h_(FbmSpec{params.H, n_steps, params.delta}),
      gen_b_(FbmSpec{params.b, n_steps, params.delta})
{
    validate(ProcessModel(params));
    if (params.delta < 1.0)
        throw std::invalid_argument("fbm_mixture: t_1 = delta must be >= 1 so that t^-a <= 1");
}

std::vector<std::uint8_t> FbmMixtureSimulator::switches(std::uint64_t seed, std::uint64_t replication) const
{
    RngStream rng(seed, replication, kStreamSwitch);
    std::vector<std::uint8_t> u(n_);
    for (std::size_t n = 0; n < n_; ++n) {
        double const t = static_cast<double>(n + 1) * params_.delta;
        u[n] = rng.uniform() < std::pow(t, -params_.a) ? 1 : 0;
    }
    return u;
}

MixturePath FbmMixtureSimulator::run(std::uint64_t seed, std::uint64_t replication) const
{
    MixturePath p;
    RngStream rh(seed, replication, kStreamBH);
    RngStream rb(seed, replication, kStreamBb);
    p.bh = gen_h_.path(rh);
    p.bb = gen_b_.path(rb);
    p.u = switches(seed, replication);
    p.x.resize(n_);
    for (std::size_t n = 0; n < n_; ++n)
        p.x[n] = p.u[n] ? p.bb[n] : p.bh[n];
    return p;
}

MixturePath simulate_fbm_mixture(model::FbmMixture const& params, std::size_t n_steps, std::uint64_t seed,
                                 std::uint64_t replication)
{
    return FbmMixtureSimulator(params, n_steps).run(seed, replication);
}

double expected_switch_count(double a, std::size_t n_steps, double delta)
{
    double s = 0.0;
    for (std::size_t n = 1; n <= n_steps; ++n)
        s += std::pow(static_cast<double>(n) * delta, -a);
    return s;
}

double switch_count_variance(double a, std::size_t n_steps, double delta)
{
    double s = 0.0;
    for (std::size_t n = 1; n <= n_steps; ++n) {
        double const p = std::pow(static_cast<double>(n) * delta, -a);
        s += p * (1.0 - p);
    }
    return s;
}

}  // namespace intermit
