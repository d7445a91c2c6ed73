#include "intermit/simulate.hpp"

#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "intermit/fgn.hpp"
#include "intermit/multiscale.hpp"
#include "intermit/parallel.hpp"
#include "intermit/supou.hpp"

namespace intermit {

struct ReplicationSimulator::Impl
{
    ProcessModel model;
    TimeGrid grid;
    std::vector<std::size_t> steps;
    std::size_t n_steps = 0;
    std::optional<FbmGenerator> fbm;
    std::optional<FbmMixtureSimulator> mixture;
};

ReplicationSimulator::ReplicationSimulator(ProcessModel model, TimeGrid grid)
    : impl_(std::make_unique<Impl>(Impl{std::move(model), std::move(grid), {}, 0, std::nullopt, std::nullopt}))
{
    validate(impl_->model);
    auto const delta = model_delta(impl_->model);
    if (delta) {
        auto const gd = impl_->grid.delta();
        if (!gd || std::abs(*gd - *delta) > 1e-12 * *delta)
            throw std::invalid_argument("simulate: grid must lie on the model lattice (delta = " +
                                        std::to_string(*delta) + ")");
        impl_->steps = impl_->grid.steps();
        impl_->n_steps = impl_->steps.back();
    }
    if (auto const* f = std::get_if<model::Fbm>(&impl_->model))
        impl_->fbm.emplace(FbmSpec{f->hurst, impl_->n_steps, f->delta});
    if (auto const* f = std::get_if<model::FbmMixture>(&impl_->model))
        impl_->mixture.emplace(*f, impl_->n_steps);
    if (std::holds_alternative<model::BiscaleDet>(impl_->model) ||
        std::holds_alternative<model::TriscaleDet>(impl_->model))
        impl_->grid.require_rate_grid();
}

ReplicationSimulator::~ReplicationSimulator() = default;
ReplicationSimulator::ReplicationSimulator(ReplicationSimulator&&) noexcept = default;

TimeGrid const& ReplicationSimulator::grid() const
{
    return impl_->grid;
}

void ReplicationSimulator::run(std::uint64_t seed, std::uint64_t rep, std::span<double> out) const
{
    Impl const& s = *impl_;
    if (out.size() != s.grid.size())
        throw std::invalid_argument("ReplicationSimulator: output length mismatch");
    auto pick = [&](std::span<double const> lattice, std::size_t offset) {
        // lattice[i] holds the value at step i + offset
        for (std::size_t j = 0; j < s.steps.size(); ++j)
            out[j] = lattice[s.steps[j] - offset];
    };
    std::visit(
        [&](auto const& m) {
            using M = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<M, model::BiscaleDet>) {
                RngStream rng(seed, rep);
                auto x = simulate_biscale_det(m.H, m.b, m.a, s.grid, rng);
                std::copy(x.begin(), x.end(), out.begin());
            } else if constexpr (std::is_same_v<M, model::TriscaleDet>) {
                RngStream rng(seed, rep);
                auto x = simulate_triscale_det(m.H, m.b, m.a, s.grid, rng);
                std::copy(x.begin(), x.end(), out.begin());
            } else if constexpr (std::is_same_v<M, model::Power>) {
                for (std::size_t j = 0; j < s.grid.size(); ++j)
                    out[j] = std::pow(s.grid[j], m.exponent);
            } else if constexpr (std::is_same_v<M, model::Fbm>) {
                RngStream rng(seed, rep, kStreamBH);
                auto path = s.fbm->path(rng);
                pick(path, 1);
            } else if constexpr (std::is_same_v<M, model::FbmMixture>) {
                auto p = s.mixture->run(seed, rep);
                pick(p.x, 1);
            } else if constexpr (std::is_same_v<M, model::SupOU>) {
                auto y = simulate_supou(m, s.n_steps, seed, rep);
                auto x = integrate_path(y, m.delta);
                pick(x, 0);
            }
        },
        s.model);
}

PathEnsemble simulate_ensemble_range(ProcessModel const& model, TimeGrid const& grid, std::uint64_t seed,
                                     std::size_t first, std::size_t count, unsigned workers)
{
    ReplicationSimulator sim(model, grid);
    PathEnsemble e(model, grid, seed, count);
    parallel_for(count, workers, [&](std::size_t i) {
        std::vector<double> row(grid.size());
        sim.run(seed, first + i, row);
        e.set_row(i, row);
    });
    return e;
}

PathEnsemble simulate_ensemble(ProcessModel const& model, TimeGrid const& grid, std::uint64_t seed,
                               std::size_t n_reps, unsigned workers)
{
    return simulate_ensemble_range(model, grid, seed, 0, n_reps, workers);
}

}  // namespace intermit
