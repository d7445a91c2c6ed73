#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>

#include "intermit/ensemble.hpp"
#include "intermit/model.hpp"
#include "intermit/time_grid.hpp"

namespace intermit {

/// Per-replication path generator for a model on a fixed output grid.
/// Lattice models need a grid whose times are multiples of the model's
/// delta; they simulate up to the last grid time and keep the grid points.
class ReplicationSimulator
{
  public:
    ReplicationSimulator(ProcessModel model, TimeGrid grid);
    ~ReplicationSimulator();
    ReplicationSimulator(ReplicationSimulator&&) noexcept;

    /// Values at the grid times for replication `rep`; depends on
    /// (model, grid, seed, rep) only.
    void run(std::uint64_t seed, std::uint64_t rep, std::span<double> out) const;

    TimeGrid const& grid() const;

  private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// Fills an ensemble, fanning replications out to `workers` threads
/// (0 = hardware concurrency). The result is identical for every worker
/// count.
PathEnsemble simulate_ensemble(ProcessModel const& model, TimeGrid const& grid, std::uint64_t seed,
                               std::size_t n_reps, unsigned workers = 0);

/// Replications [first, first + count) only, as rows of a count-row
/// ensemble; used to spot-check expensive runs.
PathEnsemble simulate_ensemble_range(ProcessModel const& model, TimeGrid const& grid, std::uint64_t seed,
                                     std::size_t first, std::size_t count, unsigned workers = 0);

}  // namespace intermit
