#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "intermit/model.hpp"
#include "intermit/time_grid.hpp"

namespace intermit {

/// n_reps x grid.size() matrix of process values.
///
/// Stored column-major: all replications at one time are contiguous, which
/// is the access pattern of every estimator.
class PathEnsemble
{
  public:
    PathEnsemble(ProcessModel model, TimeGrid grid, std::uint64_t seed, std::size_t n_reps);

    ProcessModel const& model() const { return model_; }
    TimeGrid const& grid() const { return grid_; }
    std::uint64_t seed() const { return seed_; }
    std::size_t n_reps() const { return n_reps_; }

    std::span<double const> column(std::size_t t_index) const;
    double at(std::size_t rep, std::size_t t_index) const { return values_[t_index * n_reps_ + rep]; }
    void set_row(std::size_t rep, std::span<double const> row);

    std::span<double const> raw() const { return values_; }
    std::span<double> raw() { return values_; }

  private:
    ProcessModel model_;
    TimeGrid grid_;
    std::uint64_t seed_;
    std::size_t n_reps_;
    std::vector<double> values_;
};

/// Mean of |X(t)|^q over replications.
struct MomentEstimate
{
    double q;
    double t;
    double value;
    double stderr_;
    std::size_t n_reps;
    /// Smallest fraction of replications carrying 99% of the moment mass.
    double effective_fraction = 1.0;
};

}  // namespace intermit
