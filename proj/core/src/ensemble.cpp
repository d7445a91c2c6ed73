#include "intermit/ensemble.hpp"

#include <algorithm>
#include <stdexcept>

namespace intermit {

PathEnsemble::PathEnsemble(ProcessModel model, TimeGrid grid, std::uint64_t seed, std::size_t n_reps)
    : model_(std::move(model)), grid_(std::move(grid)), seed_(seed), n_reps_(n_reps),
      values_(n_reps * grid_.size(), 0.0)
{
    if (n_reps == 0)
        throw std::invalid_argument("PathEnsemble: n_reps must be positive");
}

std::span<double const> PathEnsemble::column(std::size_t t_index) const
{
    if (t_index >= grid_.size())
        throw std::out_of_range("PathEnsemble: time index out of range");
    return std::span<double const>(values_).subspan(t_index * n_reps_, n_reps_);
}

void PathEnsemble::set_row(std::size_t rep, std::span<double const> row)
{
    if (row.size() != grid_.size() || rep >= n_reps_)
        throw std::out_of_range("PathEnsemble: row shape mismatch");
    for (std::size_t j = 0; j < row.size(); ++j)
        values_[j * n_reps_ + rep] = row[j];
}

}  // namespace intermit
