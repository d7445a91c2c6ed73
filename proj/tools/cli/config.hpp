#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "intermit/conjugate.hpp"
#include "intermit/estimator.hpp"
#include "intermit/model.hpp"
#include "intermit/scenarios.hpp"
#include "intermit/time_grid.hpp"

namespace intermit::cli {

/// Bad or missing configuration; maps to exit code 3.
struct ConfigError : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

enum ExitCode : int {
    kExitPass = 0,
    kExitFail = 1,
    kExitIndeterminate = 2,
    kExitConfig = 3,
};

struct RunConfig
{
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> n_reps;
    unsigned workers = 0;
    std::filesystem::path out = ".";
    std::optional<std::filesystem::path> ensemble;

    std::optional<ProcessModel> model;
    std::optional<TimeGrid> grid;
    std::optional<ScenarioSpec> scenario;

    std::vector<double> q_grid = default_q_grid();
    /// Fit window in t; unset ends take the grid ends.
    std::optional<double> fit_t_min;
    std::optional<double> fit_t_max;
    DetectOptions detect;

    std::optional<Interval> ldp_set;
    double window_decades = 2.0;
    std::optional<double> slack;

    /// Sampling steps for curves emitted by `conjugate` and `reproduce`.
    double x_step = 0.01;
    double q_step = 0.05;

    /// fBm mixture settings for the path figures.
    double fig_H = 0.6;
    double fig_b = 0.8;
    std::vector<double> fig_a = {0.8, 0.6};
    std::size_t fig_steps = 100000;
    std::size_t fig_paths = 3;
    std::size_t fig_stride = 10;
};

/// Flags given on the command line; they override the file.
struct Overrides
{
    std::optional<std::filesystem::path> config;
    std::optional<std::uint64_t> seed;
    std::optional<unsigned> workers;
    std::optional<std::filesystem::path> out;
    std::optional<std::filesystem::path> ensemble;
};

/// INI text with sections run, model, grid, scenario, estimator, ldp,
/// reproduce. Unknown sections and keys are rejected.
RunConfig parse_config(std::string const& ini_text);
RunConfig load_config(Overrides const& o);

/// Indices of grid times inside the fit window, all > 1.
std::vector<std::size_t> fit_indices(RunConfig const& c, TimeGrid const& grid);

/// Throws ConfigError naming every missing field.
void require_simulation_fields(RunConfig const& c);

}  // namespace intermit::cli
