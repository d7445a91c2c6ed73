#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "cli/config.hpp"
#include "intermit/ensemble.hpp"

namespace intermit::cli {

/// Each command writes its files under c.out and returns an exit code.
int cmd_simulate(RunConfig const& c, std::ostream& log);
int cmd_tau(RunConfig const& c, std::ostream& log);
int cmd_conjugate(RunConfig const& c, std::optional<std::filesystem::path> const& tau_csv, bool repair,
                  std::ostream& log);
int cmd_ldp(RunConfig const& c, std::ostream& log);
int cmd_reproduce(RunConfig const& c, std::string const& figure_id, std::ostream& log);

/// Body of the tau CSV for an ensemble held in memory; cmd_tau writes the
/// same text for the persisted ensemble.
std::string tau_csv(RunConfig const& c, PathEnsemble const& e, std::ostream& log);

/// Ensemble named by the config: --ensemble, [run] ensemble, or
/// <out>/ensemble.bin.
std::filesystem::path ensemble_path(RunConfig const& c);

}  // namespace intermit::cli
