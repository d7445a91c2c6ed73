#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>

#include "intermit/ensemble.hpp"

namespace intermit {

inline constexpr int kEnsembleFormatVersion = 1;

struct ChecksumError : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

/// 64-bit FNV-1a over raw bytes.
std::uint64_t fnv1a64(std::span<unsigned char const> bytes);

/// Magic line, one-line JSON header (format_version, model, grid, seed,
/// n_reps, checksum), then the column-major little-endian f64 payload.
void write_ensemble(std::ostream& os, PathEnsemble const& e);
PathEnsemble read_ensemble(std::istream& is);

void save_ensemble(std::filesystem::path const& path, PathEnsemble const& e);
PathEnsemble load_ensemble(std::filesystem::path const& path);

/// Header JSON alone (for metadata side files).
std::string ensemble_header_json(PathEnsemble const& e);

/// One row per replication, one column per time; header row of times.
void write_ensemble_csv(std::ostream& os, PathEnsemble const& e);

}  // namespace intermit
