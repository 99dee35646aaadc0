#pragma once

// Reproducible output files: CSV with a '#' header comment carrying the
// resolved configuration and its hash, plus JSON sidecars.

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pairemit/emission.hpp"

namespace pairemit::report {

/// Resolved configuration, in a fixed key order.
using Config = std::vector<std::pair<std::string, std::string>>;

/// Shortest-form-independent rendering: 17 significant digits.
std::string format_double(double v);

/// 64-bit FNV-1a.
std::uint64_t fnv1a64(std::string_view data);

/// Hash of the command name plus every key=value line, as 16 hex digits.
std::string config_hash(std::string_view command, const Config& config);

/// Lines starting with '#': program/command, config hash, then the config.
std::string header_comment(std::string_view command, const Config& config);

/// Curves sharing one time grid, as columns t, <label>...
std::string curves_csv(std::string_view command, const Config& config,
                       std::span<const EmissionCurve> curves);

/// Writes the whole buffer in one go; throws std::runtime_error on failure.
void write_file(const std::filesystem::path& path, std::string_view contents);

/// `path` with its extension replaced by `.json`.
std::filesystem::path sidecar_path(const std::filesystem::path& path);

}  // namespace pairemit::report
