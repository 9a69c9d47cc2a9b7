#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "plpdim/dimensioning.hpp"

namespace plpdim {

enum class StudyType { kCongestion, kDimension, kCompare, kRegions };

struct StudySpec {
    StudyType type = StudyType::kCongestion;
    std::vector<int> m_grid;           // congestion / compare
    std::vector<double> tau_grid_bps;  // dimension / regions
    double pi_target = 0.0;            // dimension / regions
    std::vector<std::string> region_names;
};

/// A scenario file after parsing, unit conversion and validation.
struct LoadedScenario {
    Scenario scenario;
    StudySpec study;
    std::uint64_t hash = 0;  // FNV-1a over the effective canonical form
};

namespace scenario {

/// Parse a JSON scenario document. Unknown keys and missing required keys
/// are diagnosed by name; dB/dBm fields are converted to linear here.
LoadedScenario parse(const std::string& json_text);
LoadedScenario load_file(const std::string& path);

/// Recompute the provenance hash after command-line overrides.
void rehash(LoadedScenario& ls);

std::string format_double(double v);

/// Study runners; each returns the full CSV document (header comments with
/// scenario hash/seed/version, then one row per grid point).
std::string run_congestion(const LoadedScenario& ls);
std::string run_dimension(const LoadedScenario& ls);
std::string run_compare(const LoadedScenario& ls);
std::string run_regions(const LoadedScenario& ls);

/// Dispatch on the subcommand name ("congestion", "dimension", ...).
std::string run_study(const std::string& command, const LoadedScenario& ls);

}  // namespace scenario
}  // namespace plpdim
