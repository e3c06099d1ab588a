#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "emfdose/compliance.hpp"
#include "emfdose/scenario.hpp"
#include "emfdose/tissue.hpp"

namespace emfdose::io {

// Fixture loaders. All of them run in strict mode: unknown keys are errors,
// and every diagnostic names the file, line, and key involved.

/// All profiles in a tissue fixture file ([[tissue]] blocks).
std::vector<tissue::TissueProfile> load_tissue_profiles(
    const std::filesystem::path& path);

/// Single profile by name; the error message lists the available names.
tissue::TissueProfile load_tissue_profile(const std::filesystem::path& path,
                                          const std::string& name);

/// One limit profile per file (name + [[rule]] blocks).
compliance::LimitProfile load_limit_profile(const std::filesystem::path& path);

/// Scenario file with its tissue/limits references resolved against the
/// given fixture files. The scenario's `limits` name must match the loaded
/// profile's name.
scenario::Scenario load_scenario(const std::filesystem::path& scenario_path,
                                 const std::filesystem::path& tissue_path,
                                 const std::filesystem::path& limits_path);

/// Serialize a scenario back to TOML. Numbers are written in shortest
/// round-trip form, so load(save(s)) reproduces s bit-for-bit.
void save_scenario(const scenario::Scenario& scn,
                   const std::filesystem::path& path);
std::string scenario_to_toml(const scenario::Scenario& scn);

/// One cross-generation calibration fixture row.
struct GenerationFixture {
  std::string name;
  double frequency_hz = 0.0;
  double eirp_w = 0.0;
  double distance_m = 0.0;
  std::string tissue;
  double duty_factor = 1.0;
};

std::vector<GenerationFixture> load_generations(
    const std::filesystem::path& path);

}  // namespace emfdose::io
