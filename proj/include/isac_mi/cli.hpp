#pragma once

// Subcommands of the `isac-mi` executable. Each returns the process exit code:
// 0 success, 1 validation failure, 2 configuration error, 3 numerical failure.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "isac_mi/validate.hpp"

namespace isac_mi::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;

const char* version();

inline constexpr const char* kRegionHeader = "cr_bits_hz,sr_bits_hz,sweep_param,stderr_cr,stderr_sr";
inline constexpr const char* kCurvesHeader = "power_db,cr_isac,sr_isac,cr_fdsac,sr_fdsac";

struct RunManifest {
  std::string command;
  std::string scenario_json;
  std::uint64_t seed = 0;
  double duration_s = 0.0;
  std::vector<std::string> outputs;
};

/// Serialized manifest, written as `run_manifest.json` next to the outputs.
std::string manifest_json(const RunManifest& manifest);

int cmd_region(const std::filesystem::path& config, const std::string& mode, const std::filesystem::path& out_dir,
               std::ostream& out, std::ostream& err);
int cmd_curves(const std::filesystem::path& config, const std::filesystem::path& out_dir, std::ostream& out,
               std::ostream& err);
int cmd_slopes(const std::filesystem::path& config, const std::filesystem::path& out_dir, std::ostream& out,
               std::ostream& err);
int cmd_validate(const ValidationOptions& options, std::ostream& out, std::ostream& err);

}  // namespace isac_mi::cli
