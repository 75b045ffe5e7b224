#pragma once

// JSON scenario files.
//
//   {
//     "kind": "downlink-ma",
//     "dims": {"m_tx": 4, "n_rx": 4, "k_users": 2, "l_frame": 16},
//     "power": {"p_total": 10, "sigma2_c": 1, "sigma2_s": 1},
//     "target": {"corr_coeff": 0.5},
//     "rho_grid": 41, "alpha_grid": 41, "kappa_grid": 41,
//     "mc_trials": 500, "seed": 20240001,
//     "snr_sweep": [-10, -8, ..., 30],
//     "curve_rho": 0.3, "curve_alpha": 0.7, "curve_kappa": 0.2
//   }
//
// Only "kind" is required; omitted fields take the defaults of that kind.
// snr_sweep is in dB relative to sigma2_c. Unknown keys are rejected.

#include <filesystem>
#include <string>

#include <json.hpp>

#include "isac_mi/model.hpp"

namespace isac_mi {

ScenarioConfig scenario_from_json(const nlohmann::json& doc);
ScenarioConfig load_scenario(const std::filesystem::path& path);
nlohmann::json scenario_to_json(const ScenarioConfig& cfg);

/// Writes `content` to a sibling temporary file and renames it into place.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace isac_mi
