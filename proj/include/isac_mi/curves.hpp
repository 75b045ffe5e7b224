#pragma once

// Rate-versus-power curves and high-SNR slopes for ISAC against FDSAC.
//
// Sweep conventions: the downlink scales p_total at the fixed operating point
// (curve_rho for ISAC, curve_alpha / curve_kappa for FDSAC). The uplink
// scales the probed functionality's own power with the other held at
// p_total: user powers for the CR columns, the probing power for the SR
// columns. Uplink ISAC CR is taken at P_c and SR at P_s.

#include <span>
#include <vector>

#include "isac_mi/model.hpp"
#include "isac_mi/region.hpp"

namespace isac_mi {

struct CurveRow {
  double power = 0.0;
  RatePoint isac;
  RatePoint fdsac;
};

/// Ergodic ISAC and FDSAC rates at every power (linear, strictly increasing).
std::vector<CurveRow> rate_curves(const ScenarioConfig& scenario, std::span<const double> powers);

struct SlopeReport {
  SlopePair isac;
  SlopePair fdsac;
  double power_lo = 1e8;
  double power_hi = 1e10;
};

/// Rank-counting high-SNR slopes at the scenario's curve operating point.
SlopePair analytic_slopes(const ScenarioConfig& scenario, bool isac);

/// Finite-difference slopes at {1e8, 1e10} with analytic references attached.
SlopeReport slope_report(const ScenarioConfig& scenario);

}  // namespace isac_mi
