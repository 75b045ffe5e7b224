#pragma once

// Uplink ISAC: SIC orderings between the communication signal and the
// sensing echo, time-sharing between the two corners, and the FDSAC baseline.

#include <span>

#include "isac_mi/downlink.hpp"
#include "isac_mi/model.hpp"

namespace isac_mi {

enum class SicOrder {
  /// Decode users first with the echo as interference, then sense cleanly.
  SensingCentric,
  /// Sense first with the users as interference, then decode cleanly.
  CommCentric,
};

RatePoint uplink_sic_point(const CMatrix& channels, std::span<const double> user_powers, const CMatrix& q_sense,
                           SicOrder order, const ScenarioConfig& scenario);

/// p * p_s + (1 - p) * p_c.
RatePoint time_share(const RatePoint& p_s, const RatePoint& p_c, double p);

/// Per-user transmit powers of the scenario (every user at p_total).
std::vector<double> uplink_user_powers(const ScenarioConfig& scenario);
/// SR-optimal probing covariance at the scenario's sensing power.
CMatrix uplink_probe_covariance(const ScenarioConfig& scenario);

struct UplinkCorners {
  ErgodicEstimate p_s;
  ErgodicEstimate p_c;
};

UplinkCorners uplink_corners(const ScenarioConfig& scenario);

/// Segment P_s -> P_c sampled at 41 time-sharing probabilities. The region is
/// closed down to the axes implicitly by dominance.
RegionSweep uplink_isac_region_sweep(const ScenarioConfig& scenario);
RateRegion uplink_isac_region(const ScenarioConfig& scenario);

RatePoint uplink_fdsac_point(const ScenarioConfig& scenario, const CommChannel& channels, double alpha);

/// FDSAC sweep over alpha_grid, Pareto-filtered and convexified.
RegionSweep uplink_fdsac_region_sweep(const ScenarioConfig& scenario);

inline constexpr int kTimeShareSamples = 41;

}  // namespace isac_mi
