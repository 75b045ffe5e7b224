#pragma once

// Downlink ISAC and FDSAC evaluators.

#include <span>
#include <string>
#include <vector>

#include "isac_mi/alloc.hpp"
#include "isac_mi/mc.hpp"
#include "isac_mi/model.hpp"

namespace isac_mi {

/// Power fractions of the two NOMA users (strong = larger channel gain).
struct NomaAllocation {
  double a_strong = 0.5;
  double a_weak = 0.5;

  static NomaAllocation from_strong(double a_strong);
  void validate() const;
};

/// alpha: spectrum fraction for communications; kappa: power fraction for
/// communications (downlink only).
struct FdsacSplit {
  double alpha = 0.5;
  double kappa = 0.5;

  void validate() const;
};

struct NomaRates {
  double r_strong = 0.0;
  double r_weak = 0.0;
  double cr_sum = 0.0;
};

NomaRates sa_noma_rates(std::span<const double, 2> h_gains, const NomaAllocation& alloc, double p,
                        double sigma2_c);

/// Best NOMA sum rate over a grid of `grid` strong-user fractions in [0, 1].
double sa_noma_best_sum_rate(std::span<const double, 2> h_gains, double p, double sigma2_c, int grid);

/// Corner P_o for one channel draw: full-power NOMA and full-power sensing at once.
RatePoint sa_isac_corner(const ScenarioConfig& scenario, const CommChannel& channels);
/// P_o averaged over the scenario's Monte Carlo trials.
ErgodicEstimate sa_isac_corner(const ScenarioConfig& scenario);

RatePoint sa_fdsac_point(const ScenarioConfig& scenario, const CommChannel& channels, const FdsacSplit& split);

/// User encoded i-th sees interference only from users encoded after it.
std::vector<double> dpc_rates(const CMatrix& channels, std::span<const CMatrix> bc_covariances,
                              std::span<const int> order, double sigma2_c);

RatePoint ma_isac_point(const ScenarioConfig& scenario, const CommChannel& channels, double rho);

RatePoint ma_fdsac_point(const ScenarioConfig& scenario, const CommChannel& channels, const FdsacSplit& split);

enum class RegionMode { Isac, Fdsac };

/// One surviving frontier point of a sweep, with its sweep label
/// (e.g. "rho=0.25", "alpha=0.5;kappa=0.3", "P_o") and Monte Carlo error.
struct SweepPoint {
  RatePoint mean;
  RatePoint std_error;
  std::string label;
};

struct RegionSweep {
  RateRegion region;
  /// Parallel to region.frontier.
  std::vector<SweepPoint> points;
};

/// Sweeps the scenario grid, averages each point over the trials, then
/// Pareto-filters and convexifies.
RegionSweep downlink_region_sweep(const ScenarioConfig& scenario, RegionMode mode);
RateRegion downlink_region(const ScenarioConfig& scenario, RegionMode mode);

/// Pareto filter plus convexification of labeled sweep results.
RegionSweep reduce_sweep(std::span<const ErgodicEstimate> estimates, std::span<const std::string> labels);

std::string format_param(double v);

}  // namespace isac_mi
