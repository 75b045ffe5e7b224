#pragma once

// Rate-region geometry and high-SNR slope estimation.

#include <span>
#include <utility>
#include <vector>

#include "isac_mi/model.hpp"

namespace isac_mi {

/// Indices of the non-dominated points, ordered by increasing cr. Exact
/// duplicates keep the first occurrence.
std::vector<std::size_t> pareto_indices(std::span<const RatePoint> points);

RateRegion pareto_frontier(std::span<const RatePoint> points);

/// Indices (into the frontier) of the points on the upper-right concave
/// envelope. Collinear points are kept.
std::vector<std::size_t> hull_indices(std::span<const RatePoint> frontier);

RateRegion convexify(const RateRegion& region);

/// Largest sr achievable at communication rate `cr` inside the region closed
/// down to the axes (time-sharing applied); negative when cr is out of reach.
double sr_envelope(const RateRegion& region, double cr);

/// True iff every frontier point of `inner` is dominated, up to `tol` in each
/// coordinate, by a point of the convexified `outer` region.
bool contains(const RateRegion& outer, const RateRegion& inner, double tol);

struct PowerRate {
  double power = 0.0;
  double rate = 0.0;
};

struct SlopePair {
  SlopeEstimate cr_slope;
  SlopeEstimate sr_slope;
};

/// Finite-difference slope over the last two samples, in bits/s/Hz per
/// doubling of power. Requires >= 2 samples, strictly increasing powers and a
/// top power of at least 1e6.
SlopeEstimate hisnr_slope(std::span<const PowerRate> samples, double analytic = 0.0);

}  // namespace isac_mi
