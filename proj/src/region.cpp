#include "isac_mi/region.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace isac_mi {

std::vector<std::size_t> pareto_indices(std::span<const RatePoint> points) {
  if (points.empty()) throw DomainError("pareto_frontier: empty input");
  std::vector<std::size_t> idx(points.size());
  std::iota(idx.begin(), idx.end(), 0);
  // Descending cr, then descending sr; a point survives iff its sr beats every
  // sr seen so far (all of which have cr >= its own).
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    if (points[a].cr != points[b].cr) return points[a].cr > points[b].cr;
    return points[a].sr > points[b].sr;
  });
  std::vector<std::size_t> keep;
  double best_sr = -std::numeric_limits<double>::infinity();
  for (std::size_t i : idx) {
    if (points[i].sr > best_sr) {
      keep.push_back(i);
      best_sr = points[i].sr;
    }
  }
  std::reverse(keep.begin(), keep.end());
  return keep;
}

RateRegion pareto_frontier(std::span<const RatePoint> points) {
  RateRegion out;
  for (std::size_t i : pareto_indices(points)) out.frontier.push_back(points[i]);
  return out;
}

std::vector<std::size_t> hull_indices(std::span<const RatePoint> frontier) {
  std::vector<std::size_t> hull;
  // Monotone-chain upper hull over points sorted by cr. A middle point is
  // removed only when it lies strictly below the chord of its neighbours.
  for (std::size_t i = 0; i < frontier.size(); ++i) {
    while (hull.size() >= 2) {
      const RatePoint& a = frontier[hull[hull.size() - 2]];
      const RatePoint& b = frontier[hull.back()];
      const RatePoint& c = frontier[i];
      const double cross = (b.cr - a.cr) * (c.sr - a.sr) - (b.sr - a.sr) * (c.cr - a.cr);
      if (cross > 0.0) {
        hull.pop_back();
      } else {
        break;
      }
    }
    hull.push_back(i);
  }
  return hull;
}

RateRegion convexify(const RateRegion& region) {
  RateRegion out;
  out.convexified = true;
  for (std::size_t i : hull_indices(region.frontier)) out.frontier.push_back(region.frontier[i]);
  return out;
}

double sr_envelope(const RateRegion& region, double cr) {
  const auto& f = region.frontier;
  if (f.empty()) return -1.0;
  if (cr <= f.front().cr) return f.front().sr;
  if (cr > f.back().cr) return -1.0;
  auto it = std::lower_bound(f.begin(), f.end(), cr,
                             [](const RatePoint& p, double v) { return p.cr < v; });
  if (it->cr == cr) return it->sr;
  const RatePoint& b = *it;
  const RatePoint& a = *(it - 1);
  if (!region.convexified) return b.sr;
  const double t = (cr - a.cr) / (b.cr - a.cr);
  return a.sr + t * (b.sr - a.sr);
}

bool contains(const RateRegion& outer, const RateRegion& inner, double tol) {
  const RateRegion hull = outer.convexified ? outer : convexify(outer);
  if (hull.frontier.empty()) return inner.frontier.empty();
  for (const auto& p : inner.frontier) {
    const double x = std::max(p.cr - tol, 0.0);
    const double env = sr_envelope(hull, x);
    if (env < 0.0 || p.sr - tol > env) return false;
  }
  return true;
}

SlopeEstimate hisnr_slope(std::span<const PowerRate> samples, double analytic) {
  if (samples.size() < 2) throw UnreliableRegimeError("hisnr_slope: need at least two samples");
  for (std::size_t i = 1; i < samples.size(); ++i) {
    if (!(samples[i].power > samples[i - 1].power)) {
      throw UnreliableRegimeError("hisnr_slope: powers must be strictly increasing");
    }
  }
  const PowerRate& lo = samples[samples.size() - 2];
  const PowerRate& hi = samples.back();
  if (!(hi.power >= 1e6) || !(lo.power > 0.0)) {
    throw UnreliableRegimeError("hisnr_slope: top power below 1e6 is not high-SNR");
  }
  SlopeEstimate s;
  s.numeric = (hi.rate - lo.rate) / (std::log2(hi.power) - std::log2(lo.power));
  s.analytic = analytic;
  s.abs_error = std::abs(s.numeric - s.analytic);
  return s;
}

}  // namespace isac_mi
