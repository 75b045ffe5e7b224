#include "isac_mi/downlink.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <map>

#include "isac_mi/mi_core.hpp"
#include "isac_mi/region.hpp"

namespace isac_mi {
namespace {

void require_kind(const ScenarioConfig& scenario, ScenarioKind kind, const char* op) {
  if (scenario.kind != kind) {
    throw DomainError(std::string(op) + ": scenario kind must be " + std::string(to_string(kind)));
  }
}

std::array<double, 2> sa_gains(const CommChannel& channels) {
  if (channels.h.rows() != 1 || channels.h.cols() != 2) {
    throw DomainError("downlink-sa expects a 1 x 2 channel");
  }
  return {std::norm(channels.h(0, 0)), std::norm(channels.h(0, 1))};
}

/// (1 - alpha) (N/L) log2(1 + L p r / ((1 - alpha) sigma2)), 0 at alpha = 1.
double sa_sensing_rate(const ScenarioConfig& s, double share, double power) {
  if (share <= 0.0 || power <= 0.0) return 0.0;
  const double r = s.target().r_corr(0, 0).real();
  const double n_over_l = static_cast<double>(s.dims.n_rx) / s.dims.l_frame;
  return share * n_over_l * std::log2(1.0 + s.dims.l_frame * power * r / (share * s.power.sigma2_s));
}

/// Sensing rate (per slot) with the SR-optimal covariance in a band of the
/// given share; the band carries share * sigma2_s of noise.
double ma_band_sensing_rate(const ScenarioConfig& s, const CMatrix& r, double share, double power) {
  if (share <= 0.0 || power <= 0.0) return 0.0;
  const double noise = share * s.power.sigma2_s;
  // Designed against the full-band noise floor, evaluated in the band.
  const CMatrix q = sr_optimal_covariance(r, power, s.power.sigma2_s, s.dims.l_frame, s.dims.n_rx);
  return share * sensing_mi(r, q, s.dims.l_frame, s.dims.n_rx, NoiseModel::white(noise)) / s.dims.l_frame;
}

// Band noise share * sigma2_c at budget `power` is the full-band problem at
// budget power / share.
double ma_band_comm_rate(const ScenarioConfig& s, const CommChannel& ch, double share, double power) {
  if (share <= 0.0 || power <= 0.0) return 0.0;
  IwfOptions opts;
  opts.bc_transform = false;
  return share * sum_power_iwf(ch.h, power / share, s.power.sigma2_c, opts).sum_rate;
}

}  // namespace

NomaAllocation NomaAllocation::from_strong(double a_strong) {
  NomaAllocation a{a_strong, 1.0 - a_strong};
  a.validate();
  return a;
}

void NomaAllocation::validate() const {
  if (!(a_strong >= 0.0 && a_strong <= 1.0 && a_weak >= 0.0 && a_weak <= 1.0) ||
      std::abs(a_strong + a_weak - 1.0) > 1e-12) {
    throw DomainError("NomaAllocation: fractions must lie in [0, 1] and sum to 1");
  }
}

void FdsacSplit::validate() const {
  if (!(alpha >= 0.0 && alpha <= 1.0 && kappa >= 0.0 && kappa <= 1.0)) {
    throw DomainError("FdsacSplit: alpha and kappa must lie in [0, 1]");
  }
}

NomaRates sa_noma_rates(std::span<const double, 2> h_gains, const NomaAllocation& alloc, double p,
                        double sigma2_c) {
  alloc.validate();
  if (!(p >= 0.0)) throw DomainError("sa_noma_rates: power must be >= 0");
  if (!(sigma2_c > 0.0)) throw DomainError("sa_noma_rates: sigma2_c must be > 0");
  const bool first_strong = h_gains[0] >= h_gains[1];
  const double g1 = first_strong ? h_gains[0] : h_gains[1];
  const double g2 = first_strong ? h_gains[1] : h_gains[0];
  NomaRates r;
  r.r_strong = std::log2(1.0 + alloc.a_strong * p * g1 / sigma2_c);
  r.r_weak = std::log2(1.0 + alloc.a_weak * p * g2 / (alloc.a_strong * p * g2 + sigma2_c));
  r.cr_sum = r.r_strong + r.r_weak;
  return r;
}

double sa_noma_best_sum_rate(std::span<const double, 2> h_gains, double p, double sigma2_c, int grid) {
  double best = 0.0;
  for (double a : unit_grid(std::max(grid, 2))) {
    best = std::max(best, sa_noma_rates(h_gains, NomaAllocation::from_strong(a), p, sigma2_c).cr_sum);
  }
  return best;
}

RatePoint sa_isac_corner(const ScenarioConfig& scenario, const CommChannel& channels) {
  require_kind(scenario, ScenarioKind::DownlinkSa, "sa_isac_corner");
  const auto g = sa_gains(channels);
  const double p = scenario.power.p_total;
  return {sa_noma_best_sum_rate(g, p, scenario.power.sigma2_c, scenario.rho_grid),
          sa_sensing_rate(scenario, 1.0, p)};
}

ErgodicEstimate sa_isac_corner(const ScenarioConfig& scenario) {
  require_kind(scenario, ScenarioKind::DownlinkSa, "sa_isac_corner");
  return ergodic_average(
      scenario, [&](const CommChannel& ch) { return sa_isac_corner(scenario, ch); }, scenario.mc_trials);
}

RatePoint sa_fdsac_point(const ScenarioConfig& scenario, const CommChannel& channels, const FdsacSplit& split) {
  require_kind(scenario, ScenarioKind::DownlinkSa, "sa_fdsac_point");
  split.validate();
  const auto g = sa_gains(channels);
  const double p = scenario.power.p_total;
  RatePoint out;
  if (split.alpha > 0.0 && split.kappa > 0.0 && p > 0.0) {
    out.cr = split.alpha * sa_noma_best_sum_rate(g, split.kappa * p, split.alpha * scenario.power.sigma2_c,
                                                 scenario.rho_grid);
  }
  out.sr = sa_sensing_rate(scenario, 1.0 - split.alpha, (1.0 - split.kappa) * p);
  return out;
}

std::vector<double> dpc_rates(const CMatrix& channels, std::span<const CMatrix> bc_covariances,
                              std::span<const int> order, double sigma2_c) {
  const auto k = static_cast<std::size_t>(channels.cols());
  if (bc_covariances.size() != k || order.size() != k) throw DomainError("dpc_rates: size mismatch");
  if (!(sigma2_c > 0.0)) throw DomainError("dpc_rates: sigma2_c must be > 0");
  std::vector<double> rates(k, 0.0);
  for (std::size_t i = 0; i < k; ++i) {
    const int u = order[i];
    const CVector h = channels.col(u);
    const double signal = std::max(0.0, h.dot(bc_covariances[static_cast<std::size_t>(u)] * h).real());
    double interference = sigma2_c;
    for (std::size_t j = i + 1; j < k; ++j) {
      interference += std::max(0.0, h.dot(bc_covariances[static_cast<std::size_t>(order[j])] * h).real());
    }
    rates[static_cast<std::size_t>(u)] = std::log2(1.0 + signal / interference);
  }
  return rates;
}

RatePoint ma_isac_point(const ScenarioConfig& scenario, const CommChannel& channels, double rho) {
  require_kind(scenario, ScenarioKind::DownlinkMa, "ma_isac_point");
  if (!(rho >= 0.0 && rho <= 1.0)) throw DomainError("ma_isac_point: rho must lie in [0, 1]");
  const auto& d = scenario.dims;
  const double p = scenario.power.p_total;
  const CMatrix r = scenario.target().r_corr;
  const CMatrix q_s = sr_optimal_covariance(r, rho * p, scenario.power.sigma2_s, d.l_frame, d.n_rx);

  RatePoint out;
  CMatrix q_c = CMatrix::Zero(d.m_tx, d.m_tx);
  const double comm_power = (1.0 - rho) * p;
  if (comm_power > 0.0) {
    const auto mac = sum_power_iwf(channels.h, comm_power, scenario.power.sigma2_c);
    out.cr = mac.sum_rate;
    for (const auto& q : mac.bc_covariances) q_c += q;
  }
  // The communication echo is a Gaussian nuisance: I(G; Y) over the full
  // transmit covariance minus the part attributable to the nuisance alone.
  const auto noise = NoiseModel::white(scenario.power.sigma2_s);
  const double with_both = sensing_mi(r, q_s + q_c, d.l_frame, d.n_rx, noise);
  const double nuisance = sensing_mi(r, q_c, d.l_frame, d.n_rx, noise);
  out.sr = std::max(0.0, with_both - nuisance) / d.l_frame;
  return out;
}

RatePoint ma_fdsac_point(const ScenarioConfig& scenario, const CommChannel& channels, const FdsacSplit& split) {
  require_kind(scenario, ScenarioKind::DownlinkMa, "ma_fdsac_point");
  split.validate();
  const double p = scenario.power.p_total;
  return {ma_band_comm_rate(scenario, channels, split.alpha, split.kappa * p),
          ma_band_sensing_rate(scenario, scenario.target().r_corr, 1.0 - split.alpha, (1.0 - split.kappa) * p)};
}

std::string format_param(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

RegionSweep reduce_sweep(std::span<const ErgodicEstimate> estimates, std::span<const std::string> labels) {
  if (estimates.size() != labels.size()) throw DomainError("reduce_sweep: label count mismatch");
  std::vector<RatePoint> means;
  means.reserve(estimates.size());
  for (const auto& e : estimates) means.push_back(e.mean);
  const auto pareto = pareto_indices(means);
  std::vector<RatePoint> frontier;
  for (std::size_t i : pareto) frontier.push_back(means[i]);

  RegionSweep out;
  out.region.convexified = true;
  for (std::size_t h : hull_indices(frontier)) {
    const std::size_t src = pareto[h];
    out.region.frontier.push_back(means[src]);
    out.points.push_back({means[src], estimates[src].std_error, labels[src]});
  }
  return out;
}

RegionSweep downlink_region_sweep(const ScenarioConfig& scenario, RegionMode mode) {
  scenario.validate();
  if (scenario.kind == ScenarioKind::Uplink) throw DomainError("downlink_region: uplink scenario");
  const bool sa = scenario.kind == ScenarioKind::DownlinkSa;
  const int trials = scenario.mc_trials;

  std::vector<std::string> labels;
  std::vector<ErgodicEstimate> est;

  if (mode == RegionMode::Isac) {
    if (sa) {
      labels.push_back("P_o");
      est.push_back(sa_isac_corner(scenario));
    } else {
      const auto rhos = unit_grid(scenario.rho_grid);
      for (double rho : rhos) labels.push_back("rho=" + format_param(rho));
      est = ergodic_average_sweep(
          scenario,
          [&](const CommChannel& ch) {
            std::vector<RatePoint> row;
            row.reserve(rhos.size());
            for (double rho : rhos) row.push_back(ma_isac_point(scenario, ch, rho));
            return row;
          },
          trials);
    }
    return reduce_sweep(est, labels);
  }

  const auto alphas = unit_grid(scenario.alpha_grid);
  const auto kappas = unit_grid(scenario.kappa_grid);
  std::vector<FdsacSplit> splits;
  for (double a : alphas) {
    for (double k : kappas) {
      splits.push_back({a, k});
      labels.push_back("alpha=" + format_param(a) + ";kappa=" + format_param(k));
    }
  }

  if (sa) {
    est = ergodic_average_sweep(
        scenario,
        [&](const CommChannel& ch) {
          std::vector<RatePoint> row;
          row.reserve(splits.size());
          for (const auto& s : splits) row.push_back(sa_fdsac_point(scenario, ch, s));
          return row;
        },
        trials);
    return reduce_sweep(est, labels);
  }

  // The MA sensing side does not depend on the channel draw; evaluate it once
  // per split and only average the communication side.
  const CMatrix r = scenario.target().r_corr;
  std::vector<double> sensing(splits.size());
  for (std::size_t i = 0; i < splits.size(); ++i) {
    sensing[i] = ma_band_sensing_rate(scenario, r, 1.0 - splits[i].alpha,
                                      (1.0 - splits[i].kappa) * scenario.power.p_total);
  }
  est = ergodic_average_sweep(
      scenario,
      [&](const CommChannel& ch) {
        std::vector<RatePoint> row;
        row.reserve(splits.size());
        // Splits with equal kappa / alpha share one IWF solve.
        std::map<double, double> by_budget;
        for (std::size_t i = 0; i < splits.size(); ++i) {
          const auto& sp = splits[i];
          double cr = 0.0;
          if (sp.alpha > 0.0 && sp.kappa > 0.0) {
            const double budget = sp.kappa * scenario.power.p_total / sp.alpha;
            auto it = by_budget.find(budget);
            if (it == by_budget.end()) it = by_budget.emplace(budget, ma_band_comm_rate(scenario, ch, 1.0, budget)).first;
            cr = sp.alpha * it->second;
          }
          row.push_back({cr, sensing[i]});
        }
        return row;
      },
      trials);
  return reduce_sweep(est, labels);
}

RateRegion downlink_region(const ScenarioConfig& scenario, RegionMode mode) {
  return downlink_region_sweep(scenario, mode).region;
}

}  // namespace isac_mi
