#include "isac_mi/uplink.hpp"

#include "isac_mi/alloc.hpp"
#include "isac_mi/mc.hpp"
#include "isac_mi/mi_core.hpp"
#include "isac_mi/region.hpp"

namespace isac_mi {
namespace {

void require_uplink(const ScenarioConfig& scenario, const char* op) {
  if (scenario.kind != ScenarioKind::Uplink) {
    throw DomainError(std::string(op) + ": scenario kind must be uplink");
  }
}

double fdsac_sensing_rate(const ScenarioConfig& s, const CMatrix& r, const CMatrix& q, double alpha) {
  const double share = 1.0 - alpha;
  if (share <= 0.0) return 0.0;
  const auto& d = s.dims;
  return share * sensing_mi(r, q, d.l_frame, d.n_rx, NoiseModel::white(share * s.power.sigma2_s)) / d.l_frame;
}

double fdsac_comm_rate(const ScenarioConfig& s, const CMatrix& h, std::span<const double> powers, double alpha) {
  if (alpha <= 0.0) return 0.0;
  return alpha * comm_mi(h, powers, NoiseModel::white(alpha * s.power.sigma2_c));
}

}  // namespace

RatePoint uplink_sic_point(const CMatrix& channels, std::span<const double> user_powers, const CMatrix& q_sense,
                           SicOrder order, const ScenarioConfig& scenario) {
  const auto& d = scenario.dims;
  const CMatrix r = scenario.target().r_corr;
  if (channels.rows() != d.n_rx) throw DomainError("uplink_sic_point: channel rows must equal n_rx");
  RatePoint out;
  if (order == SicOrder::SensingCentric) {
    const double beta = sensing_interference_power(r, q_sense);
    out.cr = comm_mi(channels, user_powers, NoiseModel::white(scenario.power.sigma2_c + beta));
    out.sr = sensing_mi(r, q_sense, d.l_frame, d.n_rx, NoiseModel::white(scenario.power.sigma2_s)) / d.l_frame;
  } else {
    out.cr = comm_mi(channels, user_powers, NoiseModel::white(scenario.power.sigma2_c));
    RVector amp(channels.cols());
    for (Eigen::Index k = 0; k < channels.cols(); ++k) amp(k) = user_powers[static_cast<std::size_t>(k)];
    const CMatrix cov = scenario.power.sigma2_s * CMatrix::Identity(d.n_rx, d.n_rx) +
                        channels * amp.asDiagonal() * channels.adjoint();
    out.sr = sensing_mi(r, q_sense, d.l_frame, d.n_rx, NoiseModel::colored(cov)) / d.l_frame;
  }
  return out;
}

RatePoint time_share(const RatePoint& p_s, const RatePoint& p_c, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("time_share: probability must lie in [0, 1]");
  return {p * p_s.cr + (1.0 - p) * p_c.cr, p * p_s.sr + (1.0 - p) * p_c.sr};
}

std::vector<double> uplink_user_powers(const ScenarioConfig& scenario) {
  return std::vector<double>(static_cast<std::size_t>(scenario.dims.k_users), scenario.power.p_total);
}

CMatrix uplink_probe_covariance(const ScenarioConfig& scenario) {
  const auto& d = scenario.dims;
  return sr_optimal_covariance(scenario.target().r_corr, scenario.power.p_total, scenario.power.sigma2_s,
                               d.l_frame, d.n_rx);
}

UplinkCorners uplink_corners(const ScenarioConfig& scenario) {
  require_uplink(scenario, "uplink_corners");
  scenario.validate();
  const auto powers = uplink_user_powers(scenario);
  const CMatrix q = uplink_probe_covariance(scenario);
  const auto est = ergodic_average_sweep(
      scenario,
      [&](const CommChannel& ch) {
        return std::vector<RatePoint>{
            uplink_sic_point(ch.h, powers, q, SicOrder::SensingCentric, scenario),
            uplink_sic_point(ch.h, powers, q, SicOrder::CommCentric, scenario)};
      },
      scenario.mc_trials);
  return {est[0], est[1]};
}

RegionSweep uplink_isac_region_sweep(const ScenarioConfig& scenario) {
  const auto corners = uplink_corners(scenario);
  std::vector<ErgodicEstimate> segment;
  std::vector<std::string> labels;
  // p = 1 (P_s, largest sr) first so the frontier comes out in cr order.
  for (int i = kTimeShareSamples - 1; i >= 0; --i) {
    const double p = static_cast<double>(i) / (kTimeShareSamples - 1);
    segment.push_back({time_share(corners.p_s.mean, corners.p_c.mean, p),
                       time_share(corners.p_s.std_error, corners.p_c.std_error, p)});
    labels.push_back(i == kTimeShareSamples - 1 ? "P_s" : i == 0 ? "P_c" : "p=" + format_param(p));
  }
  std::vector<RatePoint> means;
  for (const auto& e : segment) means.push_back(e.mean);

  // The segment is convex by construction; only exact dominance can remove points.
  RegionSweep out;
  out.region.convexified = true;
  for (std::size_t i : pareto_indices(means)) {
    out.region.frontier.push_back(means[i]);
    out.points.push_back({means[i], segment[i].std_error, labels[i]});
  }
  return out;
}

RateRegion uplink_isac_region(const ScenarioConfig& scenario) { return uplink_isac_region_sweep(scenario).region; }

RatePoint uplink_fdsac_point(const ScenarioConfig& scenario, const CommChannel& channels, double alpha) {
  require_uplink(scenario, "uplink_fdsac_point");
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw DomainError("uplink_fdsac_point: alpha must lie in [0, 1]");
  const auto powers = uplink_user_powers(scenario);
  return {fdsac_comm_rate(scenario, channels.h, powers, alpha),
          fdsac_sensing_rate(scenario, scenario.target().r_corr, uplink_probe_covariance(scenario), alpha)};
}

RegionSweep uplink_fdsac_region_sweep(const ScenarioConfig& scenario) {
  require_uplink(scenario, "uplink_fdsac_region");
  scenario.validate();
  const auto alphas = unit_grid(scenario.alpha_grid);
  const auto powers = uplink_user_powers(scenario);
  const CMatrix r = scenario.target().r_corr;
  const CMatrix q = uplink_probe_covariance(scenario);

  std::vector<std::string> labels;
  std::vector<double> sensing;
  for (double a : alphas) {
    labels.push_back("alpha=" + format_param(a));
    sensing.push_back(fdsac_sensing_rate(scenario, r, q, a));
  }
  const auto est = ergodic_average_sweep(
      scenario,
      [&](const CommChannel& ch) {
        std::vector<RatePoint> row;
        row.reserve(alphas.size());
        for (std::size_t i = 0; i < alphas.size(); ++i) {
          row.push_back({fdsac_comm_rate(scenario, ch.h, powers, alphas[i]), sensing[i]});
        }
        return row;
      },
      scenario.mc_trials);
  return reduce_sweep(est, labels);
}

}  // namespace isac_mi
