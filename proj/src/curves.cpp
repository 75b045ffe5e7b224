#include "isac_mi/curves.hpp"

#include <algorithm>

#include "isac_mi/downlink.hpp"
#include "isac_mi/mc.hpp"
#include "isac_mi/uplink.hpp"

namespace isac_mi {
namespace {

std::pair<RatePoint, RatePoint> evaluate_at(const ScenarioConfig& s, const CommChannel& ch) {
  const FdsacSplit split{s.curve_alpha, s.curve_kappa};
  switch (s.kind) {
    case ScenarioKind::DownlinkSa:
      return {sa_isac_corner(s, ch), sa_fdsac_point(s, ch, split)};
    case ScenarioKind::DownlinkMa:
      return {ma_isac_point(s, ch, s.curve_rho), ma_fdsac_point(s, ch, split)};
    case ScenarioKind::Uplink: {
      const auto powers = uplink_user_powers(s);
      const CMatrix q = uplink_probe_covariance(s);
      const RatePoint p_s = uplink_sic_point(ch.h, powers, q, SicOrder::SensingCentric, s);
      const RatePoint p_c = uplink_sic_point(ch.h, powers, q, SicOrder::CommCentric, s);
      return {RatePoint{p_c.cr, p_s.sr}, uplink_fdsac_point(s, ch, s.curve_alpha)};
    }
  }
  throw DomainError("unknown scenario kind");
}

}  // namespace

std::vector<CurveRow> rate_curves(const ScenarioConfig& scenario, std::span<const double> powers) {
  scenario.validate();
  if (powers.empty()) throw DomainError("rate_curves: no powers");
  for (std::size_t i = 0; i < powers.size(); ++i) {
    if (!(powers[i] > 0.0) || (i > 0 && !(powers[i] > powers[i - 1]))) {
      throw DomainError("rate_curves: powers must be positive and strictly increasing");
    }
  }
  // In the uplink the user powers and the probe power both follow `power`;
  // ISAC CR at P_c ignores the probe and ISAC SR at P_s ignores the users, and
  // each FDSAC coordinate only sees its own power, so this is the same as
  // sweeping one functionality with the other held fixed.
  std::vector<ScenarioConfig> at_power;
  at_power.reserve(powers.size());
  for (double p : powers) {
    ScenarioConfig s = scenario;
    s.power.p_total = p;
    s.snr_sweep.clear();
    at_power.push_back(std::move(s));
  }

  const auto est = ergodic_average_sweep(
      scenario,
      [&](const CommChannel& ch) {
        std::vector<RatePoint> row;
        row.reserve(2 * at_power.size());
        for (const auto& s : at_power) {
          const auto [isac, fdsac] = evaluate_at(s, ch);
          row.push_back(isac);
          row.push_back(fdsac);
        }
        return row;
      },
      scenario.mc_trials);

  std::vector<CurveRow> rows;
  for (std::size_t i = 0; i < powers.size(); ++i) {
    rows.push_back({powers[i], est[2 * i].mean, est[2 * i + 1].mean});
  }
  return rows;
}

SlopePair analytic_slopes(const ScenarioConfig& s, bool isac) {
  const double m = s.dims.m_tx;
  const double n_over_l = static_cast<double>(s.dims.n_rx) / s.dims.l_frame;
  const double alpha = s.curve_alpha;
  SlopePair out;
  switch (s.kind) {
    case ScenarioKind::DownlinkSa:
      out.cr_slope.analytic = isac ? 1.0 : (s.curve_kappa > 0.0 ? alpha : 0.0);
      out.sr_slope.analytic = isac ? n_over_l : (s.curve_kappa < 1.0 ? (1.0 - alpha) * n_over_l : 0.0);
      break;
    case ScenarioKind::DownlinkMa: {
      const double dof = std::min(s.dims.m_tx, s.dims.k_users);
      if (isac) {
        out.cr_slope.analytic = s.curve_rho < 1.0 ? dof : 0.0;
        // Full-rank probe minus the rank-min(M, K) communication nuisance.
        const double nuisance = s.curve_rho < 1.0 ? dof : 0.0;
        out.sr_slope.analytic = s.curve_rho > 0.0 ? n_over_l * (m - nuisance) : 0.0;
      } else {
        out.cr_slope.analytic = s.curve_kappa > 0.0 ? alpha * dof : 0.0;
        out.sr_slope.analytic = s.curve_kappa < 1.0 ? (1.0 - alpha) * n_over_l * m : 0.0;
      }
      break;
    }
    case ScenarioKind::Uplink: {
      const double dof = std::min(s.dims.n_rx, s.dims.k_users);
      out.cr_slope.analytic = isac ? dof : alpha * dof;
      out.sr_slope.analytic = isac ? n_over_l * m : (1.0 - alpha) * n_over_l * m;
      break;
    }
  }
  return out;
}

SlopeReport slope_report(const ScenarioConfig& scenario) {
  SlopeReport rep;
  const std::vector<double> powers{rep.power_lo, rep.power_hi};
  const auto rows = rate_curves(scenario, powers);

  auto slope = [&](auto pick, double analytic) {
    const std::vector<PowerRate> samples{{rows[0].power, pick(rows[0])}, {rows[1].power, pick(rows[1])}};
    return hisnr_slope(samples, analytic);
  };
  const auto ref_isac = analytic_slopes(scenario, true);
  const auto ref_fdsac = analytic_slopes(scenario, false);
  rep.isac.cr_slope = slope([](const CurveRow& r) { return r.isac.cr; }, ref_isac.cr_slope.analytic);
  rep.isac.sr_slope = slope([](const CurveRow& r) { return r.isac.sr; }, ref_isac.sr_slope.analytic);
  rep.fdsac.cr_slope = slope([](const CurveRow& r) { return r.fdsac.cr; }, ref_fdsac.cr_slope.analytic);
  rep.fdsac.sr_slope = slope([](const CurveRow& r) { return r.fdsac.sr; }, ref_fdsac.sr_slope.analytic);
  return rep;
}

}  // namespace isac_mi
