#include "isac_mi/model.hpp"

#include <cmath>
#include <string>

namespace isac_mi {

std::string_view to_string(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::DownlinkSa:
      return "downlink-sa";
    case ScenarioKind::DownlinkMa:
      return "downlink-ma";
    case ScenarioKind::Uplink:
      return "uplink";
  }
  return "unknown";
}

ScenarioKind parse_scenario_kind(std::string_view name) {
  if (name == "downlink-sa") return ScenarioKind::DownlinkSa;
  if (name == "downlink-ma") return ScenarioKind::DownlinkMa;
  if (name == "uplink") return ScenarioKind::Uplink;
  throw ConfigError("unknown scenario kind '" + std::string(name) + "'");
}

void SystemDims::validate() const {
  if (m_tx < 1 || n_rx < 1 || k_users < 1 || l_frame < 1) {
    throw ConfigError("dims: every antenna count and the frame length must be >= 1");
  }
  if (l_frame < m_tx) {
    throw ConfigError("dims: l_frame must be >= m_tx");
  }
}

void PowerBudget::validate() const {
  if (!(p_total >= 0.0) || !std::isfinite(p_total)) {
    throw ConfigError("power: p_total must be finite and >= 0");
  }
  if (!(sigma2_c > 0.0) || !(sigma2_s > 0.0)) {
    throw ConfigError("power: noise powers must be > 0");
  }
}

void TargetResponseStats::validate() const {
  const auto m = r_corr.rows();
  if (m < 1 || r_corr.cols() != m) {
    throw DomainError("target: correlation matrix must be square and nonempty");
  }
  if ((r_corr - r_corr.adjoint()).cwiseAbs().maxCoeff() > 1e-12) {
    throw DomainError("target: correlation matrix is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(r_corr, Eigen::EigenvaluesOnly);
  if (eig.eigenvalues().minCoeff() < -1e-12) {
    throw DomainError("target: correlation matrix is not PSD");
  }
  if (std::abs(r_corr.trace().real() - static_cast<double>(m)) > 1e-9) {
    throw DomainError("target: correlation trace must equal its dimension");
  }
}

void CommChannel::validate(const SystemDims& dims) const {
  const auto expected_rows = direction == LinkDirection::Downlink ? dims.m_tx : dims.n_rx;
  if (h.rows() != expected_rows || h.cols() != dims.k_users) {
    throw DomainError("channel: dimensions inconsistent with system dims");
  }
  if (!h.allFinite()) {
    throw DomainError("channel: non-finite entry");
  }
}

void RateRegion::validate() const {
  for (const auto& p : frontier) {
    if (!(p.cr >= 0.0) || !(p.sr >= 0.0)) {
      throw DomainError("region: negative rate on frontier");
    }
  }
  for (std::size_t i = 1; i < frontier.size(); ++i) {
    if (!(frontier[i].cr > frontier[i - 1].cr) || !(frontier[i].sr < frontier[i - 1].sr)) {
      throw DomainError("region: frontier not strictly ordered");
    }
  }
}

void ScenarioConfig::validate() const {
  dims.validate();
  power.validate();
  if (kind == ScenarioKind::DownlinkSa && dims.m_tx != 1) {
    throw ConfigError("downlink-sa requires m_tx = 1");
  }
  if (kind == ScenarioKind::DownlinkSa && dims.k_users != 2) {
    throw ConfigError("downlink-sa serves exactly two users (k_users = 2)");
  }
  if (!(target_corr_coeff >= 0.0 && target_corr_coeff < 1.0)) {
    throw ConfigError("target: correlation coefficient must lie in [0, 1)");
  }
  if (rho_grid < 2 || alpha_grid < 2 || kappa_grid < 2) {
    throw ConfigError("grid resolutions must be >= 2");
  }
  if (mc_trials < 1) {
    throw ConfigError("mc_trials must be >= 1");
  }
  for (std::size_t i = 0; i < snr_sweep.size(); ++i) {
    if (!(snr_sweep[i] > 0.0) || !std::isfinite(snr_sweep[i])) {
      throw ConfigError("snr_sweep: powers must be finite and positive");
    }
    if (i > 0 && !(snr_sweep[i] > snr_sweep[i - 1])) {
      throw ConfigError("snr_sweep must be strictly increasing");
    }
  }
  for (double f : {curve_rho, curve_alpha, curve_kappa}) {
    if (!(f >= 0.0 && f <= 1.0)) {
      throw ConfigError("curve operating fractions must lie in [0, 1]");
    }
  }
}

TargetResponseStats ScenarioConfig::target() const {
  return exp_corr_matrix(dims.m_tx, target_corr_coeff);
}

ScenarioConfig default_scenario(ScenarioKind kind) {
  ScenarioConfig cfg;
  cfg.kind = kind;
  cfg.dims = SystemDims{4, 4, 2, 16};
  if (kind == ScenarioKind::DownlinkSa) cfg.dims.m_tx = 1;
  // Reference transmit power: 10 dB above the unit noise floor. In the uplink
  // every user and the sensing probe each transmit this power.
  cfg.power = PowerBudget{10.0, 1.0, 1.0};
  cfg.target_corr_coeff = 0.5;
  cfg.rho_grid = cfg.alpha_grid = cfg.kappa_grid = 41;
  cfg.mc_trials = 500;
  cfg.seed = 20240001;
  for (int db = -10; db <= 30; db += 2) {
    cfg.snr_sweep.push_back(cfg.power.sigma2_c * db_to_linear(db));
  }
  return cfg;
}

TargetResponseStats exp_corr_matrix(int m, double coeff) {
  if (m < 1) throw DomainError("exp_corr_matrix: m must be >= 1");
  if (!(coeff >= 0.0 && coeff < 1.0)) {
    throw DomainError("exp_corr_matrix: coefficient must lie in [0, 1)");
  }
  CMatrix r(m, m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      r(i, j) = std::pow(coeff, std::abs(i - j));
    }
  }
  r *= static_cast<double>(m) / r.trace().real();
  return TargetResponseStats{r};
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

double linear_to_db(double linear) { return 10.0 * std::log10(linear); }

std::vector<double> unit_grid(int n) {
  if (n < 2) throw DomainError("unit_grid: need at least two points");
  std::vector<double> g(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) g[static_cast<std::size_t>(i)] = static_cast<double>(i) / (n - 1);
  return g;
}

}  // namespace isac_mi
