#pragma once

// Shared domain types and scenario configuration.
//
// Conventions used across the library:
//   * every power is linear (dB only appears at the CLI boundary);
//   * rates are bits/s/Hz; sensing MI per frame is divided by the frame
//     length before it is reported as a sensing rate.

#include <complex>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "isac_mi/errors.hpp"

namespace isac_mi {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

enum class ScenarioKind { DownlinkSa, DownlinkMa, Uplink };

std::string_view to_string(ScenarioKind kind);
/// Parses "downlink-sa", "downlink-ma" or "uplink"; throws ConfigError otherwise.
ScenarioKind parse_scenario_kind(std::string_view name);

/// Antenna counts and frame length (M, N, K, L).
struct SystemDims {
  int m_tx = 1;
  int n_rx = 1;
  int k_users = 1;
  int l_frame = 1;

  void validate() const;
};

struct PowerBudget {
  double p_total = 0.0;
  double sigma2_c = 1.0;
  double sigma2_s = 1.0;

  void validate() const;
};

/// Correlation R of the rows of the target response G.
struct TargetResponseStats {
  CMatrix r_corr;

  int size() const { return static_cast<int>(r_corr.rows()); }
  /// Hermitian within 1e-12, eigenvalues >= -1e-12, trace within 1e-9 of M.
  void validate() const;
};

enum class LinkDirection { Downlink, Uplink };

/// Communication channel with one column per user.
///
/// Downlink: M x K, column k is h_k seen by user k as y_k = h_k^H x + n.
/// Uplink:   N x K, column k is the channel from user k to the BS array.
struct CommChannel {
  LinkDirection direction = LinkDirection::Downlink;
  CMatrix h;

  int users() const { return static_cast<int>(h.cols()); }
  void validate(const SystemDims& dims) const;
};

struct RatePoint {
  double cr = 0.0;
  double sr = 0.0;

  friend bool operator==(const RatePoint&, const RatePoint&) = default;
};

/// Pareto frontier of an achievable region. The region itself is the set of
/// nonnegative pairs dominated by the frontier (or by its convex combinations
/// once `convexified` is set).
struct RateRegion {
  std::vector<RatePoint> frontier;
  bool convexified = false;

  /// Strictly increasing cr, strictly decreasing sr, no dominated points.
  void validate() const;
};

struct SlopeEstimate {
  double numeric = 0.0;
  double analytic = 0.0;
  double abs_error = 0.0;
};

struct ScenarioConfig {
  ScenarioKind kind = ScenarioKind::DownlinkMa;
  SystemDims dims;
  PowerBudget power;
  double target_corr_coeff = 0.5;
  int rho_grid = 41;
  int alpha_grid = 41;
  int kappa_grid = 41;
  int mc_trials = 500;
  std::uint64_t seed = 20240001;
  /// Linear powers for the rate-vs-SNR curves.
  std::vector<double> snr_sweep;
  /// Operating point of the rate-vs-SNR curves and slopes: ISAC sensing
  /// power fraction, FDSAC spectrum and power fractions.
  double curve_rho = 0.3;
  double curve_alpha = 0.7;
  double curve_kappa = 0.2;

  void validate() const;
  TargetResponseStats target() const;
};

ScenarioConfig default_scenario(ScenarioKind kind);

/// Exponential correlation: entry (i, j) = coeff^|i-j|, scaled to trace m.
TargetResponseStats exp_corr_matrix(int m, double coeff);

double db_to_linear(double db);
double linear_to_db(double linear);

/// Evenly spaced grid of `n` points on [0, 1].
std::vector<double> unit_grid(int n);

}  // namespace isac_mi
