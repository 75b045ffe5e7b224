#pragma once

// Closed-form mutual-information kernels.

#include <span>
#include <variant>
#include <vector>

#include "isac_mi/model.hpp"

namespace isac_mi {

struct WhiteNoise {
  double power = 1.0;
};

struct ColoredNoise {
  CMatrix cov;
};

/// Noise (or interference-plus-noise) seen by a receiver. White noise is
/// sigma^2 * I at whatever dimension the receiver has.
class NoiseModel {
 public:
  static NoiseModel white(double power);
  static NoiseModel colored(CMatrix cov);

  bool is_white() const { return std::holds_alternative<WhiteNoise>(model_); }
  double white_power() const;
  const CMatrix& colored_cov() const;

  /// Eigenvalues of the covariance at dimension n (ascending).
  RVector eigenvalues(int n) const;
  /// Covariance materialized at dimension n.
  CMatrix covariance(int n) const;

 private:
  explicit NoiseModel(std::variant<WhiteNoise, ColoredNoise> m) : model_(std::move(m)) {}
  std::variant<WhiteNoise, ColoredNoise> model_;
};

/// log2 det(I + Sigma^-1 H diag(p) H^H).
double comm_mi(const CMatrix& h, std::span<const double> user_powers, const NoiseModel& noise);

/// Per-user rates of an MMSE-SIC receiver. `order[i]` is the i-th decoded
/// user; it sees every user not yet decoded as interference. Rates are
/// returned indexed by user, not by decoding position.
std::vector<double> mmse_sic_user_rates(const CMatrix& h, std::span<const double> user_powers,
                                        const NoiseModel& noise, std::span<const int> order);

/// Sensing MI per frame (bits) of a probing signal with covariance q_cov over
/// `l_frame` slots received on `n_rx` antennas:
///   sum_i sum_j log2(1 + l_i / v_j)
/// with l_i the eigenvalues of L R^1/2 Q R^1/2 and v_j those of the noise.
double sensing_mi(const CMatrix& r_corr, const CMatrix& q_cov, int l_frame, int n_rx,
                  const NoiseModel& noise);

/// trace(R Q): per-slot, per-antenna echo power of an equal-slot-power probe.
double sensing_interference_power(const CMatrix& r_corr, const CMatrix& q_cov);

/// Hermitian PSD square root via eigen-decomposition (negative eigenvalues
/// from round-off are clamped to zero).
CMatrix psd_sqrt(const CMatrix& a);

}  // namespace isac_mi
