#pragma once

// Power allocation and covariance design.

#include <span>
#include <vector>

#include "isac_mi/model.hpp"

namespace isac_mi {

struct WaterFillResult {
  std::vector<double> allocations;
  double water_level = 0.0;
  int iterations = 0;
};

/// q_i = max(0, mu - noise / gains_i) with sum q_i = budget.
WaterFillResult water_fill(std::span<const double> gains, double budget, double noise);

/// Transmit covariance maximizing sensing MI under a trace budget: the
/// eigenvectors of R, with powers water-filled against lambda_i(R) L / sigma2_s.
CMatrix sr_optimal_covariance(const CMatrix& r_corr, double budget, double sigma2_s, int l_frame,
                              int n_rx);

struct DualMacSolution {
  std::vector<double> user_powers;
  double sum_rate = 0.0;
  std::vector<CMatrix> bc_covariances;
  /// DPC encoding order: encoding_order[0] is encoded first.
  std::vector<int> encoding_order;
  int iterations = 0;
  /// Objective after every accepted iterate, starting from the initial point.
  std::vector<double> objective_history;
};

struct IwfOptions {
  double tol = 1e-9;
  int max_iter = 2000;
  /// When false, bc_covariances and encoding_order are left empty.
  bool bc_transform = true;
};

class ConvergenceError : public IsacError {
 public:
  ConvergenceError(const std::string& what, std::vector<double> last_powers, double last_rate)
      : IsacError(what), last_powers_(std::move(last_powers)), last_rate_(last_rate) {}

  const std::vector<double>& last_powers() const { return last_powers_; }
  double last_rate() const { return last_rate_; }

 private:
  std::vector<double> last_powers_;
  double last_rate_;
};

/// Sum-rate optimal powers of the dual MAC, i.e. the maximizer of
/// log2 det(I + sigma^-2 sum_k p_k h_k h_k^H) over sum p_k <= budget, followed
/// by the transformation to BC covariances. Columns of `channels` are h_k.
///
/// Iterative water-filling with averaged updates; steps that would lower the
/// objective are replaced by a backtracking projected-gradient step. Stops once
/// the projected gradient in budget-normalized coordinates is below tol.
DualMacSolution sum_power_iwf(const CMatrix& channels, double budget, double sigma2_c,
                              IwfOptions options = {});

/// Decreasing channel norm; ties keep user index order.
std::vector<int> dpc_encoding_order(const CMatrix& channels);

struct BcTransform {
  std::vector<CMatrix> covariances;
  std::vector<int> encoding_order;
};

/// Maps dual-MAC powers to downlink covariances with identical per-user rates
/// under DPC in the returned encoding order.
BcTransform mac_to_bc_transform(const CMatrix& channels, std::span<const double> mac_powers,
                                double sigma2_c);

/// M x L waveform W with W W^H = L Q and equal power in every slot.
CMatrix synthesize_waveform(const CMatrix& q_cov, int l_frame);

/// Numerical rank of a PSD matrix (eigenvalues above 1e-12 of the largest).
int psd_rank(const CMatrix& a);

}  // namespace isac_mi
