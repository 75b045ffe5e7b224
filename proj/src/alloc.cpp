#include "isac_mi/alloc.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <limits>
#include <numeric>

namespace isac_mi {
namespace {

/// Euclidean projection onto the probability simplex.
Eigen::VectorXd project_simplex(const Eigen::VectorXd& v) {
  const auto n = v.size();
  std::vector<double> u(v.data(), v.data() + n);
  std::sort(u.begin(), u.end(), std::greater<>());
  double cumsum = 0.0;
  double theta = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    cumsum += u[static_cast<std::size_t>(j)];
    const double t = (cumsum - 1.0) / static_cast<double>(j + 1);
    if (u[static_cast<std::size_t>(j)] - t > 0.0) theta = t;
  }
  return (v.array() - theta).cwiseMax(0.0);
}

/// Noise-normalized dual-MAC objective in K-dimensional form:
/// log2 det(I_K + G diag(p)) with G = H^H H / sigma^2.
class MacObjective {
 public:
  struct Point {
    double value = 0.0;
    /// d/dp_k in bits: [(I + G D)^-1 G]_kk / ln 2.
    Eigen::VectorXd gradient;
    /// Gain of user k against unit noise plus every other user's signal.
    Eigen::VectorXd gains;
  };

  explicit MacObjective(CMatrix gram) : gram_(std::move(gram)), k_(gram_.rows()) {}

  double value(const Eigen::VectorXd& p) const {
    const CMatrix a = CMatrix::Identity(k_, k_) + gram_ * p.asDiagonal();
    // det(I + G D) is real and >= 1.
    return std::log2(std::max(a.partialPivLu().determinant().real(), 1.0));
  }

  Point evaluate(const Eigen::VectorXd& p) const {
    const CMatrix a = CMatrix::Identity(k_, k_) + gram_ * p.asDiagonal();
    const Eigen::PartialPivLU<CMatrix> lu(a);
    const CMatrix s = lu.solve(gram_);
    Point out;
    out.value = std::log2(std::max(lu.determinant().real(), 1.0));
    const Eigen::VectorXd b = s.diagonal().real().cwiseMax(0.0);
    out.gradient = b / std::numbers::ln2;
    // Removing user k's own term: a_k = b_k / (1 - p_k b_k).
    out.gains.resize(k_);
    for (Eigen::Index k = 0; k < k_; ++k) out.gains(k) = b(k) / std::max(1.0 - p(k) * b(k), 1e-300);
    return out;
  }

 private:
  CMatrix gram_;
  Eigen::Index k_;
};

}  // namespace

WaterFillResult water_fill(std::span<const double> gains, double budget, double noise) {
  if (!(budget >= 0.0) || !std::isfinite(budget)) throw DomainError("water_fill: budget must be >= 0");
  if (!(noise > 0.0)) throw DomainError("water_fill: noise must be > 0");
  if (gains.empty()) throw DomainError("water_fill: no channels");
  std::vector<double> floor(gains.size());
  for (std::size_t i = 0; i < gains.size(); ++i) {
    if (!(gains[i] > 0.0) || !std::isfinite(gains[i])) {
      throw DomainError("water_fill: gains must be finite and > 0");
    }
    floor[i] = noise / gains[i];
  }

  WaterFillResult res;
  const double lo0 = *std::min_element(floor.begin(), floor.end());
  if (budget == 0.0) {
    res.allocations.assign(gains.size(), 0.0);
    res.water_level = lo0;
    return res;
  }

  // Fill the k lowest floors for k = n, n-1, ...; the first level that
  // clears its own k-th floor fixes the active set.
  std::vector<double> sorted = floor;
  std::sort(sorted.begin(), sorted.end());
  double prefix = std::accumulate(sorted.begin(), sorted.end(), 0.0);
  double mu = lo0;
  for (std::size_t k = sorted.size(); k >= 1; --k) {
    ++res.iterations;
    mu = (budget + prefix) / static_cast<double>(k);
    if (mu > sorted[k - 1] || k == 1) break;
    prefix -= sorted[k - 1];
  }

  res.water_level = mu;
  res.allocations.resize(gains.size());
  for (std::size_t i = 0; i < floor.size(); ++i) res.allocations[i] = std::max(0.0, mu - floor[i]);
  return res;
}

CMatrix sr_optimal_covariance(const CMatrix& r_corr, double budget, double sigma2_s, int l_frame,
                              [[maybe_unused]] int n_rx) {
  if (!(budget >= 0.0)) throw DomainError("sr_optimal_covariance: budget must be >= 0");
  if (!(sigma2_s > 0.0) || l_frame < 1) throw DomainError("sr_optimal_covariance: bad noise or frame");
  const auto m = r_corr.rows();
  if (budget == 0.0) return CMatrix::Zero(m, m);

  Eigen::SelfAdjointEigenSolver<CMatrix> eig(r_corr);
  const RVector& lambda = eig.eigenvalues();
  const double cutoff = 1e-12 * std::max(lambda.maxCoeff(), 0.0);
  std::vector<double> gains;
  std::vector<Eigen::Index> modes;
  for (Eigen::Index i = 0; i < m; ++i) {
    if (lambda(i) > cutoff) {
      gains.push_back(lambda(i) * l_frame / sigma2_s);
      modes.push_back(i);
    }
  }
  if (gains.empty()) throw DomainError("sr_optimal_covariance: R is zero");
  const auto wf = water_fill(gains, budget, 1.0);

  RVector q = RVector::Zero(m);
  for (std::size_t i = 0; i < modes.size(); ++i) q(modes[i]) = wf.allocations[i];
  const CMatrix& u = eig.eigenvectors();
  CMatrix out = u * q.asDiagonal() * u.adjoint();
  return 0.5 * (out + out.adjoint());
}

std::vector<int> dpc_encoding_order(const CMatrix& channels) {
  std::vector<int> order(static_cast<std::size_t>(channels.cols()));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return channels.col(a).squaredNorm() > channels.col(b).squaredNorm();
  });
  return order;
}

DualMacSolution sum_power_iwf(const CMatrix& channels, double budget, double sigma2_c,
                              IwfOptions options) {
  if (!(budget >= 0.0) || !std::isfinite(budget)) throw DomainError("sum_power_iwf: budget must be >= 0");
  if (!(sigma2_c > 0.0)) throw DomainError("sum_power_iwf: sigma2_c must be > 0");
  if (!(options.tol > 0.0) || options.max_iter < 1) throw DomainError("sum_power_iwf: bad options");
  const auto k_all = channels.cols();
  if (k_all < 1) throw DomainError("sum_power_iwf: no users");

  DualMacSolution sol;
  sol.user_powers.assign(static_cast<std::size_t>(k_all), 0.0);

  // Users with a null channel never receive power.
  std::vector<Eigen::Index> users;
  for (Eigen::Index k = 0; k < k_all; ++k) {
    if (channels.col(k).squaredNorm() > 0.0) users.push_back(k);
  }

  if (budget > 0.0 && !users.empty()) {
    const auto k = static_cast<Eigen::Index>(users.size());
    CMatrix h(channels.rows(), k);
    for (Eigen::Index i = 0; i < k; ++i) h.col(i) = channels.col(users[static_cast<std::size_t>(i)]);
    const MacObjective objective(h.adjoint() * h / sigma2_c);

    Eigen::VectorXd p = Eigen::VectorXd::Constant(k, budget / static_cast<double>(k));
    MacObjective::Point cur = objective.evaluate(p);
    double f = cur.value;
    sol.objective_history.push_back(f);
    const double kd = static_cast<double>(k);
    std::vector<double> pos_gains;
    std::vector<Eigen::Index> pos_idx;

    bool converged = false;
    for (int it = 0; it < options.max_iter; ++it) {
      const Eigen::VectorXd x = p / budget;
      const Eigen::VectorXd grad_x = budget * cur.gradient;
      const double stationarity = (x - project_simplex(x + grad_x)).norm();
      if (stationarity <= options.tol) {
        converged = true;
        break;
      }
      ++sol.iterations;

      Eigen::VectorXd wf_p = Eigen::VectorXd::Zero(k);
      pos_gains.clear();
      pos_idx.clear();
      for (Eigen::Index i = 0; i < k; ++i) {
        if (cur.gains(i) > 0.0) {
          pos_gains.push_back(cur.gains(i));
          pos_idx.push_back(i);
        }
      }
      if (!pos_gains.empty()) {
        const auto wf = water_fill(pos_gains, budget, 1.0);
        for (std::size_t i = 0; i < pos_idx.size(); ++i) wf_p(pos_idx[i]) = wf.allocations[i];
      }
      Eigen::VectorXd candidate = wf_p / kd + p * ((kd - 1.0) / kd);
      MacObjective::Point next = objective.evaluate(candidate);

      const double slack = 8.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(f));
      if (!(next.value >= f - slack)) {
        // Safeguard: backtracking projected-gradient ascent in normalized coordinates.
        double step = 1.0;
        bool improved = false;
        for (int bt = 0; bt < 60; ++bt, step *= 0.5) {
          const Eigen::VectorXd pt = budget * project_simplex(x + step * grad_x);
          if (objective.value(pt) > f) {
            candidate = pt;
            next = objective.evaluate(pt);
            improved = true;
            break;
          }
        }
        if (!improved) {
          // No ascent direction is numerically resolvable: stationary to machine precision.
          converged = true;
          break;
        }
      }
      p = candidate;
      cur = std::move(next);
      f = cur.value;
      sol.objective_history.push_back(f);
    }

    std::vector<double> last(static_cast<std::size_t>(k_all), 0.0);
    for (Eigen::Index i = 0; i < k; ++i) last[static_cast<std::size_t>(users[static_cast<std::size_t>(i)])] = p(i);
    if (!converged) {
      throw ConvergenceError("sum_power_iwf: no convergence within max_iter", last, f);
    }
    // Renormalize away the last few ulps so the budget invariant is exact.
    const double total = std::accumulate(last.begin(), last.end(), 0.0);
    if (total > 0.0) {
      for (double& v : last) v *= budget / total;
    }
    sol.user_powers = std::move(last);
    sol.sum_rate = f;
  } else {
    sol.objective_history.push_back(0.0);
  }

  if (options.bc_transform) {
    auto bc = mac_to_bc_transform(channels, sol.user_powers, sigma2_c);
    sol.bc_covariances = std::move(bc.covariances);
    sol.encoding_order = std::move(bc.encoding_order);
  }
  return sol;
}

BcTransform mac_to_bc_transform(const CMatrix& channels, std::span<const double> mac_powers,
                                double sigma2_c) {
  const auto m = channels.rows();
  const auto k = channels.cols();
  if (static_cast<Eigen::Index>(mac_powers.size()) != k) throw DomainError("mac_to_bc: power count mismatch");
  if (!(sigma2_c > 0.0)) throw DomainError("mac_to_bc: sigma2_c must be > 0");
  for (double p : mac_powers) {
    if (!(p >= 0.0)) throw DomainError("mac_to_bc: powers must be >= 0");
  }

  BcTransform out;
  out.encoding_order = dpc_encoding_order(channels);
  out.covariances.assign(static_cast<std::size_t>(k), CMatrix::Zero(m, m));

  // The dual MAC decodes in the reverse of the DPC encoding order; the user
  // decoded first sees every later-decoded user as interference.
  std::vector<int> decode(out.encoding_order.rbegin(), out.encoding_order.rend());
  std::vector<CVector> beams(static_cast<std::size_t>(k), CVector::Zero(m));
  std::vector<double> sinr(static_cast<std::size_t>(k), 0.0);

  for (std::size_t i = 0; i < decode.size(); ++i) {
    const int u = decode[i];
    const double p = mac_powers[static_cast<std::size_t>(u)];
    if (p == 0.0) continue;
    CMatrix cov = sigma2_c * CMatrix::Identity(m, m);
    for (std::size_t j = i + 1; j < decode.size(); ++j) {
      const int v = decode[j];
      cov += mac_powers[static_cast<std::size_t>(v)] * channels.col(v) * channels.col(v).adjoint();
    }
    const CVector filt = cov.ldlt().solve(channels.col(u));
    const double norm = filt.norm();
    if (norm == 0.0) continue;
    beams[static_cast<std::size_t>(u)] = filt / norm;
    sinr[static_cast<std::size_t>(u)] = p * channels.col(u).dot(filt).real();
  }

  // BC user decode[i] sees interference from decode[0..i-1]; solve powers in
  // that order so each step only needs already-known powers.
  std::vector<double> q(static_cast<std::size_t>(k), 0.0);
  for (std::size_t i = 0; i < decode.size(); ++i) {
    const int u = decode[i];
    const auto us = static_cast<std::size_t>(u);
    if (sinr[us] <= 0.0) continue;
    const CVector& hu = channels.col(u);
    double interference = sigma2_c;
    for (std::size_t j = 0; j < i; ++j) {
      const auto vs = static_cast<std::size_t>(decode[j]);
      interference += q[vs] * std::norm(hu.dot(beams[vs]));
    }
    const double gain = std::norm(hu.dot(beams[us]));
    if (gain <= 0.0) continue;
    q[us] = sinr[us] * interference / gain;
    out.covariances[us] = q[us] * beams[us] * beams[us].adjoint();
  }
  return out;
}

int psd_rank(const CMatrix& a) {
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(a, Eigen::EigenvaluesOnly);
  const double top = eig.eigenvalues().cwiseAbs().maxCoeff();
  if (!(top > 0.0)) return 0;
  int r = 0;
  for (Eigen::Index i = 0; i < eig.eigenvalues().size(); ++i) {
    if (eig.eigenvalues()(i) > 1e-12 * top) ++r;
  }
  return r;
}

CMatrix synthesize_waveform(const CMatrix& q_cov, int l_frame) {
  const auto m = q_cov.rows();
  if (q_cov.cols() != m) throw DomainError("synthesize_waveform: Q must be square");
  if (l_frame < 1) throw DomainError("synthesize_waveform: l_frame must be >= 1");
  CMatrix herm = 0.5 * (q_cov + q_cov.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(herm);
  const RVector& d = eig.eigenvalues();
  if (d.minCoeff() < -1e-10) throw DomainError("synthesize_waveform: Q is not PSD");

  const double top = std::max(d.maxCoeff(), 0.0);
  std::vector<Eigen::Index> modes;
  for (Eigen::Index i = m - 1; i >= 0; --i) {
    if (top > 0.0 && d(i) > 1e-12 * top) modes.push_back(i);
  }
  const auto rank = static_cast<int>(modes.size());
  if (rank > l_frame) {
    throw InfeasibleFrameError("synthesize_waveform: frame length below covariance rank");
  }

  // W = V_r D_r^1/2 F with F the first r DFT rows: F F^H = L I_r and every
  // entry has unit magnitude, so each slot carries trace(Q).
  CMatrix a(m, rank);
  for (int i = 0; i < rank; ++i) {
    a.col(i) = eig.eigenvectors().col(modes[static_cast<std::size_t>(i)]) *
               std::sqrt(d(modes[static_cast<std::size_t>(i)]));
  }
  CMatrix f(rank, l_frame);
  for (int i = 0; i < rank; ++i) {
    for (int l = 0; l < l_frame; ++l) {
      const double phase = -2.0 * std::numbers::pi * static_cast<double>(i) * l / l_frame;
      f(i, l) = std::polar(1.0, phase);
    }
  }
  return a * f;
}

}  // namespace isac_mi
