#include "isac_mi/mi_core.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace isac_mi {
namespace {

constexpr double kDegenerateNoise = 1e-14;

void check_powers(const CMatrix& h, std::span<const double> powers) {
  if (static_cast<Eigen::Index>(powers.size()) != h.cols()) {
    throw DomainError("user_powers size does not match channel columns");
  }
  for (double p : powers) {
    if (!(p >= 0.0) || !std::isfinite(p)) throw DomainError("user powers must be finite and >= 0");
  }
}

/// Sigma^-1/2 for the given noise at dimension n.
CMatrix whitener(const NoiseModel& noise, int n) {
  if (noise.is_white()) {
    return CMatrix::Identity(n, n) / std::sqrt(noise.white_power());
  }
  const auto& cov = noise.colored_cov();
  if (cov.rows() != n) throw DomainError("noise covariance dimension mismatch");
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(cov);
  const RVector inv_sqrt = eig.eigenvalues().cwiseSqrt().cwiseInverse();
  return eig.eigenvectors() * inv_sqrt.asDiagonal() * eig.eigenvectors().adjoint();
}

/// log2 det of a Hermitian positive definite matrix.
double log2_det_hpd(const CMatrix& a) {
  Eigen::LLT<CMatrix> llt(a);
  if (llt.info() != Eigen::Success) {
    // I + PSD is always PD; failure means non-finite input.
    throw DomainError("log-det of a non positive definite matrix");
  }
  double acc = 0.0;
  const auto& l = llt.matrixLLT();
  for (Eigen::Index i = 0; i < a.rows(); ++i) acc += std::log(l(i, i).real());
  return 2.0 * acc / std::numbers::ln2;
}

}  // namespace

NoiseModel NoiseModel::white(double power) {
  if (!(power > kDegenerateNoise) || !std::isfinite(power)) {
    throw DegenerateNoiseError("white noise power must exceed 1e-14");
  }
  return NoiseModel(WhiteNoise{power});
}

NoiseModel NoiseModel::colored(CMatrix cov) {
  if (cov.rows() < 1 || cov.rows() != cov.cols()) {
    throw DomainError("colored noise covariance must be square and nonempty");
  }
  if ((cov - cov.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, cov.cwiseAbs().maxCoeff())) {
    throw DomainError("colored noise covariance is not Hermitian");
  }
  // Remove the anti-Hermitian round-off so eigen-solvers see an exact Hermitian matrix.
  cov = 0.5 * (cov + cov.adjoint()).eval();
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(cov, Eigen::EigenvaluesOnly);
  if (eig.eigenvalues().minCoeff() <= kDegenerateNoise) {
    throw DegenerateNoiseError("colored noise covariance is singular");
  }
  return NoiseModel(ColoredNoise{std::move(cov)});
}

double NoiseModel::white_power() const { return std::get<WhiteNoise>(model_).power; }

const CMatrix& NoiseModel::colored_cov() const { return std::get<ColoredNoise>(model_).cov; }

RVector NoiseModel::eigenvalues(int n) const {
  if (is_white()) return RVector::Constant(n, white_power());
  const auto& cov = colored_cov();
  if (cov.rows() != n) throw DomainError("noise covariance dimension mismatch");
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(cov, Eigen::EigenvaluesOnly);
  return eig.eigenvalues();
}

CMatrix NoiseModel::covariance(int n) const {
  if (is_white()) return white_power() * CMatrix::Identity(n, n);
  if (colored_cov().rows() != n) throw DomainError("noise covariance dimension mismatch");
  return colored_cov();
}

double comm_mi(const CMatrix& h, std::span<const double> user_powers, const NoiseModel& noise) {
  check_powers(h, user_powers);
  const auto n = static_cast<int>(h.rows());
  const auto k = h.cols();
  RVector amp(k);
  for (Eigen::Index i = 0; i < k; ++i) amp(i) = std::sqrt(user_powers[static_cast<std::size_t>(i)]);
  // A = Sigma^-1/2 H diag(sqrt p); det(I_N + A A^H) = det(I_K + A^H A).
  const CMatrix a = whitener(noise, n) * h * amp.asDiagonal();
  const CMatrix gram = CMatrix::Identity(k, k) + a.adjoint() * a;
  return std::max(0.0, log2_det_hpd(gram));
}

std::vector<double> mmse_sic_user_rates(const CMatrix& h, std::span<const double> user_powers,
                                        const NoiseModel& noise, std::span<const int> order) {
  check_powers(h, user_powers);
  const auto k = static_cast<int>(h.cols());
  if (static_cast<int>(order.size()) != k) throw DomainError("order must be a permutation of the users");
  std::vector<bool> seen(static_cast<std::size_t>(k), false);
  for (int u : order) {
    if (u < 0 || u >= k || seen[static_cast<std::size_t>(u)]) {
      throw DomainError("order must be a permutation of the users");
    }
    seen[static_cast<std::size_t>(u)] = true;
  }

  const auto n = static_cast<int>(h.rows());
  CMatrix interference = noise.covariance(n);
  for (int u = 0; u < k; ++u) {
    const double p = user_powers[static_cast<std::size_t>(u)];
    interference += p * h.col(u) * h.col(u).adjoint();
  }

  std::vector<double> rates(static_cast<std::size_t>(k), 0.0);
  for (int u : order) {
    const double p = user_powers[static_cast<std::size_t>(u)];
    interference -= p * h.col(u) * h.col(u).adjoint();
    // Symmetrize: repeated rank-one updates drift off Hermitian.
    interference = 0.5 * (interference + interference.adjoint()).eval();
    Eigen::LDLT<CMatrix> ldlt(interference);
    const Complex sinr = p * (h.col(u).adjoint() * ldlt.solve(h.col(u)))(0, 0);
    rates[static_cast<std::size_t>(u)] = std::log2(1.0 + std::max(0.0, sinr.real()));
  }
  return rates;
}

CMatrix psd_sqrt(const CMatrix& a) {
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(a);
  const RVector s = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return eig.eigenvectors() * s.asDiagonal() * eig.eigenvectors().adjoint();
}

double sensing_mi(const CMatrix& r_corr, const CMatrix& q_cov, int l_frame, int n_rx,
                  const NoiseModel& noise) {
  const auto m = r_corr.rows();
  if (q_cov.rows() != m || q_cov.cols() != m) throw DomainError("sensing_mi: Q and R sizes differ");
  if (l_frame < 1 || n_rx < 1) throw DomainError("sensing_mi: l_frame and n_rx must be >= 1");
  Eigen::SelfAdjointEigenSolver<CMatrix> q_eig(q_cov, Eigen::EigenvaluesOnly);
  const double q_scale = std::max(1.0, q_eig.eigenvalues().cwiseAbs().maxCoeff());
  if (q_eig.eigenvalues().minCoeff() < -1e-10 * q_scale) throw DomainError("sensing_mi: Q is not PSD");

  const CMatrix r_half = psd_sqrt(r_corr);
  CMatrix s = static_cast<double>(l_frame) * r_half * q_cov * r_half;
  s = 0.5 * (s + s.adjoint()).eval();
  Eigen::SelfAdjointEigenSolver<CMatrix> s_eig(s, Eigen::EigenvaluesOnly);
  const RVector nu = noise.eigenvalues(n_rx);

  double acc = 0.0;
  for (Eigen::Index i = 0; i < m; ++i) {
    const double li = std::max(0.0, s_eig.eigenvalues()(i));
    if (li == 0.0) continue;
    for (Eigen::Index j = 0; j < nu.size(); ++j) acc += std::log2(1.0 + li / nu(j));
  }
  return acc;
}

double sensing_interference_power(const CMatrix& r_corr, const CMatrix& q_cov) {
  if (r_corr.rows() != q_cov.rows()) throw DomainError("interference power: size mismatch");
  return std::max(0.0, (r_corr * q_cov).trace().real());
}

}  // namespace isac_mi
