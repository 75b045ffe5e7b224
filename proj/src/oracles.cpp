#include "isac_mi/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <unsupported/Eigen/KroneckerProduct>

namespace isac_mi::oracles {
namespace {

CMatrix signal_cov(const CMatrix& h, std::span<const double> powers) {
  CMatrix s = CMatrix::Zero(h.rows(), h.rows());
  for (Eigen::Index k = 0; k < h.cols(); ++k) {
    s += powers[static_cast<std::size_t>(k)] * h.col(k) * h.col(k).adjoint();
  }
  return s;
}

double log2_abs_det(const CMatrix& a) {
  // Accumulate log|u_ii| of the LU factor to avoid overflow of the raw determinant.
  Eigen::PartialPivLU<CMatrix> lu(a);
  const CMatrix& f = lu.matrixLU();
  double acc = 0.0;
  for (Eigen::Index i = 0; i < f.rows(); ++i) acc += std::log2(std::abs(f(i, i)));
  return acc;
}

}  // namespace

double comm_mi_direct(const CMatrix& h, std::span<const double> powers, const CMatrix& noise_cov) {
  const auto n = h.rows();
  const CMatrix a = CMatrix::Identity(n, n) + noise_cov.inverse() * signal_cov(h, powers);
  return log2_abs_det(a);
}

double comm_mi_eig(const CMatrix& h, std::span<const double> powers, const CMatrix& noise_cov) {
  Eigen::SelfAdjointEigenSolver<CMatrix> ne(noise_cov);
  const CMatrix w = ne.eigenvectors() * ne.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
                    ne.eigenvectors().adjoint();
  CMatrix gram = w * signal_cov(h, powers) * w.adjoint();
  gram = 0.5 * (gram + gram.adjoint()).eval();
  Eigen::SelfAdjointEigenSolver<CMatrix> ge(gram, Eigen::EigenvaluesOnly);
  double acc = 0.0;
  for (Eigen::Index i = 0; i < ge.eigenvalues().size(); ++i) {
    acc += std::log2(1.0 + std::max(0.0, ge.eigenvalues()(i)));
  }
  return acc;
}

double sensing_mi_kron(const CMatrix& r_corr, const CMatrix& waveform, const CMatrix& noise_cov) {
  const CMatrix b = waveform.adjoint() * r_corr * waveform;
  const CMatrix k = Eigen::kroneckerProduct(b, noise_cov.inverse()).eval();
  return log2_abs_det(CMatrix::Identity(k.rows(), k.cols()) + k);
}

double water_fill_objective(std::span<const double> gains, std::span<const double> q, double noise) {
  double acc = 0.0;
  for (std::size_t i = 0; i < gains.size(); ++i) acc += std::log2(1.0 + gains[i] * q[i] / noise);
  return acc;
}

double water_fill_grid_max(std::span<const double> gains, double budget, double noise, int steps, int levels) {
  const std::size_t n = gains.size();
  if (n == 0 || n > 3) throw DomainError("water_fill_grid_max: n must be in [1, 3]");
  if (n == 1) return water_fill_objective(gains, std::vector<double>{budget}, noise);

  // Free coordinates q_0 .. q_{n-2}; the last one takes the rest of the budget.
  const std::size_t free = n - 1;
  std::vector<double> lo(free, 0.0), hi(free, budget), best_q(n, 0.0);
  double best = -1.0;
  for (int level = 0; level < levels; ++level) {
    std::vector<double> h(free);
    for (std::size_t i = 0; i < free; ++i) h[i] = (hi[i] - lo[i]) / steps;
    std::vector<double> q(n);
    auto visit = [&] {
      double used = 0.0;
      for (std::size_t i = 0; i < free; ++i) used += q[i];
      if (used > budget * (1.0 + 1e-15)) return;
      q[n - 1] = std::max(0.0, budget - used);
      const double f = water_fill_objective(gains, q, noise);
      if (f > best) {
        best = f;
        best_q = q;
      }
    };
    for (int i = 0; i <= steps; ++i) {
      q[0] = lo[0] + i * h[0];
      if (free == 1) {
        visit();
        continue;
      }
      for (int j = 0; j <= steps; ++j) {
        q[1] = lo[1] + j * h[1];
        visit();
      }
    }
    // Concave objective: the maximizer stays within two cells of the best node.
    for (std::size_t i = 0; i < free; ++i) {
      lo[i] = std::max(0.0, best_q[i] - 2.0 * h[i]);
      hi[i] = std::min(budget, best_q[i] + 2.0 * h[i]);
    }
  }
  return best;
}

double mac_grid_max(const CMatrix& channels, double budget, double sigma2, int steps) {
  if (channels.cols() != 2) throw DomainError("mac_grid_max: two users only");
  const auto m = channels.rows();
  const CMatrix a = channels.col(0) * channels.col(0).adjoint() / sigma2;
  const CMatrix b = channels.col(1) * channels.col(1).adjoint() / sigma2;
  const double h = budget / steps;
  double best = 0.0;
  for (int i = 0; i <= steps; ++i) {
    for (int j = 0; i + j <= steps; ++j) {
      const CMatrix s = CMatrix::Identity(m, m) + (i * h) * a + (j * h) * b;
      best = std::max(best, log2_abs_det(s));
    }
  }
  return best;
}

std::vector<RatePoint> pareto_bruteforce(std::span<const RatePoint> points) {
  std::vector<RatePoint> out;
  for (std::size_t i = 0; i < points.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < points.size() && !dominated; ++j) {
      const auto& a = points[j];
      const auto& b = points[i];
      dominated = a.cr >= b.cr && a.sr >= b.sr && (a.cr > b.cr || a.sr > b.sr);
    }
    const bool duplicate = std::any_of(out.begin(), out.end(), [&](const RatePoint& q) { return q == points[i]; });
    if (!dominated && !duplicate) out.push_back(points[i]);
  }
  std::sort(out.begin(), out.end(), [](const RatePoint& a, const RatePoint& b) { return a.cr < b.cr; });
  return out;
}

double echo_power_sampled(const CMatrix& r_corr, const CMatrix& waveform, int draws, std::uint64_t seed) {
  std::mt19937_64 eng(seed);
  std::normal_distribution<double> gauss(0.0, std::sqrt(0.5));
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(r_corr);
  const CMatrix r_half = eig.eigenvectors() * eig.eigenvalues().cwiseMax(0.0).cwiseSqrt().asDiagonal() *
                         eig.eigenvectors().adjoint();
  const auto m = r_corr.rows();
  const auto l = waveform.cols();
  double acc = 0.0;
  CVector z(m);
  for (int d = 0; d < draws; ++d) {
    for (Eigen::Index i = 0; i < m; ++i) z(i) = Complex(gauss(eng), gauss(eng));
    // Row g = z^H R^1/2, so E[g^H g] = R and E|g w|^2 = w^H R w.
    const Eigen::RowVectorXcd g = z.adjoint() * r_half;
    acc += (g * waveform).squaredNorm() / static_cast<double>(l);
  }
  return acc / draws;
}

CMatrix random_gaussian(int rows, int cols, std::uint64_t seed) {
  std::mt19937_64 eng(seed);
  std::normal_distribution<double> gauss(0.0, std::sqrt(0.5));
  CMatrix a(rows, cols);
  for (int j = 0; j < cols; ++j) {
    for (int i = 0; i < rows; ++i) a(i, j) = Complex(gauss(eng), gauss(eng));
  }
  return a;
}

CMatrix random_psd(int m, double trace, std::uint64_t seed, int rank) {
  const CMatrix a = random_gaussian(m, rank < 0 ? m : rank, seed);
  if (trace == 0.0 || rank == 0) return CMatrix::Zero(m, m);
  CMatrix q = a * a.adjoint();
  q = 0.5 * (q + q.adjoint()).eval();
  return q * (trace / q.trace().real());
}

}  // namespace isac_mi::oracles
