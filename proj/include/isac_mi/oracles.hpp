#pragma once

// Reference computations used to cross-check the library. Nothing here calls
// the routines under test; every oracle takes a different numerical route
// (full-size determinants, explicit waveforms, exhaustive grids, sampling).

#include <cstdint>
#include <span>
#include <vector>

#include "isac_mi/model.hpp"

namespace isac_mi::oracles {

/// log2 det(I + Sigma^-1 H P H^H) from an LU determinant of the N x N matrix.
double comm_mi_direct(const CMatrix& h, std::span<const double> powers, const CMatrix& noise_cov);

/// Same quantity from the eigenvalues of the whitened N x N Gram.
double comm_mi_eig(const CMatrix& h, std::span<const double> powers, const CMatrix& noise_cov);

/// Sensing MI of an explicit M x L waveform W: log2 det(I_NL + kron(B, Sigma^-1))
/// with B = W^H R W, evaluated as a full NL x NL determinant.
double sensing_mi_kron(const CMatrix& r_corr, const CMatrix& waveform, const CMatrix& noise_cov);

/// sum_i log2(1 + gains_i q_i / noise).
double water_fill_objective(std::span<const double> gains, std::span<const double> q, double noise);

/// Maximum of the water-filling objective over the budget simplex
/// (sum q = budget) by exhaustive grid search with `steps` intervals per free
/// axis, zoomed around the best node `levels` times; n <= 3.
double water_fill_grid_max(std::span<const double> gains, double budget, double noise, int steps,
                           int levels = 1);

/// Maximum of log2 det(I + sigma^-2 sum p_k h_k h_k^H) over a uniform 2-D grid
/// of {p >= 0, p_1 + p_2 <= budget} (two users).
double mac_grid_max(const CMatrix& channels, double budget, double sigma2, int steps);

/// O(n^2) dominance scan; survivors sorted by cr, duplicates collapsed.
std::vector<RatePoint> pareto_bruteforce(std::span<const RatePoint> points);

/// Monte Carlo mean of the per-slot, per-antenna echo power of waveform W:
/// rows of G drawn with E[g^H g] = R.
double echo_power_sampled(const CMatrix& r_corr, const CMatrix& waveform, int draws, std::uint64_t seed);

/// Random Hermitian PSD matrix with trace `trace` and the given rank
/// (full rank when negative).
CMatrix random_psd(int m, double trace, std::uint64_t seed, int rank = -1);

/// Random complex Gaussian matrix (unit-variance entries).
CMatrix random_gaussian(int rows, int cols, std::uint64_t seed);

}  // namespace isac_mi::oracles
