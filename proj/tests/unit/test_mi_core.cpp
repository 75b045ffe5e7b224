#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "isac_mi/alloc.hpp"
#include "isac_mi/errors.hpp"
#include "isac_mi/mi_core.hpp"
#include "isac_mi/oracles.hpp"

using namespace isac_mi;

TEST_CASE("comm_mi closed-form examples") {
  CMatrix h(1, 1);
  h(0, 0) = 1.0;
  const std::vector<double> p{3.0};
  CHECK(comm_mi(h, p, NoiseModel::white(1.0)) == doctest::Approx(2.0).epsilon(1e-14));

  const CMatrix eye = CMatrix::Identity(2, 2);
  const std::vector<double> p2{1.0, 1.0};
  CHECK(comm_mi(eye, p2, NoiseModel::white(1.0)) == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("comm_mi matches the log-det oracles on random 3x2 instances") {
  for (std::uint64_t s = 0; s < 50; ++s) {
    const CMatrix h = oracles::random_gaussian(3, 2, s);
    const std::vector<double> p{0.5 + s % 3, 2.0};
    const CMatrix cov = oracles::random_psd(3, 3.0, 1000 + s) + 0.2 * CMatrix::Identity(3, 3);
    const double got = comm_mi(h, p, NoiseModel::colored(cov));
    CHECK(std::abs(got - oracles::comm_mi_direct(h, p, cov)) < 1e-10);
    CHECK(std::abs(got - oracles::comm_mi_eig(h, p, cov)) < 1e-10);
  }
}

TEST_CASE("degenerate and malformed noise is rejected") {
  CHECK_THROWS_AS(NoiseModel::white(0.0), DegenerateNoiseError);
  CHECK_THROWS_AS(NoiseModel::white(1e-15), DegenerateNoiseError);
  CMatrix singular = CMatrix::Zero(2, 2);
  singular(0, 0) = 1.0;
  CHECK_THROWS_AS(NoiseModel::colored(singular), DegenerateNoiseError);
  CMatrix skew = CMatrix::Identity(2, 2);
  skew(0, 1) = 0.5;
  CHECK_THROWS(NoiseModel::colored(skew));
}

TEST_CASE("MMSE-SIC decomposition") {
  SUBCASE("single user equals comm_mi") {
    const CMatrix h = oracles::random_gaussian(3, 1, 4);
    const std::vector<double> p{2.5};
    const auto noise = NoiseModel::white(0.8);
    const auto r = mmse_sic_user_rates(h, p, noise, std::vector<int>{0});
    CHECK(r[0] == doctest::Approx(comm_mi(h, p, noise)).epsilon(1e-13));
  }
  SUBCASE("orthogonal users decode independently of order") {
    const CMatrix h = 1.7 * CMatrix::Identity(2, 2);
    const std::vector<double> p{1.0, 3.0};
    const auto noise = NoiseModel::white(1.0);
    const auto a = mmse_sic_user_rates(h, p, noise, std::vector<int>{0, 1});
    const auto b = mmse_sic_user_rates(h, p, noise, std::vector<int>{1, 0});
    CHECK(a[0] == doctest::Approx(b[0]).epsilon(1e-14));
    CHECK(a[1] == doctest::Approx(b[1]).epsilon(1e-14));
  }
  SUBCASE("random K = 3: per-order rates differ, sums agree") {
    const CMatrix h = oracles::random_gaussian(3, 3, 77);
    const std::vector<double> p{1.0, 2.0, 4.0};
    const auto noise = NoiseModel::white(1.0);
    const auto a = mmse_sic_user_rates(h, p, noise, std::vector<int>{0, 1, 2});
    const auto b = mmse_sic_user_rates(h, p, noise, std::vector<int>{2, 1, 0});
    CHECK(std::abs(a[0] - b[0]) > 1e-3);
    const double total = comm_mi(h, p, noise);
    CHECK(std::abs(std::accumulate(a.begin(), a.end(), 0.0) - total) < 1e-9);
    CHECK(std::abs(std::accumulate(b.begin(), b.end(), 0.0) - total) < 1e-9);
  }
  SUBCASE("order must be a permutation") {
    const CMatrix h = oracles::random_gaussian(2, 2, 1);
    const std::vector<double> p{1.0, 1.0};
    CHECK_THROWS(mmse_sic_user_rates(h, p, NoiseModel::white(1.0), std::vector<int>{0, 0}));
  }
}

TEST_CASE("sensing_mi examples") {
  const CMatrix one = CMatrix::Identity(1, 1);
  CHECK(sensing_mi(one, one, 1, 1, NoiseModel::white(1.0)) == doctest::Approx(1.0).epsilon(1e-14));
  const CMatrix r = exp_corr_matrix(3, 0.5).r_corr;
  CHECK(sensing_mi(r, CMatrix::Zero(3, 3), 8, 2, NoiseModel::white(1.0)) == 0.0);
  CMatrix not_psd = CMatrix::Identity(3, 3);
  not_psd(2, 2) = -1e-6;
  CHECK_THROWS_AS(sensing_mi(r, not_psd, 8, 2, NoiseModel::white(1.0)), DomainError);
}

TEST_CASE("sensing_mi: white special case is N log det") {
  const CMatrix r = exp_corr_matrix(3, 0.4).r_corr;
  const CMatrix q = oracles::random_psd(3, 2.0, 9);
  const int l = 5, n = 4;
  const double s2 = 0.7;
  const CMatrix rh = psd_sqrt(r);
  const CMatrix a = CMatrix::Identity(3, 3) + (l / s2) * rh * q * rh;
  const double ref = n * std::log2(a.determinant().real());
  CHECK(sensing_mi(r, q, l, n, NoiseModel::white(s2)) == doctest::Approx(ref).epsilon(1e-12));
}

TEST_CASE("sensing_mi: M = N = 2, L = 4 colored noise matches the Kronecker oracle") {
  const CMatrix r = exp_corr_matrix(2, 0.6).r_corr;
  const CMatrix q = oracles::random_psd(2, 3.0, 21);
  const CMatrix cov = oracles::random_psd(2, 2.0, 22) + 0.4 * CMatrix::Identity(2, 2);
  const CMatrix w = synthesize_waveform(q, 4);
  CHECK(std::abs(sensing_mi(r, q, 4, 2, NoiseModel::colored(cov)) - oracles::sensing_mi_kron(r, w, cov)) < 1e-8);
}

TEST_CASE("sensing_mi: colored sigma^2 I equals white sigma^2") {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const CMatrix r = oracles::random_psd(3, 3.0, s);
    const CMatrix q = oracles::random_psd(3, 1.0 + s, 100 + s);
    const double w = sensing_mi(r, q, 6, 3, NoiseModel::white(1.5));
    const double c = sensing_mi(r, q, 6, 3, NoiseModel::colored(1.5 * CMatrix::Identity(3, 3)));
    CHECK(std::abs(w - c) < 1e-10);
  }
}

TEST_CASE("monotonicity in power scaling") {
  std::mt19937_64 eng(5);
  std::uniform_real_distribution<double> t_dist(1.0, 4.0);
  for (std::uint64_t s = 0; s < 100; ++s) {
    const double t = t_dist(eng);
    const CMatrix h = oracles::random_gaussian(3, 2, s);
    std::vector<double> p{0.3 + s % 5, 1.1};
    const auto noise = NoiseModel::white(1.0);
    const double base = comm_mi(h, p, noise);
    for (double& v : p) v *= t;
    CHECK(comm_mi(h, p, noise) >= base);

    const CMatrix r = oracles::random_psd(3, 3.0, 500 + s);
    const CMatrix q = oracles::random_psd(3, 2.0, 900 + s);
    CHECK(sensing_mi(r, t * q, 4, 2, noise) >= sensing_mi(r, q, 4, 2, noise));
  }
}

TEST_CASE("rates are nonnegative") {
  for (std::uint64_t s = 0; s < 30; ++s) {
    const CMatrix h = oracles::random_gaussian(2, 3, s);
    const std::vector<double> p{0.0, 1.0, 0.0};
    const auto noise = NoiseModel::colored(oracles::random_psd(2, 2.0, s + 40) + CMatrix::Identity(2, 2));
    CHECK(comm_mi(h, p, noise) >= 0.0);
    for (double v : mmse_sic_user_rates(h, p, noise, std::vector<int>{2, 0, 1})) CHECK(v >= 0.0);
  }
}

TEST_CASE("sensing interference power") {
  const double p = 2.5;
  CHECK(sensing_interference_power(CMatrix::Identity(4, 4), (p / 4) * CMatrix::Identity(4, 4)) ==
        doctest::Approx(p));
  CHECK(sensing_interference_power(CMatrix::Identity(3, 3), CMatrix::Zero(3, 3)) == 0.0);

  // Monte Carlo echo power of a synthesized waveform.
  const CMatrix r = exp_corr_matrix(3, 0.5).r_corr;
  const CMatrix q = oracles::random_psd(3, 2.0, 31);
  const CMatrix w = synthesize_waveform(q, 5);
  const double sampled = oracles::echo_power_sampled(r, w, 100000, 32);
  CHECK(std::abs(sampled - sensing_interference_power(r, q)) < 0.01 * sensing_interference_power(r, q));
}
