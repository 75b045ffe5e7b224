#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "isac_mi/errors.hpp"
#include "isac_mi/oracles.hpp"
#include "isac_mi/region.hpp"

using namespace isac_mi;

namespace {

std::vector<RatePoint> random_points(std::uint64_t seed, int n, bool on_grid = false) {
  std::mt19937_64 eng(seed);
  std::uniform_real_distribution<double> u(0.0, 10.0);
  std::uniform_int_distribution<int> k(0, 20);
  std::vector<RatePoint> pts;
  for (int i = 0; i < n; ++i) pts.push_back(on_grid ? RatePoint{k(eng) * 0.5, k(eng) * 0.5} : RatePoint{u(eng), u(eng)});
  return pts;
}

// Concave frontier samples with a few interior points mixed in.
RateRegion random_region(std::uint64_t seed) {
  std::mt19937_64 eng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<RatePoint> pts;
  const double a = 1.0 + 4.0 * u(eng), b = 1.0 + 4.0 * u(eng);
  for (int i = 0; i < 12; ++i) {
    const double t = u(eng) * 1.5707963;
    const double s = 0.6 + 0.4 * u(eng);
    pts.push_back({s * a * std::cos(t), s * b * std::sin(t)});
  }
  return convexify(pareto_frontier(pts));
}

}  // namespace

TEST_CASE("pareto_frontier examples") {
  const std::vector<RatePoint> a{{1, 1}, {0.5, 0.5}};
  CHECK(pareto_frontier(a).frontier == std::vector<RatePoint>{{1, 1}});
  const std::vector<RatePoint> b{{2, 0}, {0, 2}};
  CHECK(pareto_frontier(b).frontier == std::vector<RatePoint>{{0, 2}, {2, 0}});
  CHECK_THROWS(pareto_frontier(std::vector<RatePoint>{}));
}

TEST_CASE("pareto_frontier equals the brute-force scan") {
  for (std::uint64_t s = 0; s < 5; ++s) {
    const auto pts = random_points(s, 1000);
    CHECK(pareto_frontier(pts).frontier == oracles::pareto_bruteforce(pts));
    const auto grid = random_points(100 + s, 300, true);
    const auto region = pareto_frontier(grid);
    CHECK(region.frontier == oracles::pareto_bruteforce(grid));
    CHECK_NOTHROW(region.validate());
  }
}

TEST_CASE("convexify examples") {
  const std::vector<RatePoint> above{{2, 0}, {1.5, 1.5}, {0, 2}};
  const auto c = convexify(pareto_frontier(above));
  CHECK(c.frontier.size() == 3);
  CHECK(c.convexified);

  const std::vector<RatePoint> below{{2, 0}, {0.5, 0.5}, {0.9, 1.0}, {0, 2}};
  CHECK(convexify(pareto_frontier(below)).frontier == std::vector<RatePoint>{{0, 2}, {2, 0}});

  const std::vector<RatePoint> collinear{{2, 0}, {1, 1}, {0, 2}};
  const auto cc = convexify(pareto_frontier(collinear));
  for (double x : {0.0, 0.3, 1.0, 1.7, 2.0}) {
    CHECK(sr_envelope(cc, x) == doctest::Approx(2.0 - x));
  }

  const std::vector<RatePoint> single{{1, 3}};
  CHECK(convexify(pareto_frontier(single)).frontier == single);
}

TEST_CASE("convexify is idempotent") {
  for (std::uint64_t s = 0; s < 50; ++s) {
    const auto once = convexify(pareto_frontier(random_points(s, 40)));
    const auto twice = convexify(once);
    CHECK(once.frontier == twice.frontier);
  }
}

TEST_CASE("contains examples") {
  const auto small = pareto_frontier(std::vector<RatePoint>{{1, 1}});
  const auto big = pareto_frontier(std::vector<RatePoint>{{2, 2}});
  CHECK(contains(big, small, 0.0));
  CHECK_FALSE(contains(small, big, 0.0));

  // A point under the time-sharing chord is covered only after convexification.
  const auto corners = pareto_frontier(std::vector<RatePoint>{{0, 2}, {2, 0}});
  const auto mid = pareto_frontier(std::vector<RatePoint>{{0.9, 0.9}});
  CHECK(contains(corners, mid, 0.0));
  const auto outside = pareto_frontier(std::vector<RatePoint>{{1.1, 1.0}});
  CHECK_FALSE(contains(corners, outside, 1e-9));
  CHECK(contains(corners, outside, 0.11));
}

TEST_CASE("contains is reflexive and transitive") {
  for (std::uint64_t s = 0; s < 40; ++s) {
    const auto a = random_region(3 * s);
    const auto b = random_region(3 * s + 1);
    const auto c = random_region(3 * s + 2);
    CHECK(contains(a, a, 0.0));
    if (contains(a, b, 0.0) && contains(b, c, 0.0)) CHECK(contains(a, c, 1e-12));
    if (contains(c, b, 0.0) && contains(b, a, 0.0)) CHECK(contains(c, a, 1e-12));
  }
  // Nested by construction.
  const auto outer = random_region(999);
  std::vector<RatePoint> shrunk;
  for (const auto& p : outer.frontier) shrunk.push_back({0.9 * p.cr, 0.8 * p.sr});
  const auto middle = convexify(pareto_frontier(shrunk));
  std::vector<RatePoint> shrunk2;
  for (const auto& p : middle.frontier) shrunk2.push_back({0.5 * p.cr, 0.5 * p.sr});
  const auto inner = convexify(pareto_frontier(shrunk2));
  CHECK(contains(outer, middle, 0.0));
  CHECK(contains(middle, inner, 0.0));
  CHECK(contains(outer, inner, 0.0));
}

TEST_CASE("hisnr_slope") {
  const std::vector<PowerRate> log_rate{{1e8, std::log2(1e8)}, {1e10, std::log2(1e10)}};
  CHECK(hisnr_slope(log_rate).numeric == doctest::Approx(1.0).epsilon(1e-12));

  const std::vector<PowerRate> three{{1e8, 3 * std::log2(1 + 1e8)}, {1e10, 3 * std::log2(1 + 1e10)}};
  const auto s = hisnr_slope(three, 3.0);
  CHECK(std::abs(s.numeric - 3.0) < 1e-6);
  CHECK(s.abs_error == doctest::Approx(std::abs(s.numeric - 3.0)));

  const std::vector<PowerRate> flat{{1e3, 2.0}, {1e8, 2.0}, {1e10, 2.0}};
  CHECK(hisnr_slope(flat).numeric == 0.0);

  const std::vector<PowerRate> one{{1e10, 1.0}};
  CHECK_THROWS_AS(hisnr_slope(one), UnreliableRegimeError);
  const std::vector<PowerRate> low{{1e2, 1.0}, {1e4, 2.0}};
  CHECK_THROWS_AS(hisnr_slope(low), UnreliableRegimeError);
  const std::vector<PowerRate> unsorted{{1e10, 1.0}, {1e8, 2.0}};
  CHECK_THROWS_AS(hisnr_slope(unsorted), UnreliableRegimeError);
}
