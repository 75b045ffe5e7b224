#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>

#include "isac_mi/errors.hpp"
#include "isac_mi/mi_core.hpp"
#include "isac_mi/region.hpp"
#include "isac_mi/uplink.hpp"

using namespace isac_mi;

namespace {

ScenarioConfig ul_config() {
  auto cfg = default_scenario(ScenarioKind::Uplink);
  cfg.mc_trials = 100;
  return cfg;
}

}  // namespace

TEST_CASE("SIC points against direct formulas") {
  const auto cfg = ul_config();
  const auto ch = sample_channels({cfg.seed, 0}, cfg.dims, LinkDirection::Uplink);
  const auto powers = uplink_user_powers(cfg);
  const CMatrix q = uplink_probe_covariance(cfg);
  const CMatrix r = cfg.target().r_corr;
  const int l = cfg.dims.l_frame, n = cfg.dims.n_rx;

  const auto s = uplink_sic_point(ch.h, powers, q, SicOrder::SensingCentric, cfg);
  const double beta = (r * q).trace().real();
  CHECK(sensing_interference_power(r, q) == doctest::Approx(beta).epsilon(1e-12));
  CHECK(s.cr == doctest::Approx(comm_mi(ch.h, powers, NoiseModel::white(1.0 + beta))).epsilon(1e-12));
  CHECK(s.sr == doctest::Approx(sensing_mi(r, q, l, n, NoiseModel::white(1.0)) / l).epsilon(1e-12));

  const auto c = uplink_sic_point(ch.h, powers, q, SicOrder::CommCentric, cfg);
  CHECK(c.cr == doctest::Approx(comm_mi(ch.h, powers, NoiseModel::white(1.0))).epsilon(1e-12));
  CHECK(c.sr < s.sr);
  CHECK(c.cr > s.cr);

  // Comm-centric CR equals the MMSE-SIC chain sum for any order.
  const std::vector<int> order{1, 0};
  const auto per_user = mmse_sic_user_rates(ch.h, powers, NoiseModel::white(1.0), order);
  CHECK(std::accumulate(per_user.begin(), per_user.end(), 0.0) == doctest::Approx(c.cr).epsilon(1e-10));

  CMatrix bad(n + 1, 2);
  bad.setZero();
  CHECK_THROWS_AS(uplink_sic_point(bad, powers, q, SicOrder::CommCentric, cfg), DomainError);
}

TEST_CASE("SIC rates are invariant to user phase rotations") {
  const auto cfg = ul_config();
  const auto ch = sample_channels({cfg.seed, 4}, cfg.dims, LinkDirection::Uplink);
  const auto powers = uplink_user_powers(cfg);
  const CMatrix q = uplink_probe_covariance(cfg);
  CMatrix rotated = ch.h;
  rotated.col(0) *= std::polar(1.0, 0.7);
  rotated.col(1) *= std::polar(1.0, -2.1);
  for (auto order : {SicOrder::SensingCentric, SicOrder::CommCentric}) {
    const auto a = uplink_sic_point(ch.h, powers, q, order, cfg);
    const auto b = uplink_sic_point(rotated, powers, q, order, cfg);
    CHECK(std::abs(a.cr - b.cr) < 1e-12);
    CHECK(std::abs(a.sr - b.sr) < 1e-12);
  }
}

TEST_CASE("time_share") {
  const RatePoint s{1.0, 4.0}, c{3.0, 2.0};
  CHECK(time_share(s, c, 1.0) == s);
  CHECK(time_share(s, c, 0.0) == c);
  const auto mid = time_share(s, c, 0.5);
  CHECK(mid.cr == doctest::Approx(2.0));
  CHECK(mid.sr == doctest::Approx(3.0));
  // Affine in p.
  for (double p : {0.1, 0.37, 0.8}) {
    const auto t = time_share(s, c, p);
    CHECK(t.cr == doctest::Approx(c.cr + p * (s.cr - c.cr)).epsilon(1e-14));
    CHECK(t.sr == doctest::Approx(c.sr + p * (s.sr - c.sr)).epsilon(1e-14));
  }
  CHECK_THROWS_AS(time_share(s, c, -0.1), DomainError);
  CHECK_THROWS_AS(time_share(s, c, 1.1), DomainError);
}

TEST_CASE("corner ordering and region") {
  const auto cfg = ul_config();
  const auto corners = uplink_corners(cfg);
  CHECK(corners.p_c.mean.cr >= corners.p_s.mean.cr);
  CHECK(corners.p_s.mean.sr >= corners.p_c.mean.sr);

  const auto isac = uplink_isac_region_sweep(cfg);
  REQUIRE(isac.points.size() >= 2);
  CHECK(isac.points.front().label == "P_s");
  CHECK(isac.points.back().label == "P_c");
  CHECK(isac.region.frontier.front() == corners.p_s.mean);
  CHECK(isac.region.frontier.back() == corners.p_c.mean);
  // Every sample lies on the chord between the corners.
  for (const auto& p : isac.region.frontier) {
    const double t = (p.cr - corners.p_c.mean.cr) / (corners.p_s.mean.cr - corners.p_c.mean.cr);
    CHECK(p.sr == doctest::Approx(corners.p_c.mean.sr + t * (corners.p_s.mean.sr - corners.p_c.mean.sr))
                       .epsilon(1e-10));
  }

  const auto fdsac = uplink_fdsac_region_sweep(cfg);
  CHECK(contains(isac.region, fdsac.region, 1e-9));
}

TEST_CASE("uplink FDSAC edges") {
  const auto cfg = ul_config();
  const auto ch = sample_channels({cfg.seed, 2}, cfg.dims, LinkDirection::Uplink);
  const auto powers = uplink_user_powers(cfg);
  const CMatrix q = uplink_probe_covariance(cfg);
  const auto comm = uplink_fdsac_point(cfg, ch, 1.0);
  CHECK(comm.cr == doctest::Approx(uplink_sic_point(ch.h, powers, q, SicOrder::CommCentric, cfg).cr).epsilon(1e-12));
  CHECK(comm.sr == 0.0);
  const auto sense = uplink_fdsac_point(cfg, ch, 0.0);
  CHECK(sense.cr == 0.0);
  CHECK(sense.sr == doctest::Approx(uplink_sic_point(ch.h, powers, q, SicOrder::SensingCentric, cfg).sr)
                        .epsilon(1e-12));
  CHECK_THROWS_AS(uplink_fdsac_point(cfg, ch, 2.0), DomainError);
  CHECK_THROWS_AS(uplink_corners(default_scenario(ScenarioKind::DownlinkMa)), DomainError);
}
