#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>

#include "isac_mi/alloc.hpp"
#include "isac_mi/downlink.hpp"
#include "isac_mi/errors.hpp"
#include "isac_mi/mi_core.hpp"
#include "isac_mi/oracles.hpp"

using namespace isac_mi;

namespace {

ScenarioConfig sa_config() {
  auto cfg = default_scenario(ScenarioKind::DownlinkSa);
  cfg.mc_trials = 50;
  return cfg;
}

ScenarioConfig ma_config() {
  auto cfg = default_scenario(ScenarioKind::DownlinkMa);
  cfg.mc_trials = 20;
  return cfg;
}

CommChannel sa_channel(Complex a, Complex b) {
  CMatrix h(1, 2);
  h << a, b;
  return {LinkDirection::Downlink, h};
}

}  // namespace

TEST_CASE("NOMA rates") {
  const std::array<double, 2> g{4.0, 1.0};
  const auto r = sa_noma_rates(g, NomaAllocation::from_strong(0.2), 1.0, 1.0);
  CHECK(r.r_strong == doctest::Approx(std::log2(1.8)).epsilon(1e-14));
  CHECK(r.r_weak == doctest::Approx(std::log2(5.0 / 3.0)).epsilon(1e-14));
  CHECK(r.cr_sum == doctest::Approx(std::log2(3.0)).epsilon(1e-14));

  // Ordering of the input does not matter.
  const std::array<double, 2> swapped{1.0, 4.0};
  CHECK(sa_noma_rates(swapped, NomaAllocation::from_strong(0.2), 1.0, 1.0).cr_sum == r.cr_sum);

  // All power on the strong user maximizes the sum rate.
  CHECK(sa_noma_best_sum_rate(g, 1.0, 1.0, 41) == doctest::Approx(std::log2(5.0)).epsilon(1e-14));

  CHECK_THROWS_AS(NomaAllocation::from_strong(1.5), DomainError);
  CHECK_THROWS_AS(sa_noma_rates(g, NomaAllocation::from_strong(0.5), -1.0, 1.0), DomainError);
  CHECK_THROWS_AS(sa_noma_rates(g, NomaAllocation::from_strong(0.5), 1.0, 0.0), DomainError);
}

TEST_CASE("single-antenna ISAC corner") {
  auto cfg = sa_config();
  SUBCASE("zero power") {
    cfg.power.p_total = 0.0;
    const auto p = sa_isac_corner(cfg, sa_channel({1, 0}, {0, 1}));
    CHECK(p.cr == 0.0);
    CHECK(p.sr == 0.0);
  }
  SUBCASE("N = L gives a log of one plus L p") {
    cfg.dims.n_rx = cfg.dims.l_frame;
    cfg.power.p_total = 1.0;
    const auto p = sa_isac_corner(cfg, sa_channel({2, 0}, {0, 1}));
    CHECK(p.sr == doctest::Approx(std::log2(1.0 + cfg.dims.l_frame)).epsilon(1e-14));
    CHECK(p.cr == doctest::Approx(std::log2(5.0)).epsilon(1e-14));
  }
  CHECK_THROWS_AS(sa_isac_corner(ma_config(), sa_channel({1, 0}, {1, 0})), DomainError);
}

TEST_CASE("single-antenna FDSAC edges") {
  const auto cfg = sa_config();
  const auto ch = sa_channel({1, 1}, {0.3, 0});
  const auto corner = sa_isac_corner(cfg, ch);

  const auto comm_only = sa_fdsac_point(cfg, ch, {1.0, 1.0});
  CHECK(comm_only.cr == doctest::Approx(corner.cr).epsilon(1e-14));
  CHECK(comm_only.sr == 0.0);

  const auto sense_only = sa_fdsac_point(cfg, ch, {0.0, 0.0});
  CHECK(sense_only.cr == 0.0);
  CHECK(sense_only.sr == doctest::Approx(corner.sr).epsilon(1e-14));

  // The rate is continuous as a band share goes to zero.
  const auto tiny = sa_fdsac_point(cfg, ch, {1e-9, 0.5});
  const auto zero = sa_fdsac_point(cfg, ch, {0.0, 0.5});
  CHECK(std::abs(tiny.cr - zero.cr) < 1e-6);
  CHECK(std::abs(tiny.sr - zero.sr) < 1e-6);

  CHECK_THROWS_AS(sa_fdsac_point(cfg, ch, {1.2, 0.5}), DomainError);
}

TEST_CASE("the ISAC corner dominates every FDSAC split") {
  const auto cfg = sa_config();
  const auto isac = downlink_region(cfg, RegionMode::Isac);
  REQUIRE(isac.frontier.size() == 1);
  const auto fdsac = downlink_region(cfg, RegionMode::Fdsac);
  for (const auto& p : fdsac.frontier) {
    CHECK(p.cr <= isac.frontier[0].cr + 1e-9);
    CHECK(p.sr <= isac.frontier[0].sr + 1e-9);
  }
}

TEST_CASE("dpc_rates") {
  SUBCASE("single user") {
    CMatrix h(2, 1);
    h << 1.0, 0.0;
    const std::vector<CMatrix> covs{CMatrix::Identity(2, 2) * 3.0};
    const std::vector<int> order{0};
    CHECK(dpc_rates(h, covs, order, 1.0)[0] == doctest::Approx(2.0).epsilon(1e-14));
  }
  SUBCASE("later users interfere with earlier ones") {
    CMatrix h = CMatrix::Identity(2, 2);
    const std::vector<CMatrix> covs{CMatrix::Identity(2, 2), CMatrix::Identity(2, 2)};
    const std::vector<int> order{0, 1};
    const auto r = dpc_rates(h, covs, order, 1.0);
    CHECK(r[0] == doctest::Approx(std::log2(1.5)).epsilon(1e-14));
    CHECK(r[1] == doctest::Approx(1.0).epsilon(1e-14));
  }
  SUBCASE("sum matches the MAC sum rate") {
    const CMatrix h = oracles::random_gaussian(3, 2, 11);
    const auto mac = sum_power_iwf(h, 5.0, 1.0);
    const auto r = dpc_rates(h, mac.bc_covariances, mac.encoding_order, 1.0);
    CHECK(r[0] + r[1] == doctest::Approx(mac.sum_rate).epsilon(1e-8));
  }
  const CMatrix h = CMatrix::Identity(2, 2);
  const std::vector<CMatrix> one{CMatrix::Identity(2, 2)};
  const std::vector<int> order{0, 1};
  CHECK_THROWS_AS(dpc_rates(h, one, order, 1.0), DomainError);
}

TEST_CASE("multi-antenna ISAC point") {
  const auto cfg = ma_config();
  const auto ch = sample_channels({cfg.seed, 0}, cfg.dims, LinkDirection::Downlink);
  const CMatrix r = cfg.target().r_corr;
  const auto& d = cfg.dims;
  const double p = cfg.power.p_total;

  SUBCASE("rho = 0 is pure communication") {
    const auto pt = ma_isac_point(cfg, ch, 0.0);
    CHECK(pt.cr == doctest::Approx(sum_power_iwf(ch.h, p, 1.0).sum_rate).epsilon(1e-10));
    CHECK(pt.sr == doctest::Approx(0.0));
  }
  SUBCASE("rho = 1 is pure sensing") {
    const auto pt = ma_isac_point(cfg, ch, 1.0);
    CHECK(pt.cr == 0.0);
    const CMatrix q = sr_optimal_covariance(r, p, 1.0, d.l_frame, d.n_rx);
    CHECK(pt.sr ==
          doctest::Approx(sensing_mi(r, q, d.l_frame, d.n_rx, NoiseModel::white(1.0)) / d.l_frame).epsilon(1e-12));
  }
  SUBCASE("composition matches a Kronecker evaluation") {
    auto small = cfg;
    small.dims = SystemDims{2, 2, 2, 4};
    const auto sch = sample_channels({small.seed, 3}, small.dims, LinkDirection::Downlink);
    const CMatrix rs = small.target().r_corr;
    const double rho = 0.5;
    const auto pt = ma_isac_point(small, sch, rho);
    const auto mac = sum_power_iwf(sch.h, (1 - rho) * p, 1.0);
    CHECK(pt.cr == doctest::Approx(mac.sum_rate).epsilon(1e-10));

    CMatrix q_c = CMatrix::Zero(2, 2);
    for (const auto& q : mac.bc_covariances) q_c += q;
    const CMatrix q_s = sr_optimal_covariance(rs, rho * p, 1.0, 4, 2);
    const CMatrix noise = CMatrix::Identity(2, 2);
    const double both = oracles::sensing_mi_kron(rs, synthesize_waveform(q_s + q_c, 4), noise);
    const double nuisance = oracles::sensing_mi_kron(rs, synthesize_waveform(q_c, 4), noise);
    CHECK(pt.sr == doctest::Approx((both - nuisance) / 4).epsilon(1e-8));
  }
  CHECK_THROWS_AS(ma_isac_point(cfg, ch, 1.1), DomainError);
}

TEST_CASE("MA ISAC trades CR for SR monotonically in rho") {
  const auto cfg = ma_config();
  const auto rhos = unit_grid(11);
  for (std::uint64_t t = 0; t < 20; ++t) {
    const auto ch = sample_channels({cfg.seed, t}, cfg.dims, LinkDirection::Downlink);
    RatePoint prev = ma_isac_point(cfg, ch, rhos[0]);
    CHECK(prev.sr >= 0.0);
    for (std::size_t i = 1; i < rhos.size(); ++i) {
      const auto cur = ma_isac_point(cfg, ch, rhos[i]);
      CHECK(cur.cr <= prev.cr + 1e-9);
      CHECK(cur.sr >= prev.sr - 1e-9);
      CHECK(cur.sr >= 0.0);
      prev = cur;
    }
  }
}

TEST_CASE("MA FDSAC point") {
  const auto cfg = ma_config();
  const auto ch = sample_channels({cfg.seed, 1}, cfg.dims, LinkDirection::Downlink);
  const auto comm = ma_fdsac_point(cfg, ch, {1.0, 1.0});
  CHECK(comm.cr == doctest::Approx(sum_power_iwf(ch.h, cfg.power.p_total, 1.0).sum_rate).epsilon(1e-8));
  CHECK(comm.sr == 0.0);
  const auto sense = ma_fdsac_point(cfg, ch, {0.0, 0.0});
  CHECK(sense.cr == 0.0);
  CHECK(sense.sr == doctest::Approx(ma_isac_point(cfg, ch, 1.0).sr).epsilon(1e-12));

  // A band with share alpha and noise alpha sigma2 at budget kappa P.
  const FdsacSplit split{0.4, 0.3};
  const auto pt = ma_fdsac_point(cfg, ch, split);
  CMatrix scaled = ch.h / std::sqrt(split.alpha);
  const double direct = split.alpha * sum_power_iwf(scaled, split.kappa * cfg.power.p_total, 1.0).sum_rate;
  CHECK(pt.cr == doctest::Approx(direct).epsilon(1e-8));
}

TEST_CASE("region sweep labels and shape") {
  auto cfg = ma_config();
  cfg.rho_grid = 5;
  cfg.alpha_grid = cfg.kappa_grid = 4;
  cfg.mc_trials = 5;
  const auto isac = downlink_region_sweep(cfg, RegionMode::Isac);
  REQUIRE(!isac.points.empty());
  CHECK(isac.points.size() == isac.region.frontier.size());
  CHECK(isac.points.front().label.rfind("rho=", 0) == 0);
  const auto fdsac = downlink_region_sweep(cfg, RegionMode::Fdsac);
  CHECK(fdsac.points.front().label.rfind("alpha=", 0) == 0);
  CHECK_NOTHROW(fdsac.region.validate());
  CHECK(format_param(0.25) == "0.25");
}
