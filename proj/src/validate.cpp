#include "isac_mi/validate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>

#include "isac_mi/downlink.hpp"
#include "isac_mi/mc.hpp"
#include "isac_mi/mi_core.hpp"
#include "isac_mi/oracles.hpp"

namespace isac_mi {
namespace {

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : eng_(seed) {}
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(eng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(eng_); }
  std::uint64_t seed() { return eng_(); }

 private:
  std::mt19937_64 eng_;
};

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << v;
  return os.str();
}

CheckResult make(std::string name, bool ok, const std::string& detail) {
  return {std::move(name), ok, detail};
}

}  // namespace

WaterFillFn default_water_fill() {
  return [](std::span<const double> g, double budget, double noise) { return water_fill(g, budget, noise); };
}

WaterFillFn sign_flipped_water_fill() {
  return [](std::span<const double> g, double budget, double noise) {
    auto r = water_fill(g, budget, noise);
    for (std::size_t i = 0; i < g.size(); ++i) r.allocations[i] = std::max(0.0, r.water_level + noise / g[i]);
    return r;
  };
}

CheckResult check_water_fill_kkt(int instances, std::uint64_t seed, double slack_tol, double budget_tol,
                                 const WaterFillFn& fill) {
  Sampler rng(seed);
  double worst_slack = 0.0, worst_budget = 0.0;
  bool ok = true;
  for (int t = 0; t < instances; ++t) {
    const int n = rng.integer(1, 8);
    std::vector<double> gains(static_cast<std::size_t>(n));
    for (double& g : gains) g = std::exp(rng.uniform(-3.0, 3.0));
    const double budget = rng.uniform(0.0, 1.0) < 0.05 ? 0.0 : rng.uniform(0.0, 20.0);
    const double noise = std::exp(rng.uniform(-2.0, 2.0));
    const auto res = fill(gains, budget, noise);
    const double mu = res.water_level;
    double total = 0.0;
    for (std::size_t i = 0; i < gains.size(); ++i) {
      const double q = res.allocations[i];
      const double floor = noise / gains[i];
      total += q;
      if (q < 0.0) ok = false;
      const double slack = q > 0.0 ? std::abs(floor + q - mu) : std::max(0.0, mu - floor);
      worst_slack = std::max(worst_slack, slack);
    }
    worst_budget = std::max(worst_budget, std::abs(total - budget));
  }
  ok = ok && worst_slack <= slack_tol && worst_budget <= budget_tol;
  return make("water_fill.kkt", ok,
              std::to_string(instances) + " instances, max slackness " + fmt(worst_slack) + ", max budget error " +
                  fmt(worst_budget));
}

CheckResult check_water_fill_grid(int instances, std::uint64_t seed, double tol_bits, const WaterFillFn& fill) {
  Sampler rng(seed);
  double worst = 0.0;
  for (int t = 0; t < instances; ++t) {
    const int n = rng.integer(1, 3);
    std::vector<double> gains(static_cast<std::size_t>(n));
    for (double& g : gains) g = std::exp(rng.uniform(-1.5, 1.5));
    const double budget = rng.uniform(0.1, 5.0);
    const double noise = std::exp(rng.uniform(-1.0, 1.0));
    const auto res = fill(gains, budget, noise);
    const double got = oracles::water_fill_objective(gains, res.allocations, noise);
    const double ref = oracles::water_fill_grid_max(gains, budget, noise, 200, 6);
    worst = std::max(worst, std::abs(got - ref));
  }
  return make("water_fill.grid", worst <= tol_bits,
              std::to_string(instances) + " instances (n <= 3), max |objective - grid max| " + fmt(worst) + " bits");
}

CheckResult check_comm_mi_oracle(int instances, std::uint64_t seed, double tol) {
  Sampler rng(seed);
  double worst = 0.0;
  for (int t = 0; t < instances; ++t) {
    const int n = rng.integer(1, 4);
    const int k = rng.integer(1, 3);
    const CMatrix h = oracles::random_gaussian(n, k, rng.seed());
    std::vector<double> p(static_cast<std::size_t>(k));
    for (double& v : p) v = rng.uniform(0.0, 5.0);
    const bool colored = t % 2 == 1;
    const CMatrix cov = colored ? CMatrix(oracles::random_psd(n, n, rng.seed()) + 0.3 * CMatrix::Identity(n, n))
                                : CMatrix(0.7 * CMatrix::Identity(n, n));
    const auto noise = colored ? NoiseModel::colored(cov) : NoiseModel::white(0.7);
    const double got = comm_mi(h, p, noise);
    worst = std::max({worst, std::abs(got - oracles::comm_mi_direct(h, p, cov)),
                      std::abs(got - oracles::comm_mi_eig(h, p, cov))});
  }
  return make("comm_mi.oracle", worst <= tol,
              std::to_string(instances) + " instances, max |comm_mi - log-det oracles| " + fmt(worst));
}

CheckResult check_sic_sum_identity(int instances, std::uint64_t seed, double tol) {
  Sampler rng(seed);
  double worst = 0.0;
  int orders = 0;
  for (int t = 0; t < instances; ++t) {
    const int n = rng.integer(1, 4);
    const int k = rng.integer(1, 3);
    const CMatrix h = oracles::random_gaussian(n, k, rng.seed());
    std::vector<double> p(static_cast<std::size_t>(k));
    for (double& v : p) v = rng.uniform(0.0, 1.0) < 0.1 ? 0.0 : rng.uniform(0.0, 10.0);
    const auto noise = t % 2 == 1
                           ? NoiseModel::colored(oracles::random_psd(n, n, rng.seed()) + 0.5 * CMatrix::Identity(n, n))
                           : NoiseModel::white(rng.uniform(0.2, 2.0));
    const double total = comm_mi(h, p, noise);
    std::vector<int> order(static_cast<std::size_t>(k));
    std::iota(order.begin(), order.end(), 0);
    do {
      const auto rates = mmse_sic_user_rates(h, p, noise, order);
      worst = std::max(worst, std::abs(std::accumulate(rates.begin(), rates.end(), 0.0) - total));
      ++orders;
    } while (std::next_permutation(order.begin(), order.end()));
  }
  return make("sic.sum_identity", worst <= tol,
              std::to_string(instances) + " instances, " + std::to_string(orders) +
                  " decoding orders, max |sum of SIC rates - comm_mi| " + fmt(worst));
}

CheckResult check_sensing_kronecker(int instances, std::uint64_t seed, double tol) {
  Sampler rng(seed);
  double worst = 0.0, worst_gram = 0.0, worst_slot = 0.0;
  for (int t = 0; t < instances; ++t) {
    const int m = rng.integer(1, 3);
    const int n = rng.integer(1, 3);
    const int l = m + rng.integer(0, 3);
    const CMatrix r = t % 3 == 0 ? exp_corr_matrix(m, rng.uniform(0.0, 0.95)).r_corr
                                 : CMatrix(oracles::random_psd(m, m, rng.seed()));
    const CMatrix q = oracles::random_psd(m, rng.uniform(0.1, 10.0), rng.seed(), rng.integer(1, m));
    const bool colored = t % 2 == 1;
    const CMatrix cov = colored ? CMatrix(oracles::random_psd(n, n, rng.seed()) + 0.3 * CMatrix::Identity(n, n))
                                : CMatrix(1.3 * CMatrix::Identity(n, n));
    const auto noise = colored ? NoiseModel::colored(cov) : NoiseModel::white(1.3);

    const CMatrix w = synthesize_waveform(q, l);
    worst_gram = std::max(worst_gram, (w * w.adjoint() - static_cast<double>(l) * q).norm());
    const double slot0 = w.col(0).squaredNorm();
    for (int s = 1; s < l; ++s) worst_slot = std::max(worst_slot, std::abs(w.col(s).squaredNorm() - slot0));

    const double got = sensing_mi(r, q, l, n, noise);
    worst = std::max(worst, std::abs(got - oracles::sensing_mi_kron(r, w, cov)));
  }
  const bool ok = worst <= tol && worst_gram <= 1e-9 && worst_slot <= 1e-9;
  return make("sensing.kronecker", ok,
              std::to_string(instances) + " instances (half colored), max |cross-sum - NL log-det| " + fmt(worst) +
                  ", waveform Gram error " + fmt(worst_gram) + ", slot power spread " + fmt(worst_slot));
}

CheckResult check_duality(int instances, std::uint64_t seed, double rate_tol, double trace_tol) {
  Sampler rng(seed);
  double worst_rate = 0.0, worst_trace = 0.0;
  for (int t = 0; t < instances; ++t) {
    const int m = rng.integer(2, 4);
    const int k = rng.integer(2, 3);
    const CMatrix h = oracles::random_gaussian(m, k, rng.seed());
    const double sigma2 = std::exp(rng.uniform(-1.0, 1.0));
    std::vector<double> p(static_cast<std::size_t>(k));
    for (double& v : p) v = rng.uniform(0.0, 10.0);
    const auto bc = mac_to_bc_transform(h, p, sigma2);
    const auto rates = dpc_rates(h, bc.covariances, bc.encoding_order, sigma2);
    const double mac = oracles::comm_mi_direct(h, p, sigma2 * CMatrix::Identity(m, m));
    worst_rate = std::max(worst_rate, std::abs(std::accumulate(rates.begin(), rates.end(), 0.0) - mac));
    double trace = 0.0;
    for (const auto& q : bc.covariances) trace += q.trace().real();
    worst_trace = std::max(worst_trace, std::abs(trace - std::accumulate(p.begin(), p.end(), 0.0)));
  }
  return make("duality.mac_bc", worst_rate <= rate_tol && worst_trace <= trace_tol,
              std::to_string(instances) + " instances, max |DPC sum - MAC sum| " + fmt(worst_rate) +
                  ", max power mismatch " + fmt(worst_trace));
}

CheckResult check_iwf_grid(int instances, std::uint64_t seed, double tol_bits) {
  Sampler rng(seed);
  double worst = 0.0;
  for (int t = 0; t < instances; ++t) {
    const CMatrix h = oracles::random_gaussian(2, 2, rng.seed());
    const double budget = rng.uniform(0.5, 10.0);
    const auto sol = sum_power_iwf(h, budget, 1.0);
    worst = std::max(worst, std::abs(sol.sum_rate - oracles::mac_grid_max(h, budget, 1.0, 1000)));
  }
  return make("iwf.grid", worst <= tol_bits,
              std::to_string(instances) + " instances (K = M = 2), max |IWF - grid max| " + fmt(worst) + " bits");
}

CheckResult check_sa_dominance(std::span<const std::uint64_t> seeds, int trials, double tol) {
  bool ok = true;
  long points = 0;
  double worst = -std::numeric_limits<double>::infinity();
  for (std::uint64_t seed : seeds) {
    ScenarioConfig cfg = default_scenario(ScenarioKind::DownlinkSa);
    cfg.seed = seed;
    cfg.mc_trials = trials;
    const auto alphas = unit_grid(cfg.alpha_grid);
    const auto kappas = unit_grid(cfg.kappa_grid);
    for (int t = 0; t < trials; ++t) {
      const auto ch = sample_channels({seed, static_cast<std::uint64_t>(t)}, cfg.dims, LinkDirection::Downlink);
      const RatePoint corner = sa_isac_corner(cfg, ch);
      for (double a : alphas) {
        for (double k : kappas) {
          const RatePoint p = sa_fdsac_point(cfg, ch, {a, k});
          worst = std::max({worst, p.cr - corner.cr, p.sr - corner.sr});
          ++points;
        }
      }
    }
    const auto corner = sa_isac_corner(cfg).mean;
    for (const auto& p : downlink_region_sweep(cfg, RegionMode::Fdsac).points) {
      worst = std::max({worst, p.mean.cr - corner.cr, p.mean.sr - corner.sr});
    }
  }
  ok = worst <= tol;
  return make("downlink_sa.dominance", ok,
              std::to_string(seeds.size()) + " seeds, " + std::to_string(points) +
                  " per-trial FDSAC points, max excess over P_o " + fmt(worst));
}

std::vector<CheckResult> run_validation(const ValidationOptions& options, std::ostream& out) {
  const WaterFillFn fill = options.inject_water_fill_sign_error ? sign_flipped_water_fill() : default_water_fill();
  const std::vector<std::uint64_t> sa_seeds{20240001, 7, 1234567};

  const std::vector<std::pair<const char*, std::function<CheckResult()>>> checks{
      {"water_fill.kkt", [&] { return check_water_fill_kkt(1000, 101, 1e-8, 1e-10, fill); }},
      {"water_fill.grid", [&] { return check_water_fill_grid(100, 102, 1e-4, fill); }},
      {"comm_mi.oracle", [] { return check_comm_mi_oracle(100, 103, 1e-10); }},
      {"sic.sum_identity", [] { return check_sic_sum_identity(100, 104, 1e-9); }},
      {"sensing.kronecker", [] { return check_sensing_kronecker(100, 105, 1e-8); }},
      {"duality.mac_bc", [] { return check_duality(100, 106, 1e-8, 1e-6); }},
      {"iwf.grid", [] { return check_iwf_grid(10, 107, 1e-4); }},
      {"downlink_sa.dominance", [&] { return check_sa_dominance(sa_seeds, 40, 1e-9); }},
  };

  std::vector<CheckResult> results;
  for (const auto& [name, check] : checks) {
    CheckResult r;
    try {
      r = check();
    } catch (const std::exception& e) {
      r = {name, false, std::string("threw: ") + e.what()};
    }
    out << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.detail << '\n';
    results.push_back(std::move(r));
  }
  return results;
}

}  // namespace isac_mi
