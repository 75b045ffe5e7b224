#include "isac_mi/mc.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>

namespace isac_mi {

std::mt19937_64 TrialStream::engine() const {
  auto lo = [](std::uint64_t v) { return static_cast<std::uint32_t>(v & 0xffffffffu); };
  auto hi = [](std::uint64_t v) { return static_cast<std::uint32_t>(v >> 32); };
  std::seed_seq seq{lo(master_seed), hi(master_seed), lo(trial_index), hi(trial_index), 0x15acu};
  return std::mt19937_64(seq);
}

CommChannel sample_channels(const TrialStream& stream, const SystemDims& dims, LinkDirection direction) {
  dims.validate();
  auto eng = stream.engine();
  std::normal_distribution<double> gauss(0.0, std::sqrt(0.5));
  const int rows = direction == LinkDirection::Downlink ? dims.m_tx : dims.n_rx;
  CommChannel ch{direction, CMatrix(rows, dims.k_users)};
  for (int k = 0; k < dims.k_users; ++k) {
    for (int r = 0; r < rows; ++r) {
      const double re = gauss(eng);
      const double im = gauss(eng);
      ch.h(r, k) = Complex(re, im);
    }
  }
  return ch;
}

LinkDirection link_direction(ScenarioKind kind) {
  return kind == ScenarioKind::Uplink ? LinkDirection::Uplink : LinkDirection::Downlink;
}

int worker_count() {
  if (const char* env = std::getenv("ISAC_MI_THREADS")) {
    try {
      const int n = std::stoi(env);
      if (n >= 1) return n;
    } catch (const std::exception&) {
    }
  }
  const auto hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

void parallel_for(int n, int workers, const std::function<void(int)>& body) {
  if (n <= 0) return;
  workers = std::max(1, std::min(workers, n));
  if (workers == 1) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto run = [&] {
    for (int i = next++; i < n && !failed; i = next++) {
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        failed = true;
      }
    }
  };
  std::vector<std::jthread> pool;
  pool.reserve(static_cast<std::size_t>(workers - 1));
  for (int w = 1; w < workers; ++w) pool.emplace_back(run);
  run();
  pool.clear();
  if (error) std::rethrow_exception(error);
}

std::vector<ErgodicEstimate> ergodic_average_sweep(const ScenarioConfig& scenario,
                                                   const SweepEvaluator& evaluator, int trials) {
  if (trials < 1) throw DomainError("ergodic_average: trials must be >= 1");
  const auto direction = link_direction(scenario.kind);
  std::vector<std::vector<RatePoint>> per_trial(static_cast<std::size_t>(trials));
  parallel_for(trials, worker_count(), [&](int t) {
    const TrialStream stream{scenario.seed, static_cast<std::uint64_t>(t)};
    per_trial[static_cast<std::size_t>(t)] = evaluator(sample_channels(stream, scenario.dims, direction));
  });

  const std::size_t width = per_trial.front().size();
  for (const auto& row : per_trial) {
    if (row.size() != width) throw DomainError("ergodic_average: evaluator returned ragged sweeps");
  }

  // Welford accumulation, strictly in trial order per sweep position.
  std::vector<ErgodicEstimate> out(width);
  for (std::size_t g = 0; g < width; ++g) {
    double mean_cr = 0.0, mean_sr = 0.0, m2_cr = 0.0, m2_sr = 0.0;
    for (int t = 0; t < trials; ++t) {
      const RatePoint& x = per_trial[static_cast<std::size_t>(t)][g];
      const double n = t + 1.0;
      const double d_cr = x.cr - mean_cr;
      const double d_sr = x.sr - mean_sr;
      mean_cr += d_cr / n;
      mean_sr += d_sr / n;
      m2_cr += d_cr * (x.cr - mean_cr);
      m2_sr += d_sr * (x.sr - mean_sr);
    }
    out[g].mean = {mean_cr, mean_sr};
    if (trials > 1) {
      const double denom = static_cast<double>(trials) * (trials - 1);
      out[g].std_error = {std::sqrt(std::max(0.0, m2_cr) / denom), std::sqrt(std::max(0.0, m2_sr) / denom)};
    }
  }
  return out;
}

ErgodicEstimate ergodic_average(const ScenarioConfig& scenario, const PointEvaluator& evaluator, int trials) {
  auto sweep = ergodic_average_sweep(
      scenario, [&](const CommChannel& ch) { return std::vector<RatePoint>{evaluator(ch)}; }, trials);
  return sweep.front();
}

}  // namespace isac_mi
