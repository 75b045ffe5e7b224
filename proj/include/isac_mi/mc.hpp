#pragma once

// Seeded channel generation and ergodic averaging.
//
// Trial t of a run draws from a generator derived only from (master_seed, t),
// so results do not depend on how trials are scheduled across workers.
// Reductions always run sequentially in trial order.

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "isac_mi/model.hpp"

namespace isac_mi {

struct TrialStream {
  std::uint64_t master_seed = 0;
  std::uint64_t trial_index = 0;

  std::mt19937_64 engine() const;
};

/// I.i.d. CN(0, 1) entries: downlink M x K, uplink N x K.
CommChannel sample_channels(const TrialStream& stream, const SystemDims& dims, LinkDirection direction);

struct ErgodicEstimate {
  RatePoint mean;
  RatePoint std_error;
};

using PointEvaluator = std::function<RatePoint(const CommChannel&)>;
/// Evaluates a whole sweep (one RatePoint per sweep position) on one channel draw.
using SweepEvaluator = std::function<std::vector<RatePoint>(const CommChannel&)>;

ErgodicEstimate ergodic_average(const ScenarioConfig& scenario, const PointEvaluator& evaluator, int trials);

/// Per-sweep-position mean and standard error. Every position of a trial sees
/// the same channel draw; each evaluator call must return the same length.
std::vector<ErgodicEstimate> ergodic_average_sweep(const ScenarioConfig& scenario,
                                                   const SweepEvaluator& evaluator, int trials);

/// Worker count from ISAC_MI_THREADS, else the hardware concurrency.
int worker_count();

/// Runs body(i) for i in [0, n) on up to `workers` threads. The first
/// exception thrown by any call is rethrown after all workers stop.
void parallel_for(int n, int workers, const std::function<void(int)>& body);

LinkDirection link_direction(ScenarioKind kind);

}  // namespace isac_mi
