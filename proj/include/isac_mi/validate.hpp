#pragma once

// Oracle and property checks behind `isac-mi validate`. Every check takes its
// instance count and tolerance explicitly so callers pin them.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "isac_mi/alloc.hpp"

namespace isac_mi {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

using WaterFillFn = std::function<WaterFillResult(std::span<const double>, double, double)>;

/// The library water_fill.
WaterFillFn default_water_fill();
/// water_fill with the sign of the channel floor flipped, for fault injection.
WaterFillFn sign_flipped_water_fill();

CheckResult check_water_fill_kkt(int instances, std::uint64_t seed, double slack_tol, double budget_tol,
                                 const WaterFillFn& fill);
CheckResult check_water_fill_grid(int instances, std::uint64_t seed, double tol_bits, const WaterFillFn& fill);
CheckResult check_comm_mi_oracle(int instances, std::uint64_t seed, double tol);
CheckResult check_sic_sum_identity(int instances, std::uint64_t seed, double tol);
CheckResult check_sensing_kronecker(int instances, std::uint64_t seed, double tol);
CheckResult check_duality(int instances, std::uint64_t seed, double rate_tol, double trace_tol);
CheckResult check_iwf_grid(int instances, std::uint64_t seed, double tol_bits);
/// Every downlink-SA FDSAC grid point is dominated by P_o, per trial and in
/// the ergodic mean, for each listed seed.
CheckResult check_sa_dominance(std::span<const std::uint64_t> seeds, int trials, double tol);

struct ValidationOptions {
  bool inject_water_fill_sign_error = false;
};

/// Runs the full suite, printing one PASS/FAIL line per check.
std::vector<CheckResult> run_validation(const ValidationOptions& options, std::ostream& out);

}  // namespace isac_mi
