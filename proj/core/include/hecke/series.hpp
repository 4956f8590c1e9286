#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <hecke/errors.hpp>

namespace hecke {

// Checkpointed partial sums (X_i, value_i), X strictly increasing.
struct SumSeries {
  std::string label;
  std::vector<std::pair<uint64_t, double>> checkpoints;

  double final_value() const {
    return checkpoints.empty() ? 0.0 : checkpoints.back().second;
  }
  double value_at(uint64_t x) const;  // exact checkpoint lookup
};

// Geometric checkpoint grid: round(start * ratio^k) clamped to x_max, with
// x_max itself always included.
std::vector<uint64_t> checkpoint_grid(uint64_t x_max, double ratio = 2.0, uint64_t start = 128);

struct FitResult {
  std::string label;
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  uint64_t window_lo = 0, window_hi = 0;
};

// Least squares of checkpoint values against log log X over checkpoints in
// [window_lo, window_hi]. Throws errc::insufficient_data below 4 points.
FitResult fit_loglog(const SumSeries& series, uint64_t window_lo, uint64_t window_hi);

// Same regression applied to log(value / X): the slope estimate for full
// (non-prime) sums growing like X log(X)^beta.
FitResult fit_loglog_of_ratio(const SumSeries& series, uint64_t window_lo, uint64_t window_hi);

}  // namespace hecke
