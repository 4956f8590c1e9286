#include <hecke/series.hpp>

#include <cmath>

namespace hecke {

double SumSeries::value_at(uint64_t x) const {
  for (const auto& [cx, v] : checkpoints)
    if (cx == x) return v;
  throw Error(errc::domain_error, "no checkpoint at X = " + std::to_string(x));
}

std::vector<uint64_t> checkpoint_grid(uint64_t x_max, double ratio, uint64_t start) {
  if (ratio <= 1.0) throw Error(errc::domain_error, "checkpoint ratio must be > 1");
  std::vector<uint64_t> grid;
  double x = static_cast<double>(start);
  while (x < static_cast<double>(x_max)) {
    uint64_t xi = static_cast<uint64_t>(std::llround(x));
    if (xi >= x_max) break;
    if (grid.empty() || xi > grid.back()) grid.push_back(xi);
    x *= ratio;
  }
  if (grid.empty() || grid.back() != x_max) grid.push_back(x_max);
  return grid;
}

namespace {

FitResult fit_points(const std::vector<std::pair<double, double>>& pts, const std::string& label,
                     uint64_t lo, uint64_t hi) {
  if (pts.size() < 4)
    throw Error(errc::insufficient_data,
                "fit window [" + std::to_string(lo) + ", " + std::to_string(hi) + "] has " +
                    std::to_string(pts.size()) + " checkpoints; need >= 4");
  double n = static_cast<double>(pts.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  for (auto [x, y] : pts) {
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    syy += y * y;
  }
  double vx = sxx - sx * sx / n;
  double vy = syy - sy * sy / n;
  double cxy = sxy - sx * sy / n;
  if (vx <= 0)
    throw Error(errc::insufficient_data, "degenerate fit window (constant regressor)");
  FitResult f;
  f.label = label;
  f.slope = cxy / vx;
  f.intercept = (sy - f.slope * sx) / n;
  f.r_squared = vy > 0 ? (cxy * cxy) / (vx * vy) : 1.0;
  f.window_lo = lo;
  f.window_hi = hi;
  return f;
}

}  // namespace

FitResult fit_loglog(const SumSeries& series, uint64_t window_lo, uint64_t window_hi) {
  std::vector<std::pair<double, double>> pts;
  for (const auto& [x, v] : series.checkpoints)
    if (x >= window_lo && x <= window_hi)
      pts.emplace_back(std::log(std::log(static_cast<double>(x))), v);
  return fit_points(pts, series.label, window_lo, window_hi);
}

FitResult fit_loglog_of_ratio(const SumSeries& series, uint64_t window_lo, uint64_t window_hi) {
  std::vector<std::pair<double, double>> pts;
  for (const auto& [x, v] : series.checkpoints)
    if (x >= window_lo && x <= window_hi && v > 0)
      pts.emplace_back(std::log(std::log(static_cast<double>(x))),
                       std::log(v / static_cast<double>(x)));
  return fit_points(pts, series.label + "/x", window_lo, window_hi);
}

}  // namespace hecke
