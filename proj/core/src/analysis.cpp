#include <hecke/analysis.hpp>

#include <algorithm>
#include <cmath>

#include <hecke/arith.hpp>

namespace hecke {

const char* prime_sum_kind_name(PrimeSumKind k) {
  switch (k) {
    case PrimeSumKind::S: return "S";
    case PrimeSumKind::T2: return "T2";
    case PrimeSumKind::T4: return "T4";
  }
  return "?";
}

namespace {

SumSeries checkpointed_prime_sum(uint64_t X, double ratio, const std::string& label,
                                 const std::function<double(uint64_t)>& term) {
  if (X < 2) throw Error(errc::empty_domain, "prime sum requires X >= 2");
  SumSeries out;
  out.label = label;
  auto grid = checkpoint_grid(X, ratio);
  size_t gi = 0;
  double sum = 0.0;
  PrimeStream ps(X);
  ps.for_each([&](uint64_t p) {
    while (gi < grid.size() && grid[gi] < p) {
      out.checkpoints.emplace_back(grid[gi], sum);
      ++gi;
    }
    sum += term(p);
    if (gi < grid.size() && grid[gi] == p) {
      out.checkpoints.emplace_back(grid[gi], sum);
      ++gi;
    }
  });
  while (gi < grid.size()) {
    out.checkpoints.emplace_back(grid[gi], sum);
    ++gi;
  }
  return out;
}

}  // namespace

SumSeries prime_sum(const EigenSource& src, PrimeSumKind kind, uint64_t X,
                    double checkpoint_ratio) {
  if (src.prime_bound() < X)
    throw UnsupportedPrimeError("prime sum needs eigenvalues up to X", 0, std::to_string(X));
  std::string label = std::string(prime_sum_kind_name(kind)) + ":" + form_token(src.spec());
  return checkpointed_prime_sum(X, checkpoint_ratio, label, [&](uint64_t p) -> double {
    if (is_ramified_prime(src.spec(), p)) return 0.0;
    double l = src.lambda_prime(p);
    switch (kind) {
      case PrimeSumKind::S: return (std::fabs(l) - 1.0) / static_cast<double>(p);
      case PrimeSumKind::T2: return (l * l - 1.0) / static_cast<double>(p);
      case PrimeSumKind::T4: return (l * l * l * l - 2.0) / static_cast<double>(p);
    }
    return 0.0;
  });
}

SumSeries weighted_prime_sum(const EigenSource& src, const RhoTable& rho, uint64_t X,
                             double checkpoint_ratio) {
  if (rho.p_max < X)
    throw Error(errc::incomplete_table, "rho table stops before X");
  if (src.prime_bound() < X)
    throw UnsupportedPrimeError("weighted prime sum needs eigenvalues up to X", 0,
                                std::to_string(X));
  // walk the rho entries in step with the prime stream
  size_t idx = 0;
  const auto& entries = rho.entries;
  std::string label = "rho-weighted:" + form_token(src.spec());
  return checkpointed_prime_sum(X, checkpoint_ratio, label, [&](uint64_t p) -> double {
    while (idx < entries.size() && entries[idx].first < p) ++idx;
    if (idx >= entries.size() || entries[idx].first != p) return 0.0;  // degenerate: excluded
    int rp = entries[idx].second;
    if (rp == 0 || is_ramified_prime(src.spec(), p)) return 0.0;
    double l = src.lambda_prime(p);
    return rp * (std::fabs(l) - 1.0) / static_cast<double>(p);
  });
}

// --- the delta constant ---------------------------------------------------------

double delta_objective(double y) {
  if (y < -1.0) throw Error(errc::domain_error, "g(y) needs y >= -1");
  if (std::fabs(y) < 1e-3) {
    // series for (1 + y/2 - sqrt(1+y)) / y^2 around 0
    return 0.125 + y * (-0.0625 + y * (0.0390625 + y * (-0.02734375)));
  }
  return (1.0 + 0.5 * y - std::sqrt(1.0 + y)) / (y * y);
}

DeltaResult delta_constant(double lo, double hi) {
  if (!(lo >= -1.0) || !(lo < hi))
    throw Error(errc::domain_error, "delta range needs -1 <= lo < hi");
  DeltaResult res;
  res.lo = lo;
  res.hi = hi;
  // grid scan at step <= 1e-4
  const int n = std::max(16, static_cast<int>(std::ceil((hi - lo) / 1e-4)));
  double best = delta_objective(lo);
  double besty = lo;
  for (int i = 1; i <= n; ++i) {
    double y = lo + (hi - lo) * i / n;
    double v = delta_objective(y);
    if (v < best) {
      best = v;
      besty = y;
    }
  }
  // golden-section refinement on the bracketing interval
  double a = std::max(lo, besty - (hi - lo) / n);
  double b = std::min(hi, besty + (hi - lo) / n);
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - gr * (b - a), d = a + gr * (b - a);
  double fc = delta_objective(c), fd = delta_objective(d);
  while (b - a > 1e-12) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - gr * (b - a);
      fc = delta_objective(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + gr * (b - a);
      fd = delta_objective(d);
    }
  }
  res.argmin = (a + b) / 2;
  res.value = delta_objective(res.argmin);
  if (best < res.value) {  // grid already at the endpoint minimum
    res.value = best;
    res.argmin = besty;
  }
  return res;
}

double pointwise_inequality_check(double delta, double grid_step) {
  if (grid_step > 1e-3) throw Error(errc::domain_error, "grid step must be <= 1e-3");
  double worst = -std::numeric_limits<double>::infinity();
  const int n = static_cast<int>(std::ceil(4.0 / grid_step));
  for (int i = 0; i <= n; ++i) {
    double t = -2.0 + 4.0 * i / n;
    double y = t * t - 1.0;
    double lhs = std::fabs(t) - 1.0;
    double rhs = 0.5 * y - delta * y * y;
    worst = std::max(worst, lhs - rhs);
  }
  return worst;
}

// --- moments ---------------------------------------------------------------------

namespace {

// Gauss-Legendre nodes/weights on [-1, 1] by Newton iteration on P_n.
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1);
      }
      pp = n * (z * p0 - p1) / (z * z - 1.0);
      double z1 = z;
      z = z1 - p0 / pp;
      if (std::fabs(z - z1) < 1e-15) break;
    }
    x[i] = -z;
    x[n - 1 - i] = z;
    w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
    w[n - 1 - i] = w[i];
  }
}

double integrate_panels(const std::function<double(double)>& f,
                        const std::vector<double>& breaks) {
  std::vector<double> gx, gw;
  gauss_legendre(64, gx, gw);
  double total = 0.0;
  for (size_t i = 0; i + 1 < breaks.size(); ++i) {
    double a = breaks[i], b = breaks[i + 1];
    double mid = (a + b) / 2, half = (b - a) / 2;
    double s = 0.0;
    for (size_t j = 0; j < gx.size(); ++j) s += gw[j] * f(mid + half * gx[j]);
    total += s * half;
  }
  return total;
}

}  // namespace

double st_moment(int k, AngleMeasure measure) {
  if (k != 1 && k != 2 && k != 4)
    throw Error(errc::domain_error, "moment order must be 1, 2 or 4");
  if (measure == AngleMeasure::sato_tate) {
    // (2/pi) int_0^pi |2 cos t|^k sin^2 t dt, split at the |cos| kink
    auto f = [k](double t) {
      double c = std::fabs(2.0 * std::cos(t));
      double s = std::sin(t);
      return std::pow(c, k) * s * s;
    };
    return (2.0 / M_PI) * integrate_panels(f, {0.0, M_PI / 2, M_PI});
  }
  // int_0^1 |2 cos(2 pi a)|^k da, kinks at 1/4 and 3/4
  auto f = [k](double a) {
    double c = std::fabs(2.0 * std::cos(2.0 * M_PI * a));
    return std::pow(c, k);
  };
  return integrate_panels(f, {0.0, 0.25, 0.5, 0.75, 1.0});
}

double empirical_moments(const EigenTable& table, int k, uint64_t p_max) {
  if (k != 1 && k != 2 && k != 4)
    throw Error(errc::domain_error, "moment order must be 1, 2 or 4");
  if (p_max > table.n_max)
    throw Error(errc::domain_error, "empirical moment needs p_max <= n_max");
  // unramified primes in the numerator, all primes in the denominator
  double sum = 0.0;
  uint64_t count = 0;
  PrimeStream ps(p_max);
  ps.for_each([&](uint64_t p) {
    ++count;
    if (is_ramified_prime(table.spec, p)) return;
    double v = std::fabs(table.lambda_at(p));
    double t = v;
    if (k >= 2) t = v * v;
    if (k == 4) t = t * t;
    sum += t;
  });
  if (count == 0) throw Error(errc::empty_domain, "no primes below p_max");
  return sum / static_cast<double>(count);
}

double cosine_identity_check(double grid_step) {
  if (grid_step > 1e-4) throw Error(errc::domain_error, "grid step must be <= 1e-4");
  double worst = -std::numeric_limits<double>::infinity();
  const int n = static_cast<int>(std::ceil(1.0 / grid_step));
  for (int i = 0; i <= n; ++i) {
    double a = static_cast<double>(i) / n;
    double lhs = std::fabs(2.0 * std::cos(2.0 * M_PI * a));
    double rhs = 1.5 + 0.5 * std::cos(4.0 * M_PI * a);
    worst = std::max(worst, lhs - rhs);
  }
  return worst;
}

}  // namespace hecke
