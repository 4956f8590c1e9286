#pragma once

#include <cstdint>

#include <hecke/eigen.hpp>
#include <hecke/poly.hpp>
#include <hecke/series.hpp>

namespace hecke {

// Prime sums over unramified p <= X, checkpointed:
//   S:  (|lambda(p)| - 1) / p
//   T2: (lambda(p)^2 - 1) / p
//   T4: (lambda(p)^4 - 2) / p
enum class PrimeSumKind { S, T2, T4 };

const char* prime_sum_kind_name(PrimeSumKind k);

SumSeries prime_sum(const EigenSource& src, PrimeSumKind kind, uint64_t X,
                    double checkpoint_ratio = 2.0);

// sum_{p<=X} rho(p) (|lambda(p)| - 1) / p, the base-change comparison sum.
SumSeries weighted_prime_sum(const EigenSource& src, const RhoTable& rho, uint64_t X,
                             double checkpoint_ratio = 2.0);

// delta = inf of g(y) = y^-2 (1 + y/2 - sqrt(1+y)) over [lo, hi]; the
// removable singularity at 0 takes the limit value 1/8. Grid scan at
// step 1e-4 plus golden-section refinement.
struct DeltaResult {
  double lo = 0, hi = 0;
  double value = 0;
  double argmin = 0;
};

DeltaResult delta_constant(double lo, double hi);

double delta_objective(double y);  // g above, series-patched near 0

// max over t in [-2,2] of (|t|-1) - [ (t^2-1)/2 - delta (t^2-1)^2 ];
// positive means the pointwise moment inequality fails for this delta.
double pointwise_inequality_check(double delta, double grid_step = 1e-3);

// Moments of |2 cos theta| against the Sato-Tate (sin^2) or uniform-angle
// measure, by Gauss-Legendre quadrature on kink-free panels. k in {1,2,4}.
enum class AngleMeasure { sato_tate, uniform_angle };

double st_moment(int k, AngleMeasure measure);

// (1/pi(p_max)) sum_{p<=p_max unramified} |lambda(p)|^k from a table.
double empirical_moments(const EigenTable& table, int k, uint64_t p_max);

// max over the alpha grid of 2|cos(2 pi a)| - 3/2 - cos(4 pi a)/2; the
// identity makes this <= 0 everywhere.
double cosine_identity_check(double grid_step = 1e-4);

}  // namespace hecke
