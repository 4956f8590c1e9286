#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include <hecke/forms.hpp>

namespace hecke {

// Dense table of normalized eigenvalues lambda(n), 1 <= n <= n_max, with
// exact integer coefficients a(n) alongside where they exist. raw[] stops
// at raw_len, the point where exact values would leave int64 (or the
// configured raw budget, whichever is smaller).
struct EigenTable {
  FormSpec spec;
  uint64_t n_max = 0;
  std::vector<double> lambda;  // lambda[n], index 0 unused
  std::vector<int64_t> raw;    // a(n), index 0 unused, valid for n <= raw_len
  uint64_t raw_len = 0;

  double lambda_at(uint64_t n) const { return lambda[n]; }
  bool has_raw() const { return raw_len > 0; }
};

struct BuildOptions {
  uint64_t series_budget = 10000000;  // dense series length cap
  uint64_t raw_budget = 20000;        // exact-coefficient pipeline cap
  // weight > 12 tables need a dense Eisenstein convolution, quadratic in
  // n_max, so they get a separate practical cap
  uint64_t eisenstein_budget = 200000;
};

// Throws CapacityError (with the feasible n_max) past the relevant budget.
EigenTable build_table(const FormSpec& spec, uint64_t n_max, const BuildOptions& opt = {});

// Closed-form lambda(p); throws errc::unsupported_prime for tabulated-only
// specs (Level1Holomorphic).
double lambda_at_prime(const FormSpec& spec, uint64_t p);
double lambda_at_prime_wide(const FormSpec& spec, u128 p);

// Hecke extension to prime powers for a trivial central character:
// unramified lambda(p^(e+1)) = lambda(p) lambda(p^e) - lambda(p^(e-1)),
// ramified lambda(p)^e. Forms with a nontrivial central character
// (TrivialQuadratic, general Isobaric) need the twisted recurrence; use
// EigenSource::lambda_prime_power for those.
double extend_prime_power(double lambda_p, int e, bool ramified);

// (p, alpha_p) with lambda(p) = 2 cos(2 pi alpha_p), alpha in [0, 1/2].
struct AngleSeries {
  std::vector<std::pair<uint64_t, double>> entries;
};

AngleSeries angles(const EigenTable& table, uint64_t p_max);

// Uniform evaluation handle: a spec plus an optional table. Closed-form
// specs work at any prime; tabulated specs are bounded by their table.
class EigenSource {
 public:
  explicit EigenSource(FormSpec spec);
  EigenSource(FormSpec spec, std::shared_ptr<const EigenTable> table);

  const FormSpec& spec() const { return spec_; }
  const EigenTable* table() const { return table_.get(); }
  bool closed_form() const { return closed_; }

  // largest prime this source can evaluate
  u128 prime_bound() const;

  double lambda_prime(u128 p) const;              // throws UnsupportedPrimeError
  double lambda_prime_power(u128 p, int e) const; // central-character aware

 private:
  FormSpec spec_;
  std::shared_ptr<const EigenTable> table_;
  bool closed_ = false;
};

}  // namespace hecke
