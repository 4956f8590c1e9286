#include <hecke/galois.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include <hecke/factor_sieve.hpp>
#include <hecke/parallel.hpp>

namespace hecke {

// --- dihedral character averages ------------------------------------------------

void validate(const DihedralSpec& spec) {
  if (spec.n < 3)
    throw Error(errc::domain_error, "D_{2n} needs n >= 3 for 2-dimensional irreducibles");
  if (spec.a < 1 || 2 * spec.a >= spec.n)
    throw Error(errc::domain_error,
                "irrep index must satisfy 1 <= a < n/2 (a = " + std::to_string(spec.a) +
                    ", n = " + std::to_string(spec.n) + ")");
}

namespace {

// |2 cos(2 pi m / n)|, exact for the rational cosine denominators
double abs_two_cos(uint64_t m, uint64_t n) {
  m %= n;
  uint64_t g = std::gcd(m, n);
  uint64_t num = m / g, den = n / g;
  switch (den) {
    case 1: return 2.0;                    // cos 0
    case 2: return 2.0;                    // cos pi
    case 3: return 1.0;                    // cos(2pi/3)
    case 4: return 0.0;                    // cos(pi/2)
    case 6: return 1.0;                    // cos(pi/3)
    default:
      return std::fabs(2.0 * std::cos(2.0 * M_PI * static_cast<double>(num) /
                                      static_cast<double>(den)));
  }
}

}  // namespace

double dihedral_char_average(const DihedralSpec& spec, int power) {
  validate(spec);
  if (power != 1 && power != 2)
    throw Error(errc::domain_error, "character power must be 1 or 2");
  const uint64_t n = spec.n;
  if (power == 2) {
    // sum over rotations of |chi|^2 = sum (2 + 2 cos(4 pi a j / n)); the
    // cosine sum is n if n | 2a and 0 otherwise, and reflections give 0,
    // so the integer numerator is exactly 2n for an irreducible index
    uint64_t numerator = 2 * n + (2 * spec.a % n == 0 ? 2 * n : 0);
    return static_cast<double>(numerator) / static_cast<double>(2 * n);
  }
  double s = 0.0;
  for (uint64_t j = 0; j < n; ++j) s += abs_two_cos(spec.a * j, n);
  return s / static_cast<double>(2 * n);
}

// --- Chebotarev statistics -------------------------------------------------------

double ClassFrequencies::freq(const std::string& pattern_key) const {
  for (const auto& [k, c] : counts)
    if (k == pattern_key)
      return sample_size > 0 ? static_cast<double>(c) / static_cast<double>(sample_size) : 0.0;
  return 0.0;
}

ClassFrequencies chebotarev_stats(const Poly& P, uint64_t X) {
  if (X < 100) throw Error(errc::domain_error, "chebotarev_stats requires X >= 100");
  ClassFrequencies out;
  out.x_max = X;

  const uint64_t block = PrimeStream::kSegmentSize;
  size_t nblocks = static_cast<size_t>((X - 1) / block) + 1;
  struct Part {
    std::map<std::string, uint64_t> counts;
    uint64_t ramified = 0, degenerate = 0, samples = 0;
  };
  std::vector<Part> parts(nblocks);
  PrimeStream ps(X);
  parallel_blocks(2, X + 1, block, [&](size_t b, uint64_t lo, uint64_t hi) {
    ps.for_each_in(lo, hi, [&](uint64_t p) {
      try {
        FactorizationPattern pat = factor_pattern(P, p);
        ++parts[b].counts[pat.key()];
        ++parts[b].samples;
      } catch (const Error& e) {
        if (e.code() == errc::ramified_prime)
          ++parts[b].ramified;
        else if (e.code() == errc::degenerate_prime)
          ++parts[b].degenerate;
        else
          throw;
      }
    });
  });
  std::map<std::string, uint64_t> merged;
  for (const auto& part : parts) {
    for (const auto& [k, c] : part.counts) merged[k] += c;
    out.ramified_skipped += part.ramified;
    out.degenerate_skipped += part.degenerate;
    out.sample_size += part.samples;
  }
  out.counts.assign(merged.begin(), merged.end());
  return out;
}

// --- quadratic ideal counting ------------------------------------------------------

int64_t ideal_count_rF(int64_t d, uint64_t n) {
  if (n < 1) throw Error(errc::domain_error, "ideal count needs n >= 1");
  if (d != 1 && !is_fundamental_discriminant(d))
    throw Error(errc::domain_error, "discriminant must be fundamental");
  // divisor sum of kronecker(d, .): factor n, then expand divisors
  int64_t total = 0;
  std::vector<std::pair<uint64_t, int>> fac;
  uint64_t m = n;
  for (uint64_t q = 2; q * q <= m; q == 2 ? q = 3 : q += 2) {
    if (m % q == 0) {
      int e = 0;
      while (m % q == 0) {
        m /= q;
        ++e;
      }
      fac.emplace_back(q, e);
    }
  }
  if (m > 1) fac.emplace_back(m, 1);
  std::vector<uint64_t> divisors{1};
  for (auto [p, e] : fac) {
    size_t sz = divisors.size();
    uint64_t pw = 1;
    for (int i = 1; i <= e; ++i) {
      pw *= p;
      for (size_t j = 0; j < sz; ++j) divisors.push_back(divisors[j] * pw);
    }
  }
  for (uint64_t div : divisors) total += kronecker(d, div);
  return total;
}

// --- character prime sums -----------------------------------------------------------

SumSeries char_prime_sum(const CharSpec& chi, uint64_t X, double checkpoint_ratio) {
  if (chi.trivial())
    throw Error(errc::domain_error, "character prime sum needs a nontrivial character");
  if (X < 2) throw Error(errc::empty_domain, "character prime sum requires X >= 2");
  SumSeries out;
  out.label = "char-sum:" + std::to_string(chi.d);
  auto grid = checkpoint_grid(X, checkpoint_ratio);
  size_t gi = 0;
  double sum = 0.0;
  PrimeStream ps(X);
  ps.for_each([&](uint64_t p) {
    while (gi < grid.size() && grid[gi] < p) {
      out.checkpoints.emplace_back(grid[gi], sum);
      ++gi;
    }
    sum += chi.at(p);
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

// --- noncuspidal lower bound ---------------------------------------------------------

NoncuspidalLowerBound noncuspidal_lower_bound(const Poly& P, int64_t d, uint64_t X, uint64_t B,
                                              double checkpoint_ratio) {
  if (!is_fundamental_discriminant(d))
    throw Error(errc::domain_error, "discriminant must be fundamental");
  SquarefreeScreen screen = squarefree_screen(P, X, B);
  NoncuspidalLowerBound res;
  res.series.label = "noncuspidal-lb:" + std::to_string(d) + ":" + P.to_string();
  auto grid = checkpoint_grid(X, checkpoint_ratio);
  size_t gi = 0;

  FactorSieve sieve(P, X);
  sieve.for_each([&](const ValueFactorization& vf) {
    switch (screen.at(vf.n)) {
      case SquarefreeVerdict::zero_value:
        ++res.zero_values;
        break;
      case SquarefreeVerdict::has_small_square:
        ++res.screened_out;
        break;
      case SquarefreeVerdict::squarefree_up_to_b: {
        // r_F is multiplicative: split p gives e+1 ideals of norm p^e,
        // inert gives one for even e, ramified exactly one
        int64_t r = 1;
        for (auto [p, e] : vf.factors) {
          int chi = kronecker(d, p);
          if (chi == 1)
            r *= (e + 1);
          else if (chi == -1 && e % 2 == 1)
            r = 0;
          if (r == 0) break;
        }
        if (r != 0 && vf.cofactor > 1) {
          int chi = kronecker(d, (i128)vf.cofactor);
          if (chi == 1)
            r *= 2;
          else if (chi == -1)
            r = 0;
        }
        res.total += static_cast<double>(r);
        ++res.terms;
        break;
      }
    }
    while (gi < grid.size() && vf.n == grid[gi]) {
      res.series.checkpoints.emplace_back(grid[gi], res.total);
      ++gi;
    }
  });
  return res;
}

}  // namespace hecke
