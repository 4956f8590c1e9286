#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace hecke {

// Error vocabulary shared by all modules. The CLI maps codes to exit
// statuses (1 = validation, 2 = capacity) and machine-readable JSON.
enum class errc {
  domain_error,       // precondition violated
  empty_domain,       // e.g. prime limit < 2
  non_residue,        // sqrt_mod of a quadratic non-residue (inert signal)
  inert,              // cornacchia at p = 3 mod 4
  ramified,           // cornacchia at p = 2
  capacity_exceeded,  // series/memory budget; carries the feasible bound
  unsupported_prime,  // tabulated form queried beyond its table
  degenerate_prime,   // P = 0 mod p, rho undefined
  ramified_prime,     // factor_pattern at p | disc or p | lc
  degree_zero,        // constant polynomial
  parse_error,        // polynomial / form-spec syntax
  insufficient_data,  // fit window with < 4 checkpoints
  incomplete_table,   // rho table missing primes
  ramanujan_violation,
  io_error,           // cache file: bad magic/version/checksum
};

const char* errc_name(errc c);

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  errc code() const { return code_; }

 private:
  errc code_;
};

// Budget overruns report the largest feasible parameter so callers can retry.
class CapacityError : public Error {
 public:
  CapacityError(const std::string& what, uint64_t feasible)
      : Error(errc::capacity_exceeded, what), feasible_(feasible) {}
  uint64_t feasible() const { return feasible_; }

 private:
  uint64_t feasible_;
};

// Raised when a multiplicative evaluation meets a prime the provider
// cannot handle; carries the offending (n, prime) pair.
class UnsupportedPrimeError : public Error {
 public:
  UnsupportedPrimeError(const std::string& what, uint64_t n, const std::string& prime)
      : Error(errc::unsupported_prime, what), n_(n), prime_(prime) {}
  uint64_t at_n() const { return n_; }
  const std::string& prime() const { return prime_; }

 private:
  uint64_t n_;
  std::string prime_;
};

}  // namespace hecke
