#include <hecke/errors.hpp>

namespace hecke {

const char* errc_name(errc c) {
  switch (c) {
    case errc::domain_error: return "DomainError";
    case errc::empty_domain: return "EmptyDomain";
    case errc::non_residue: return "NonResidue";
    case errc::inert: return "Inert";
    case errc::ramified: return "Ramified";
    case errc::capacity_exceeded: return "CapacityExceeded";
    case errc::unsupported_prime: return "UnsupportedPrime";
    case errc::degenerate_prime: return "DegeneratePrime";
    case errc::ramified_prime: return "RamifiedPrime";
    case errc::degree_zero: return "DegreeZero";
    case errc::parse_error: return "ParseError";
    case errc::insufficient_data: return "InsufficientData";
    case errc::incomplete_table: return "IncompleteTable";
    case errc::ramanujan_violation: return "RamanujanViolation";
    case errc::io_error: return "IoError";
  }
  return "UnknownError";
}

}  // namespace hecke
