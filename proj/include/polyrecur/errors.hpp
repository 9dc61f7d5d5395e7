#ifndef POLYRECUR_ERRORS_HPP
#define POLYRECUR_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace polyrecur {

// Base class for all toolkit errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// A coefficient was not divisible in an exact polynomial division. In the
// auxiliary-polynomial pipeline this is an internal-consistency failure,
// never a legitimate outcome.
class NonIntegralDivision : public Error {
 public:
  NonIntegralDivision(std::size_t index, const mpz_class& coeff, const mpz_class& divisor)
      : Error("coefficient " + std::to_string(index) + " (" + coeff.get_str() +
              ") is not divisible by " + divisor.get_str()),
        coeff_index(index) {}
  std::size_t coeff_index;
};

// No root chain of the requested depth exists for a prime; evidence against
// the polynomial having a p-adic root.
class NoRootChain : public Error {
 public:
  NoRootChain(long prime, int dead_level)
      : Error("no root chain modulo " + std::to_string(prime) + "^" + std::to_string(dead_level)),
        prime(prime),
        dead_level(dead_level) {}
  long prime;
  int dead_level;  // smallest exponent j with no surviving root mod p^j
};

// A modulus has a prime factor the root system does not cover.
class UncoveredPrime : public Error {
 public:
  explicit UncoveredPrime(long prime)
      : Error("prime " + std::to_string(prime) + " is not covered by the root system"),
        prime(prime) {}
  long prime;
};

class InsufficientPrecision : public Error {
 public:
  InsufficientPrecision(const std::string& what, long needed, long have)
      : Error("insufficient precision for " + what + ": need " + std::to_string(needed) +
              ", have " + std::to_string(have)),
        needed(needed),
        have(have) {}
  long needed;
  long have;
};

// The lattice enumeration would exceed its point budget; the width parameter
// is too small or the basis too skew for direct summation.
class TruncationOverflow : public Error {
 public:
  TruncationOverflow(double estimated_points, std::size_t budget)
      : Error("lattice enumeration needs ~" + std::to_string(estimated_points) +
              " points, budget is " + std::to_string(budget)),
        estimated_points(estimated_points),
        budget(budget) {}
  double estimated_points;
  std::size_t budget;
};

// The two routes to the dual Gaussian mass constant disagree; signals a
// truncation or dual-basis error.
class PoissonMismatch : public Error {
 public:
  PoissonMismatch(double via_dual, double via_det)
      : Error("dual-mass routes disagree: " + std::to_string(via_dual) + " vs " +
              std::to_string(via_det)),
        via_dual(via_dual),
        via_det(via_det) {}
  double via_dual;
  double via_det;
};

// Every candidate n in [1, N] was a root of the polynomial while the search
// required a nonzero value.
class AllRootsInRange : public Error {
 public:
  explicit AllRootsInRange(long N)
      : Error("polynomial vanishes at every admissible n in [1, " + std::to_string(N) + "]"),
        N(N) {}
  long N;
};

class ConstantTermViolation : public Error {
 public:
  explicit ConstantTermViolation(std::size_t index)
      : Error("polynomial " + std::to_string(index) + " has a nonzero constant term"),
        poly_index(index) {}
  std::size_t poly_index;
};

class SingularBasis : public Error {
 public:
  explicit SingularBasis(const std::string& detail) : Error("singular basis: " + detail) {}
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& detail) : Error("config error: " + detail) {}
};

}  // namespace polyrecur

#endif  // POLYRECUR_ERRORS_HPP
