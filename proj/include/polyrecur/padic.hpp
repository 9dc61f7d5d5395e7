#ifndef POLYRECUR_PADIC_HPP
#define POLYRECUR_PADIC_HPP

#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "polyrecur/int_poly.hpp"

namespace polyrecur {

// Per-prime chain of compatible root approximations of a fixed polynomial:
// residues[j] is a root mod p^(j+1) and residues[j+1] reduces to residues[j]
// mod p^(j+1). multiplicity is the order of vanishing at the chosen root,
// i.e. the smallest j >= 1 whose j-th Hasse derivative does not vanish
// p-adically at the root.
struct PrimeRootRecord {
  long prime = 0;
  std::vector<mpz_class> residues;
  int multiplicity = 1;
  int depth() const { return static_cast<int>(residues.size()); }
};

// Immutable system of per-prime root chains for one polynomial. Chains are
// chosen deterministically (smallest residue at each level, depth-first
// backtracking when a branch has no lift), so derived quantities are
// reproducible across runs and platforms.
class RootSystem {
 public:
  RootSystem(IntPoly poly, std::vector<PrimeRootRecord> records);

  const IntPoly& poly() const { return poly_; }
  const std::vector<PrimeRootRecord>& records() const { return records_; }
  const PrimeRootRecord* find(long prime) const;

 private:
  IntPoly poly_;
  std::vector<PrimeRootRecord> records_;  // sorted by prime
};

// All residues r mod p^j with h(r) = 0 mod p^j, sorted ascending. Computed
// level by level: roots mod p^(j+1) are searched only among the p lifts of
// each root mod p^j, which is exhaustive.
std::vector<mpz_class> roots_mod_prime_power(const IntPoly& h, long prime, int exponent);

// Builds chains of the given depth for each listed prime; throws
// NoRootChain(p) if some prime has no chain that deep.
RootSystem choose_root_system(const IntPoly& h, const std::vector<long>& primes, int depth);

// Chains for every prime <= q_max, each deep enough to cover any prime-power
// divisor of a modulus q <= q_max.
RootSystem root_system_for_moduli(const IntPoly& h, long q_max);

// Chains only for the primes dividing q, each to depth v_p(q).
RootSystem root_system_for_modulus(const IntPoly& h, const mpz_class& q);

// Completely multiplicative: product over p | q of p^(m_p * v_p(q)).
mpz_class lambda_of(const RootSystem& rs, const mpz_class& q);

// The unique representative in (-q, 0] of the CRT combination of the stored
// chains at the prime powers dividing q; satisfies q | h(r_q).
mpz_class chosen_root(const RootSystem& rs, const mpz_class& q);

struct AuxiliaryData {
  mpz_class q;
  mpz_class r_q;       // in (-q, 0]
  mpz_class lambda_q;  // positive
  IntPoly h_q;         // h(r_q + q*x) / lambda_q, integral by construction
};

AuxiliaryData auxiliary(const RootSystem& rs, const mpz_class& q);

struct RefutationWitness {
  mpz_class modulus;
  unsigned long residues_checked = 0;
  bool exhaustive = false;  // true when every residue mod q was tested directly
};

struct IntersectivityVerdict {
  enum class Kind { CertifiedByIntegerRoot, Refuted, NoObstructionFound };
  Kind kind = Kind::NoObstructionFound;
  mpz_class integer_root;     // CertifiedByIntegerRoot
  mpz_class refuted_modulus;  // Refuted
  RefutationWitness witness;  // Refuted
  long prime_bound = 0;       // NoObstructionFound
  int depth = 0;              // NoObstructionFound
};

// Searches for an integer root (unconditional certificate), then scans prime
// powers p^j with p <= prime_bound and j <= depth in increasing order of p^j
// for a modulus with no root. NoObstructionFound is a bounded search report,
// not a proof.
IntersectivityVerdict certify_intersective(const IntPoly& h, long prime_bound, int depth);

// Small-prime utilities shared with the experiment layer.
std::vector<long> primes_up_to(long n);
std::vector<std::pair<long, int>> factorize(const mpz_class& q);

}  // namespace polyrecur

#endif  // POLYRECUR_PADIC_HPP
