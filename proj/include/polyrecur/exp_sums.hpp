#ifndef POLYRECUR_EXP_SUMS_HPP
#define POLYRECUR_EXP_SUMS_HPP

#include <complex>
#include <optional>
#include <vector>

#include <gmpxx.h>

#include "polyrecur/fixed_point.hpp"
#include "polyrecur/int_poly.hpp"

namespace polyrecur {

// (1/N) sum_{n=1}^{N} e^{2 pi i p(n) theta}. Each p(n)*theta is reduced mod 1
// in fixed point before the complex exponential; theta must carry at least
// precision_for(p, N) fractional bits. Fixed block order keeps the result
// independent of the worker count.
std::complex<double> weyl_sum(const IntPoly& p, const FixedReal& theta, long N, int workers = 0);

// sum_{n=1}^{N} e^{2 pi i (sum_i a_i h_i(n)) / q}; the phase numerator is
// reduced mod q in exact integer arithmetic.
std::complex<double> gauss_sum_multi(const std::vector<IntPoly>& polys,
                                     const std::vector<mpz_class>& coeffs, const mpz_class& q,
                                     long N);

struct BestRational {
  mpz_class q_prime;  // denominator <= Q minimizing ||q' theta||
  double dist;        // achieved ||q' theta||
};

// Best approximation denominator via the continued fraction of theta's exact
// stored value; ties go to the smaller denominator.
BestRational best_rational(const FixedReal& theta, const mpz_class& Q);

struct WeylCertificate {
  double delta;          // hypothesis threshold in (0,1)
  mpz_class q_prime;     // found denominator
  double dist;           // ||q' theta||, recomputed in fixed point
  double sum_modulus;    // |(1/N) sum e^{2 pi i h(n) theta}|, >= delta
};

// If the normalized sum has modulus >= delta, searches denominators up to
// ceil(margin * delta^-k), k = deg h, and returns the certificate; returns
// nullopt when the hypothesis fails. The implied constants are reported
// through the achieved values, never asserted.
std::optional<WeylCertificate> weyl_certificate(const IntPoly& h, const FixedReal& theta, long N,
                                                double delta, double margin = 1e3,
                                                int workers = 0);

// 2^(10k): the exponent budget gating q <= N^(1/K) in the dichotomy.
mpz_class exponent_budget(int degree);

}  // namespace polyrecur

#endif  // POLYRECUR_EXP_SUMS_HPP
