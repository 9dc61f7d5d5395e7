#ifndef POLYRECUR_FIXED_POINT_HPP
#define POLYRECUR_FIXED_POINT_HPP

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "polyrecur/errors.hpp"

namespace polyrecur {

// Fixed-point real number: value = mantissa / 2^prec.
//
// Products with arbitrary-precision integers are exact, and reduction mod 1
// is a mask on the mantissa, so quantities like p(n)*alpha keep their full
// fractional part even when p(n) has hundreds of bits. Double precision
// loses all fractional information once p(n) > 2^53, which is why every
// orbit computation in the toolkit goes through this type.
class FixedReal {
 public:
  FixedReal() : mantissa_(0), prec_(0) {}
  FixedReal(mpz_class mantissa, long prec);

  static FixedReal zero(long prec) { return FixedReal(mpz_class(0), prec); }
  // Round q to the nearest multiple of 2^-prec.
  static FixedReal from_mpq(const mpq_class& q, long prec);
  static FixedReal from_double(double x, long prec);
  // Plain decimal string, e.g. "-1.75" or "3".
  static FixedReal from_decimal(const std::string& s, long prec);
  // Symbolic constants: sqrt2, sqrt3, sqrt5, phi, pi, e.
  static FixedReal from_symbol(const std::string& tag, long prec);
  // Symbol if recognized, decimal otherwise.
  static FixedReal parse(const std::string& s, long prec);
  // Uniform in [0,1) with prec random bits, filled 64 bits at a time MSB first.
  static FixedReal random_unit(std::mt19937_64& rng, long prec);

  long precision() const { return prec_; }
  const mpz_class& mantissa() const { return mantissa_; }
  mpq_class to_mpq() const;
  double to_double() const;

  FixedReal operator+(const FixedReal& o) const;
  FixedReal operator-(const FixedReal& o) const;
  FixedReal operator-() const { return FixedReal(-mantissa_, prec_); }
  bool operator==(const FixedReal& o) const = default;

  // Exact product with an integer.
  FixedReal scaled(const mpz_class& k) const { return FixedReal(mantissa_ * k, prec_); }
  // Change precision; exact when widening, round-to-nearest when narrowing.
  FixedReal rescaled(long new_prec) const;

  // Mantissa of frac(k * value) in [0, 2^prec); floor convention for
  // negative products.
  mpz_class frac_mantissa_scaled(const mpz_class& k) const;
  // Mantissa of the distance from k * value to the nearest integer,
  // in [0, 2^(prec-1)].
  mpz_class dist_mantissa_scaled(const mpz_class& k) const;
  double frac_double_scaled(const mpz_class& k) const;

  double frac_double() const { return frac_double_scaled(1); }
  // Distance from the value to the nearest integer, in [0, 1/2].
  double dist_to_nearest_int() const;

 private:
  mpz_class mantissa_;
  long prec_;
};

// A vector of fixed-point reals sharing one precision.
using FixedVector = std::vector<FixedReal>;

// Common precision of a nonempty vector; throws if precisions differ.
long common_precision(const FixedVector& v);

FixedVector fixed_vector_from_doubles(const std::vector<double>& xs, long prec);
std::vector<mpq_class> to_mpq_vector(const FixedVector& v);
std::vector<double> to_double_vector(const FixedVector& v);

// Exact rational of a double (doubles are dyadic rationals).
mpq_class mpq_from_double(double x);

// frac(q) in [0,1) and distance from q to the nearest integer, both exact.
mpq_class mpq_frac(const mpq_class& q);
mpq_class mpq_dist_to_nearest_int(const mpq_class& q);

}  // namespace polyrecur

#endif  // POLYRECUR_FIXED_POINT_HPP
