#ifndef POLYRECUR_INT_POLY_HPP
#define POLYRECUR_INT_POLY_HPP

#include <string>
#include <vector>

#include <gmpxx.h>

#include "polyrecur/errors.hpp"

namespace polyrecur {

// Integer-coefficient polynomial in one variable, stored dense,
// lowest-degree coefficient first. All arithmetic is arbitrary precision;
// there is no overflow path. The zero polynomial has an empty coefficient
// vector and the sentinel degree kZeroDegree.
class IntPoly {
 public:
  static constexpr int kZeroDegree = -1;

  IntPoly() = default;  // zero polynomial
  explicit IntPoly(std::vector<mpz_class> coeffs);

  static IntPoly x() { return monomial(1); }
  static IntPoly monomial(unsigned power, mpz_class coeff = 1);
  // Accepts a bracketed coefficient list, lowest degree first
  // ("[-19,-19,-19,1,1,1]"), or a human-readable sum of terms
  // ("x^5+x^4+x^3-19x^2-19x-19").
  static IntPoly parse(const std::string& text);

  bool is_zero() const { return coeffs_.empty(); }
  int degree() const { return coeffs_.empty() ? kZeroDegree : static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<mpz_class>& coeffs() const { return coeffs_; }
  mpz_class coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : mpz_class(0); }
  mpz_class leading() const { return coeffs_.empty() ? mpz_class(0) : coeffs_.back(); }
  mpz_class constant_term() const { return coeff(0); }

  mpz_class eval(const mpz_class& n) const;
  mpz_class eval(long n) const { return eval(mpz_class(n)); }
  // p(n) mod m, reducing at every Horner step; m >= 1. Result in [0, m).
  mpz_class eval_mod(const mpz_class& n, const mpz_class& m) const;

  // j-th Hasse derivative p^(j)/j!; coefficient i of the result is
  // C(i+j, j) * coeff_{i+j}, so the result stays integral.
  IntPoly hasse_derivative(unsigned j) const;

  // Exact expansion of p(r + q*x).
  IntPoly compose_affine(const mpz_class& r, const mpz_class& q) const;

  // p/m when m divides every coefficient; throws NonIntegralDivision with
  // the offending coefficient index otherwise. m >= 1.
  IntPoly divide_exact(const mpz_class& m) const;

  IntPoly times(const mpz_class& m) const;

  // sum_i |c_i| * n^i, an upper bound for |p(t)| over |t| <= n.
  mpz_class abs_eval_bound(const mpz_class& n) const;

  std::string to_coeff_list() const;  // "[-19,-19,-19,1,1,1]"
  std::string to_human() const;       // "x^5+x^4+x^3-19x^2-19x-19"

  bool operator==(const IntPoly& o) const = default;

 private:
  std::vector<mpz_class> coeffs_;
};

// Fixed-point precision needed to track frac(p(n) * alpha) losslessly for
// 1 <= n <= N: bit length of the coefficient-wise absolute bound plus 64
// guard bits.
long precision_for(const IntPoly& p, long N);
long precision_for(const std::vector<IntPoly>& polys, long N);

}  // namespace polyrecur

#endif  // POLYRECUR_INT_POLY_HPP
