#include "polyrecur/fixed_point.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>

#include <mpfr.h>

namespace polyrecur {

namespace {

mpz_class pow2(long bits) {
  mpz_class r;
  mpz_setbit(r.get_mpz_t(), static_cast<mp_bitcnt_t>(bits));
  return r;
}

// floor(num/den) rounded to nearest, ties away from zero.
mpz_class round_div(const mpz_class& num, const mpz_class& den) {
  mpz_class q, r;
  mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  if (2 * r >= den) ++q;
  return q;
}

mpz_class mpfr_to_mantissa(mpfr_t x, long prec) {
  mpfr_mul_2exp(x, x, static_cast<unsigned long>(prec), MPFR_RNDN);
  mpz_class m;
  mpfr_get_z(m.get_mpz_t(), x, MPFR_RNDN);
  return m;
}

}  // namespace

FixedReal::FixedReal(mpz_class mantissa, long prec) : mantissa_(std::move(mantissa)), prec_(prec) {
  if (prec < 0) throw std::invalid_argument("negative fixed-point precision");
}

FixedReal FixedReal::from_mpq(const mpq_class& q, long prec) {
  mpz_class num = q.get_num() * pow2(prec);
  return FixedReal(round_div(num, q.get_den()), prec);
}

FixedReal FixedReal::from_double(double x, long prec) {
  if (!std::isfinite(x)) throw std::invalid_argument("non-finite double");
  return from_mpq(mpq_from_double(x), prec);
}

FixedReal FixedReal::from_decimal(const std::string& s, long prec) {
  std::string t;
  t.reserve(s.size());
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) t.push_back(c);
  if (t.empty()) throw std::invalid_argument("empty decimal string");
  bool neg = false;
  std::size_t i = 0;
  if (t[0] == '+' || t[0] == '-') {
    neg = (t[0] == '-');
    i = 1;
  }
  std::string digits;
  long frac_digits = 0;
  bool seen_dot = false, seen_digit = false;
  for (; i < t.size(); ++i) {
    char c = t[i];
    if (c == '.') {
      if (seen_dot) throw std::invalid_argument("malformed decimal: " + s);
      seen_dot = true;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
      seen_digit = true;
      if (seen_dot) ++frac_digits;
    } else {
      throw std::invalid_argument("malformed decimal: " + s);
    }
  }
  if (!seen_digit) throw std::invalid_argument("malformed decimal: " + s);
  mpz_class scaled(digits.empty() ? "0" : digits, 10);
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), 10, static_cast<unsigned long>(frac_digits));
  mpz_class m = round_div(scaled * pow2(prec), den);
  return FixedReal(neg ? mpz_class(-m) : m, prec);
}

FixedReal FixedReal::from_symbol(const std::string& tag, long prec) {
  mpfr_t x;
  mpfr_init2(x, static_cast<mpfr_prec_t>(prec + 64));
  if (tag == "sqrt2") {
    mpfr_sqrt_ui(x, 2, MPFR_RNDN);
  } else if (tag == "sqrt3") {
    mpfr_sqrt_ui(x, 3, MPFR_RNDN);
  } else if (tag == "sqrt5") {
    mpfr_sqrt_ui(x, 5, MPFR_RNDN);
  } else if (tag == "phi") {
    mpfr_sqrt_ui(x, 5, MPFR_RNDN);
    mpfr_add_ui(x, x, 1, MPFR_RNDN);
    mpfr_div_ui(x, x, 2, MPFR_RNDN);
  } else if (tag == "pi") {
    mpfr_const_pi(x, MPFR_RNDN);
  } else if (tag == "e") {
    mpfr_set_ui(x, 1, MPFR_RNDN);
    mpfr_exp(x, x, MPFR_RNDN);
  } else {
    mpfr_clear(x);
    throw std::invalid_argument("unknown symbolic constant: " + tag);
  }
  mpz_class m = mpfr_to_mantissa(x, prec);
  mpfr_clear(x);
  return FixedReal(std::move(m), prec);
}

FixedReal FixedReal::parse(const std::string& s, long prec) {
  static const char* kTags[] = {"sqrt2", "sqrt3", "sqrt5", "phi", "pi", "e"};
  for (const char* tag : kTags)
    if (s == tag) return from_symbol(s, prec);
  return from_decimal(s, prec);
}

FixedReal FixedReal::random_unit(std::mt19937_64& rng, long prec) {
  mpz_class m = 0;
  long remaining = prec;
  while (remaining > 0) {
    long take = remaining >= 64 ? 64 : remaining;
    std::uint64_t w = rng();
    if (take < 64) w >>= (64 - take);
    m <<= static_cast<unsigned long>(take);
    mpz_class word;
    mpz_import(word.get_mpz_t(), 1, 1, sizeof(w), 0, 0, &w);
    m |= word;
    remaining -= take;
  }
  return FixedReal(std::move(m), prec);
}

mpq_class FixedReal::to_mpq() const {
  mpq_class q(mantissa_, pow2(prec_));
  q.canonicalize();
  return q;
}

double FixedReal::to_double() const {
  // Split to keep the double conversion in range for huge mantissas.
  mpz_class ip, fr;
  mpz_fdiv_q_2exp(ip.get_mpz_t(), mantissa_.get_mpz_t(), static_cast<mp_bitcnt_t>(prec_));
  mpz_fdiv_r_2exp(fr.get_mpz_t(), mantissa_.get_mpz_t(), static_cast<mp_bitcnt_t>(prec_));
  return ip.get_d() + std::ldexp(fr.get_d(), static_cast<int>(-prec_));
}

FixedReal FixedReal::operator+(const FixedReal& o) const {
  if (prec_ != o.prec_) throw InsufficientPrecision("fixed-point addition", prec_, o.prec_);
  return FixedReal(mantissa_ + o.mantissa_, prec_);
}

FixedReal FixedReal::operator-(const FixedReal& o) const {
  if (prec_ != o.prec_) throw InsufficientPrecision("fixed-point subtraction", prec_, o.prec_);
  return FixedReal(mantissa_ - o.mantissa_, prec_);
}

FixedReal FixedReal::rescaled(long new_prec) const {
  if (new_prec >= prec_) return FixedReal(mantissa_ << static_cast<unsigned long>(new_prec - prec_), new_prec);
  return FixedReal(round_div(mantissa_, pow2(prec_ - new_prec)), new_prec);
}

mpz_class FixedReal::frac_mantissa_scaled(const mpz_class& k) const {
  mpz_class prod = mantissa_ * k;
  mpz_class frac;
  mpz_fdiv_r_2exp(frac.get_mpz_t(), prod.get_mpz_t(), static_cast<mp_bitcnt_t>(prec_));
  return frac;
}

mpz_class FixedReal::dist_mantissa_scaled(const mpz_class& k) const {
  mpz_class frac = frac_mantissa_scaled(k);
  mpz_class other = pow2(prec_) - frac;
  return frac <= other ? frac : other;
}

double FixedReal::frac_double_scaled(const mpz_class& k) const {
  mpz_class frac = frac_mantissa_scaled(k);
  return std::ldexp(frac.get_d(), static_cast<int>(-prec_));
}

double FixedReal::dist_to_nearest_int() const {
  mpz_class d = dist_mantissa_scaled(1);
  return std::ldexp(d.get_d(), static_cast<int>(-prec_));
}

long common_precision(const FixedVector& v) {
  if (v.empty()) throw std::invalid_argument("empty fixed vector");
  long p = v.front().precision();
  for (const FixedReal& x : v)
    if (x.precision() != p) throw InsufficientPrecision("fixed vector", p, x.precision());
  return p;
}

FixedVector fixed_vector_from_doubles(const std::vector<double>& xs, long prec) {
  FixedVector v;
  v.reserve(xs.size());
  for (double x : xs) v.push_back(FixedReal::from_double(x, prec));
  return v;
}

std::vector<mpq_class> to_mpq_vector(const FixedVector& v) {
  std::vector<mpq_class> out;
  out.reserve(v.size());
  for (const FixedReal& x : v) out.push_back(x.to_mpq());
  return out;
}

std::vector<double> to_double_vector(const FixedVector& v) {
  std::vector<double> out;
  out.reserve(v.size());
  for (const FixedReal& x : v) out.push_back(x.to_double());
  return out;
}

mpq_class mpq_from_double(double x) {
  mpq_class q;
  mpq_set_d(q.get_mpq_t(), x);
  return q;
}

mpq_class mpq_frac(const mpq_class& q) {
  mpz_class fl;
  mpz_fdiv_q(fl.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
  return q - mpq_class(fl);
}

mpq_class mpq_dist_to_nearest_int(const mpq_class& q) {
  mpq_class f = mpq_frac(q);
  mpq_class other = 1 - f;
  return f <= other ? f : other;
}

}  // namespace polyrecur
