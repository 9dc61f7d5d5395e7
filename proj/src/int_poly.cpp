#include "polyrecur/int_poly.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace polyrecur {

namespace {

void trim_trailing_zeros(std::vector<mpz_class>& c) {
  while (!c.empty() && c.back() == 0) c.pop_back();
}

std::string strip_spaces(const std::string& s) {
  std::string t;
  t.reserve(s.size());
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) t.push_back(c);
  return t;
}

IntPoly parse_coeff_list(const std::string& text) {
  if (text.size() < 2 || text.front() != '[' || text.back() != ']')
    throw std::invalid_argument("malformed coefficient list: " + text);
  std::string body = text.substr(1, text.size() - 2);
  std::vector<mpz_class> coeffs;
  if (!body.empty()) {
    std::stringstream ss(body);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (item.empty()) throw std::invalid_argument("empty coefficient in: " + text);
      coeffs.emplace_back(item, 10);
    }
  }
  return IntPoly(std::move(coeffs));
}

// Terms are [sign][digits][x[^exponent]]; after space stripping.
IntPoly parse_human(const std::string& text) {
  std::vector<mpz_class> coeffs;
  std::size_t i = 0;
  if (text.empty()) throw std::invalid_argument("empty polynomial");
  while (i < text.size()) {
    int sign = 1;
    if (text[i] == '+' || text[i] == '-') {
      sign = text[i] == '-' ? -1 : 1;
      ++i;
    } else if (i > 0) {
      throw std::invalid_argument("expected '+' or '-' at position " + std::to_string(i) +
                                  " in: " + text);
    }
    std::string digits;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) digits.push_back(text[i++]);
    mpz_class coeff = digits.empty() ? mpz_class(1) : mpz_class(digits, 10);
    unsigned power = 0;
    if (i < text.size() && text[i] == 'x') {
      ++i;
      power = 1;
      if (i < text.size() && text[i] == '^') {
        ++i;
        std::string exp;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) exp.push_back(text[i++]);
        if (exp.empty()) throw std::invalid_argument("missing exponent in: " + text);
        power = static_cast<unsigned>(std::stoul(exp));
      }
    } else if (digits.empty()) {
      throw std::invalid_argument("bare sign in: " + text);
    }
    if (coeffs.size() <= power) coeffs.resize(power + 1, mpz_class(0));
    coeffs[power] += sign * coeff;
  }
  return IntPoly(std::move(coeffs));
}

}  // namespace

IntPoly::IntPoly(std::vector<mpz_class> coeffs) : coeffs_(std::move(coeffs)) {
  trim_trailing_zeros(coeffs_);
}

IntPoly IntPoly::monomial(unsigned power, mpz_class coeff) {
  if (coeff == 0) return IntPoly();
  std::vector<mpz_class> c(power + 1, mpz_class(0));
  c[power] = std::move(coeff);
  return IntPoly(std::move(c));
}

IntPoly IntPoly::parse(const std::string& text) {
  std::string t = strip_spaces(text);
  if (!t.empty() && t.front() == '[') return parse_coeff_list(t);
  return parse_human(t);
}

mpz_class IntPoly::eval(const mpz_class& n) const {
  mpz_class acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * n + *it;
  return acc;
}

mpz_class IntPoly::eval_mod(const mpz_class& n, const mpz_class& m) const {
  mpz_class acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc = acc * n + *it;
    mpz_fdiv_r(acc.get_mpz_t(), acc.get_mpz_t(), m.get_mpz_t());
  }
  return acc;
}

IntPoly IntPoly::hasse_derivative(unsigned j) const {
  if (is_zero() || j > static_cast<unsigned>(degree())) return IntPoly();
  std::vector<mpz_class> out(coeffs_.size() - j);
  for (std::size_t i = 0; i < out.size(); ++i) {
    mpz_class binom;
    mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(i + j), static_cast<unsigned long>(j));
    out[i] = binom * coeffs_[i + j];
  }
  return IntPoly(std::move(out));
}

IntPoly IntPoly::compose_affine(const mpz_class& r, const mpz_class& q) const {
  if (q < 1) throw std::invalid_argument("compose_affine requires q >= 1");
  // Horner in the polynomial ring: acc <- acc*(q*x + r) + c_i.
  std::vector<mpz_class> acc;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    std::vector<mpz_class> next(acc.size() + 1, mpz_class(0));
    for (std::size_t i = 0; i < acc.size(); ++i) {
      next[i + 1] += acc[i] * q;
      next[i] += acc[i] * r;
    }
    if (next.empty()) next.resize(1, mpz_class(0));
    next[0] += *it;
    acc = std::move(next);
  }
  return IntPoly(std::move(acc));
}

IntPoly IntPoly::divide_exact(const mpz_class& m) const {
  if (m < 1) throw std::invalid_argument("divide_exact requires m >= 1");
  std::vector<mpz_class> out(coeffs_.size());
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (!mpz_divisible_p(coeffs_[i].get_mpz_t(), m.get_mpz_t()))
      throw NonIntegralDivision(i, coeffs_[i], m);
    mpz_divexact(out[i].get_mpz_t(), coeffs_[i].get_mpz_t(), m.get_mpz_t());
  }
  return IntPoly(std::move(out));
}

IntPoly IntPoly::times(const mpz_class& m) const {
  std::vector<mpz_class> out(coeffs_.size());
  for (std::size_t i = 0; i < coeffs_.size(); ++i) out[i] = coeffs_[i] * m;
  return IntPoly(std::move(out));
}

mpz_class IntPoly::abs_eval_bound(const mpz_class& n) const {
  mpz_class acc = 0;
  mpz_class na = abs(n);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * na + abs(*it);
  return acc;
}

std::string IntPoly::to_coeff_list() const {
  std::string s = "[";
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (i) s += ",";
    s += coeffs_[i].get_str();
  }
  s += "]";
  return s;
}

std::string IntPoly::to_human() const {
  if (is_zero()) return "0";
  std::string s;
  for (std::size_t k = coeffs_.size(); k-- > 0;) {
    const mpz_class& c = coeffs_[k];
    if (c == 0) continue;
    bool first = s.empty();
    if (c < 0)
      s += first ? "-" : "-";
    else if (!first)
      s += "+";
    mpz_class a = abs(c);
    if (a != 1 || k == 0) s += a.get_str();
    if (k >= 1) {
      s += "x";
      if (k >= 2) s += "^" + std::to_string(k);
    }
  }
  return s;
}

long precision_for(const IntPoly& p, long N) {
  mpz_class bound = p.abs_eval_bound(mpz_class(N));
  long bits = bound == 0 ? 1 : static_cast<long>(mpz_sizeinbase(bound.get_mpz_t(), 2));
  return bits + 64;
}

long precision_for(const std::vector<IntPoly>& polys, long N) {
  long p = 65;
  for (const IntPoly& h : polys) p = std::max(p, precision_for(h, N));
  return p;
}

}  // namespace polyrecur
