#include "polyrecur/exp_sums.hpp"

#include <algorithm>
#include <cmath>

#include "polyrecur/parallel.hpp"

namespace polyrecur {

namespace {

constexpr double kTwoPi = 6.283185307179586476925287;

}  // namespace

std::complex<double> weyl_sum(const IntPoly& p, const FixedReal& theta, long N, int workers) {
  if (N < 1) throw std::invalid_argument("N must be >= 1");
  long needed = precision_for(p, N);
  if (theta.precision() < needed)
    throw InsufficientPrecision("weyl_sum theta", needed, theta.precision());
  const long block = 4096;
  const long nblocks = (N + block - 1) / block;
  std::vector<std::complex<double>> partial(static_cast<std::size_t>(nblocks), {0.0, 0.0});
  run_blocks(N, block, workers, [&](long b, long lo, long hi) {
    std::complex<double> acc(0.0, 0.0);
    for (long n = lo + 1; n <= hi; ++n) {
      double frac = theta.frac_double_scaled(p.eval(n));
      double angle = kTwoPi * frac;
      acc += std::complex<double>(std::cos(angle), std::sin(angle));
    }
    partial[static_cast<std::size_t>(b)] = acc;
  });
  std::complex<double> total(0.0, 0.0);
  for (const auto& c : partial) total += c;
  return total / static_cast<double>(N);
}

std::complex<double> gauss_sum_multi(const std::vector<IntPoly>& polys,
                                     const std::vector<mpz_class>& coeffs, const mpz_class& q,
                                     long N) {
  if (polys.size() != coeffs.size()) throw std::invalid_argument("polys/coeffs length mismatch");
  if (q < 1 || N < 1) throw std::invalid_argument("q and N must be >= 1");
  const double qd = q.get_d();
  std::complex<double> acc(0.0, 0.0);
  for (long n = 1; n <= N; ++n) {
    mpz_class phase = 0;
    for (std::size_t i = 0; i < polys.size(); ++i) phase += coeffs[i] * polys[i].eval(n);
    mpz_fdiv_r(phase.get_mpz_t(), phase.get_mpz_t(), q.get_mpz_t());
    double angle = kTwoPi * phase.get_d() / qd;
    acc += std::complex<double>(std::cos(angle), std::sin(angle));
  }
  return acc;
}

BestRational best_rational(const FixedReal& theta, const mpz_class& Q) {
  if (Q < 1) throw std::invalid_argument("Q must be >= 1");
  // Continued fraction of the exact stored rational; convergent denominators
  // are the best-approximation denominators, and || q_k theta || decreases
  // along them, so the last convergent with denominator <= Q wins. Ties on
  // the achieved distance keep the smaller denominator.
  mpq_class x = theta.to_mpq();
  mpz_class num = x.get_num(), den = x.get_den();
  mpz_class best_q = 1;
  mpz_class best_dist = theta.dist_mantissa_scaled(1);
  // Consume the integer part; the 0th convergent has denominator 1 and is
  // the initial best.
  mpz_class a, rem;
  mpz_fdiv_qr(a.get_mpz_t(), rem.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  mpz_class q_prev = 0, q_cur = 1;
  while (rem != 0) {
    num = den;
    den = rem;
    mpz_fdiv_qr(a.get_mpz_t(), rem.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    mpz_class q_next = a * q_cur + q_prev;
    if (q_next > Q) break;
    q_prev = q_cur;
    q_cur = q_next;
    mpz_class dist = theta.dist_mantissa_scaled(q_cur);
    if (dist < best_dist || (dist == best_dist && q_cur < best_q)) {
      best_dist = dist;
      best_q = q_cur;
    }
  }
  BestRational out;
  out.q_prime = best_q;
  out.dist = std::ldexp(best_dist.get_d(), static_cast<int>(-theta.precision()));
  return out;
}

std::optional<WeylCertificate> weyl_certificate(const IntPoly& h, const FixedReal& theta, long N,
                                                double delta, double margin, int workers) {
  if (!(delta > 0 && delta < 1)) throw std::invalid_argument("delta must lie in (0,1)");
  double modulus = std::abs(weyl_sum(h, theta, N, workers));
  if (modulus < delta) return std::nullopt;
  int k = std::max(1, h.degree());
  double bound = margin * std::pow(delta, -k);
  mpz_class Q(std::ceil(std::min(bound, 1e18)));
  if (Q < 1) Q = 1;
  BestRational best = best_rational(theta, Q);
  WeylCertificate cert;
  cert.delta = delta;
  cert.q_prime = best.q_prime;
  cert.dist = std::ldexp(theta.dist_mantissa_scaled(best.q_prime).get_d(),
                         static_cast<int>(-theta.precision()));
  cert.sum_modulus = modulus;
  return cert;
}

mpz_class exponent_budget(int degree) {
  if (degree < 1) throw std::invalid_argument("degree must be >= 1");
  mpz_class k;
  mpz_setbit(k.get_mpz_t(), static_cast<mp_bitcnt_t>(10 * degree));
  return k;
}

}  // namespace polyrecur
