#ifndef POLYRECUR_LATTICE_HPP
#define POLYRECUR_LATTICE_HPP

#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

#include <gmpxx.h>

#include "polyrecur/fixed_point.hpp"
#include "polyrecur/int_poly.hpp"

namespace polyrecur {

struct ThetaOptions {
  double tolerance = 1e-12;       // target bound on omitted Gaussian mass
  std::size_t point_budget = 1u << 22;
  double fixed_radius = 0;        // > 0 pins the truncation radius (no auto growth)
};

struct ThetaValue {
  double value = 0;
  double truncation_radius = 0;
  double tail_bound = 0;  // rigorous bound on the omitted mass
};

struct PoissonIdentity {
  double lhs = 0;       // direct Gaussian sum over the lattice
  double rhs_real = 0;  // dual-side sum, real part
  double rhs_imag = 0;  // must vanish up to rounding
  double gap = 0;       // |lhs - rhs_real|
};

// Full-rank real lattice. The double basis is mirrored exactly into rational
// arithmetic (doubles are dyadic), so determinant, inverse, and
// fundamental-domain reduction are exact; reduction of fixed-point vectors
// with astronomically large integer parts loses nothing.
class Lattice {
 public:
  // Row-major matrix whose columns are the generators.
  static Lattice from_basis(int dim, const std::vector<double>& basis_row_major);
  static Lattice scaled_integer(double R, int dim);  // R * Z^d

  int dim() const { return dim_; }
  const std::vector<double>& basis() const { return basis_; }
  double det() const { return det_; }  // |determinant|
  const std::vector<double>& dual_basis() const { return dual_; }  // inverse transpose
  Lattice dual_lattice() const;
  bool is_diagonal() const { return diagonal_; }

  // Lattice point from integer coordinates.
  std::vector<double> point(const std::vector<long>& coords) const;

  // x minus the lattice point nearest in dual coordinates (round each dual
  // coordinate); exact up to the final double conversion.
  std::vector<double> reduce(const std::vector<double>& x) const;
  std::vector<double> reduce(const FixedVector& x) const;
  std::vector<double> reduce_mpq(const std::vector<mpq_class>& x) const;

  double shortest_basis_len() const;
  double covering_pad() const;  // half the sum of generator lengths

  const std::vector<mpq_class>& basis_exact() const { return basis_q_; }
  const std::vector<mpq_class>& inverse_exact() const { return inv_q_; }

 private:
  Lattice() = default;
  static Lattice from_exact(int dim, const std::vector<mpq_class>& basis);
  void finish_init();

  int dim_ = 0;
  std::vector<double> basis_;   // row-major
  std::vector<double> dual_;    // row-major inverse transpose
  std::vector<mpq_class> basis_q_;
  std::vector<mpq_class> inv_q_;
  double det_ = 0;
  bool diagonal_ = false;
};

// Gaussian lattice mass sum_{m in L} exp(-pi t |x-m|^2), truncated to the
// ball where the omitted tail is provably below the tolerance.
ThetaValue theta(const Lattice& L, double t, const std::vector<double>& x,
                 const ThetaOptions& opt = {});
ThetaValue theta(const Lattice& L, double t, const FixedVector& x, const ThetaOptions& opt = {});

// Dual Gaussian mass constant Theta_{L*}(1,0). Also evaluates
// det(L)*Theta_L(1,0) and throws PoissonMismatch if the two routes disagree
// beyond rel_tol.
double a_const(const Lattice& L, const ThetaOptions& opt = {}, double rel_tol = 1e-9);

// Both sides of the Gaussian summation identity
//   Theta_L(t,x) = t^{-d/2}/det(L) * sum_{xi in L*} e^{-pi|xi|^2/t} e^{2 pi i xi.x}.
PoissonIdentity poisson_check(const Lattice& L, double t, const std::vector<double>& x,
                              const ThetaOptions& opt = {});

// det(L) * average over 1 <= n <= N of Theta_L(1, h(n)*alpha). alpha must
// carry at least precision_for(h, N) fractional bits. The per-n sum is
// evaluated in fixed-size blocks folded in index order, so the result does
// not depend on the worker count.
double f_avg(const IntPoly& h, const Lattice& L, const FixedVector& alpha, long N,
             int workers = 0, const ThetaOptions& opt = {});

// Outcome of the mass dichotomy: either the averaged mass is at least 1/2,
// or a short primitive dual vector xi and a dilate q' with small
// ||q' xi . alpha|| are exhibited. Exhausted reports the best pair found
// when nothing met the tolerance; the bound constants are caller-supplied.
struct Dichotomy {
  enum class Kind { CaseI, CaseII, Exhausted };
  Kind kind = Kind::CaseI;
  double f_value = 0;
  std::vector<long> xi_coords;  // dual-basis coordinates, gcd 1
  std::vector<double> xi;
  long q_prime = 0;
  double achieved_norm = 0;
  mpz_class exponent_budget;  // 2^(10k) for k = deg h
  bool precondition_ok = false;  // q^(2^(10k)) <= N
};

Dichotomy alternative_check(const IntPoly& h_q, const Lattice& L, const FixedVector& alpha,
                            const mpz_class& q, long N, double xi_radius, long qprime_max,
                            double norm_tol, int workers = 0, const ThetaOptions& opt = {});

// Enumerates integer coordinate vectors c with |B c - y| <= radius
// (Fincke-Pohst recursion on the Gram Cholesky factors; visits points in a
// fixed order). Throws TruncationOverflow past the node budget.
void enumerate_ball(int dim, const std::vector<double>& basis_row_major,
                    const std::vector<double>& y, double radius, std::size_t budget,
                    const std::function<void(const std::vector<long>&, double)>& visit);

}  // namespace polyrecur

#endif  // POLYRECUR_LATTICE_HPP
