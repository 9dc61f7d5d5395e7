#include "polyrecur/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numeric>

#include "polyrecur/parallel.hpp"

namespace polyrecur {

namespace {

constexpr double kPi = 3.14159265358979323846;

mpz_class mpq_round_nearest(const mpq_class& q) {
  // floor(q + 1/2)
  mpz_class num = 2 * q.get_num() + q.get_den();
  mpz_class den = 2 * q.get_den();
  mpz_class out;
  mpz_fdiv_q(out.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return out;
}

// Gaussian elimination over the rationals; exact inverse and determinant.
void invert_exact(int d, const std::vector<mpq_class>& a_in, std::vector<mpq_class>* inv,
                  mpq_class* det) {
  std::vector<mpq_class> a = a_in;
  std::vector<mpq_class> b(static_cast<std::size_t>(d) * d, mpq_class(0));
  for (int i = 0; i < d; ++i) b[static_cast<std::size_t>(i) * d + i] = 1;
  mpq_class determinant = 1;
  for (int col = 0; col < d; ++col) {
    int pivot = -1;
    for (int r = col; r < d; ++r) {
      if (a[static_cast<std::size_t>(r) * d + col] != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) {
      *det = 0;
      return;
    }
    if (pivot != col) {
      for (int j = 0; j < d; ++j) {
        std::swap(a[static_cast<std::size_t>(pivot) * d + j], a[static_cast<std::size_t>(col) * d + j]);
        std::swap(b[static_cast<std::size_t>(pivot) * d + j], b[static_cast<std::size_t>(col) * d + j]);
      }
      determinant = -determinant;
    }
    mpq_class p = a[static_cast<std::size_t>(col) * d + col];
    determinant *= p;
    for (int j = 0; j < d; ++j) {
      a[static_cast<std::size_t>(col) * d + j] /= p;
      b[static_cast<std::size_t>(col) * d + j] /= p;
    }
    for (int r = 0; r < d; ++r) {
      if (r == col) continue;
      mpq_class f = a[static_cast<std::size_t>(r) * d + col];
      if (f == 0) continue;
      for (int j = 0; j < d; ++j) {
        a[static_cast<std::size_t>(r) * d + j] -= f * a[static_cast<std::size_t>(col) * d + j];
        b[static_cast<std::size_t>(r) * d + j] -= f * b[static_cast<std::size_t>(col) * d + j];
      }
    }
  }
  *inv = std::move(b);
  *det = determinant;
}

// Packing bound: every shell [r, r+1) around any center holds at most
// (1 + 2(r+1)/lambda1)^d lattice points, so the mass beyond radius rho is at
// most sum_j (1 + 2(rho+j+1)/lambda1)^d exp(-pi t (rho+j)^2).
double gaussian_tail_bound(double rho, double t, int d, double lambda1) {
  double total = 0;
  for (int j = 0; j < 4096; ++j) {
    double r = rho + j;
    double count = std::pow(1.0 + 2.0 * (r + 1.0) / lambda1, d);
    double term = count * std::exp(-kPi * t * r * r);
    total += term;
    if (term < 1e-18 * std::max(total, 1e-300)) break;
  }
  return total;
}

struct OneDimTheta {
  double value;
  double radius;
  double tail;
};

// sum_{c in Z} exp(-pi t (x - b c)^2) for b > 0, truncated with a proven
// tail bound below tol.
OneDimTheta theta_1d(double b, double t, double x, double tol, std::size_t budget,
                     double fixed_radius) {
  double nearest = x - b * std::round(x / b);
  double rho = std::abs(nearest) +
               std::sqrt(std::max(0.0, std::log(3.0 / std::min(b, 3.0)) + std::log(1.0 / tol) + 1.0) /
                         (kPi * t)) +
               b;
  double tail = 0;
  if (fixed_radius > 0) {
    rho = fixed_radius;
    tail = gaussian_tail_bound(rho, t, 1, b);
  } else {
    for (int rounds = 0; rounds < 256; ++rounds) {
      tail = gaussian_tail_bound(rho, t, 1, b);
      if (tail < tol) break;
      rho *= 1.2;
    }
  }
  long lo = static_cast<long>(std::ceil((x - rho) / b));
  long hi = static_cast<long>(std::floor((x + rho) / b));
  if (hi - lo + 1 > static_cast<long>(budget))
    throw TruncationOverflow(static_cast<double>(hi - lo + 1), budget);
  double sum = 0;
  for (long c = lo; c <= hi; ++c) {
    double r = x - b * c;
    sum += std::exp(-kPi * t * r * r);
  }
  return {sum, rho, tail};
}

std::vector<double> diag_entries(const Lattice& L) {
  std::vector<double> b(static_cast<std::size_t>(L.dim()));
  for (int i = 0; i < L.dim(); ++i)
    b[static_cast<std::size_t>(i)] = std::abs(L.basis()[static_cast<std::size_t>(i) * L.dim() + i]);
  return b;
}

ThetaValue theta_reduced(const Lattice& L, double t, const std::vector<double>& xr,
                         const ThetaOptions& opt);

double lattice_min_distance_lower_bound(const Lattice& L);

}  // namespace

Lattice Lattice::from_basis(int dim, const std::vector<double>& basis_row_major) {
  if (dim < 1) throw std::invalid_argument("dimension must be >= 1");
  if (basis_row_major.size() != static_cast<std::size_t>(dim) * dim)
    throw std::invalid_argument("basis size does not match dimension");
  Lattice L;
  L.dim_ = dim;
  L.basis_ = basis_row_major;
  L.basis_q_.reserve(basis_row_major.size());
  for (double v : basis_row_major) {
    if (!std::isfinite(v)) throw std::invalid_argument("non-finite basis entry");
    L.basis_q_.push_back(mpq_from_double(v));
  }
  L.finish_init();
  return L;
}

Lattice Lattice::from_exact(int dim, const std::vector<mpq_class>& basis) {
  Lattice L;
  L.dim_ = dim;
  L.basis_q_ = basis;
  L.basis_.resize(basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) L.basis_[i] = basis[i].get_d();
  L.finish_init();
  return L;
}

void Lattice::finish_init() {
  mpq_class det_q;
  invert_exact(dim_, basis_q_, &inv_q_, &det_q);
  if (det_q == 0) throw SingularBasis("determinant is zero");
  det_ = std::abs(det_q.get_d());
  dual_.resize(basis_q_.size());
  double max_b = 0, max_inv = 0;
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) {
      double v = inv_q_[static_cast<std::size_t>(j) * dim_ + i].get_d();
      dual_[static_cast<std::size_t>(i) * dim_ + j] = v;
      max_inv = std::max(max_inv, std::abs(v));
      max_b = std::max(max_b, std::abs(basis_[static_cast<std::size_t>(i) * dim_ + j]));
    }
  if (max_b * max_inv * dim_ > 1e14) throw SingularBasis("basis is numerically singular");
  diagonal_ = true;
  for (int i = 0; i < dim_ && diagonal_; ++i)
    for (int j = 0; j < dim_; ++j)
      if (i != j && basis_[static_cast<std::size_t>(i) * dim_ + j] != 0.0) {
        diagonal_ = false;
        break;
      }
}

Lattice Lattice::scaled_integer(double R, int dim) {
  if (!(R > 0)) throw std::invalid_argument("R must be positive");
  std::vector<double> basis(static_cast<std::size_t>(dim) * dim, 0.0);
  for (int i = 0; i < dim; ++i) basis[static_cast<std::size_t>(i) * dim + i] = R;
  return from_basis(dim, basis);
}

Lattice Lattice::dual_lattice() const {
  // Dual generators are the columns of the inverse transpose.
  std::vector<mpq_class> dual_exact(basis_q_.size());
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j)
      dual_exact[static_cast<std::size_t>(i) * dim_ + j] = inv_q_[static_cast<std::size_t>(j) * dim_ + i];
  return from_exact(dim_, dual_exact);
}

std::vector<double> Lattice::point(const std::vector<long>& coords) const {
  std::vector<double> out(static_cast<std::size_t>(dim_), 0.0);
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j)
      out[static_cast<std::size_t>(i)] +=
          basis_[static_cast<std::size_t>(i) * dim_ + j] * static_cast<double>(coords[static_cast<std::size_t>(j)]);
  return out;
}

std::vector<double> Lattice::reduce_mpq(const std::vector<mpq_class>& x) const {
  if (x.size() != static_cast<std::size_t>(dim_)) throw std::invalid_argument("dimension mismatch");
  std::vector<mpq_class> y(static_cast<std::size_t>(dim_), mpq_class(0));
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j)
      y[static_cast<std::size_t>(i)] += inv_q_[static_cast<std::size_t>(i) * dim_ + j] * x[static_cast<std::size_t>(j)];
  std::vector<mpz_class> n(static_cast<std::size_t>(dim_));
  for (int i = 0; i < dim_; ++i) n[static_cast<std::size_t>(i)] = mpq_round_nearest(y[static_cast<std::size_t>(i)]);
  std::vector<double> r(static_cast<std::size_t>(dim_));
  for (int i = 0; i < dim_; ++i) {
    mpq_class acc = x[static_cast<std::size_t>(i)];
    for (int j = 0; j < dim_; ++j)
      acc -= basis_q_[static_cast<std::size_t>(i) * dim_ + j] * mpq_class(n[static_cast<std::size_t>(j)]);
    r[static_cast<std::size_t>(i)] = acc.get_d();
  }
  return r;
}

std::vector<double> Lattice::reduce(const std::vector<double>& x) const {
  std::vector<mpq_class> xq;
  xq.reserve(x.size());
  for (double v : x) xq.push_back(mpq_from_double(v));
  return reduce_mpq(xq);
}

std::vector<double> Lattice::reduce(const FixedVector& x) const {
  return reduce_mpq(to_mpq_vector(x));
}

double Lattice::shortest_basis_len() const {
  double best = std::numeric_limits<double>::infinity();
  for (int j = 0; j < dim_; ++j) {
    double s = 0;
    for (int i = 0; i < dim_; ++i) {
      double v = basis_[static_cast<std::size_t>(i) * dim_ + j];
      s += v * v;
    }
    best = std::min(best, std::sqrt(s));
  }
  return best;
}

double Lattice::covering_pad() const {
  double total = 0;
  for (int j = 0; j < dim_; ++j) {
    double s = 0;
    for (int i = 0; i < dim_; ++i) {
      double v = basis_[static_cast<std::size_t>(i) * dim_ + j];
      s += v * v;
    }
    total += std::sqrt(s);
  }
  return 0.5 * total;
}

void enumerate_ball(int dim, const std::vector<double>& basis_row_major,
                    const std::vector<double>& y, double radius, std::size_t budget,
                    const std::function<void(const std::vector<long>&, double)>& visit) {
  const int d = dim;
  // Gram matrix of the generators.
  std::vector<double> G(static_cast<std::size_t>(d) * d, 0.0);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      double s = 0;
      for (int k = 0; k < d; ++k)
        s += basis_row_major[static_cast<std::size_t>(k) * d + i] *
             basis_row_major[static_cast<std::size_t>(k) * d + j];
      G[static_cast<std::size_t>(i) * d + j] = s;
    }
  // Cholesky-style decomposition: |B v|^2 = sum_i q_ii (v_i + sum_{j>i} q_ij v_j)^2.
  std::vector<double> Q = G;
  auto q = [&](int i, int j) -> double& { return Q[static_cast<std::size_t>(i) * d + j]; };
  for (int i = 0; i < d; ++i) {
    if (!(q(i, i) > 0)) throw SingularBasis("non-positive pivot in Gram decomposition");
    for (int j = i + 1; j < d; ++j) {
      q(j, i) = q(i, j);
      q(i, j) = q(i, j) / q(i, i);
    }
    for (int k = i + 1; k < d; ++k)
      for (int l = k; l < d; ++l) q(k, l) -= q(k, i) * q(i, l);
  }
  // Center in lattice coordinates: z = B^{-1} y, solved from the double basis.
  std::vector<double> z(static_cast<std::size_t>(d), 0.0);
  {
    std::vector<double> A = basis_row_major;
    std::vector<double> rhs(y);
    for (int col = 0; col < d; ++col) {
      int pivot = col;
      for (int r = col + 1; r < d; ++r)
        if (std::abs(A[static_cast<std::size_t>(r) * d + col]) >
            std::abs(A[static_cast<std::size_t>(pivot) * d + col]))
          pivot = r;
      for (int j = 0; j < d; ++j)
        std::swap(A[static_cast<std::size_t>(pivot) * d + j], A[static_cast<std::size_t>(col) * d + j]);
      std::swap(rhs[static_cast<std::size_t>(pivot)], rhs[static_cast<std::size_t>(col)]);
      double p = A[static_cast<std::size_t>(col) * d + col];
      if (p == 0) throw SingularBasis("singular basis in enumeration");
      for (int r = 0; r < d; ++r) {
        if (r == col) continue;
        double f = A[static_cast<std::size_t>(r) * d + col] / p;
        if (f == 0) continue;
        for (int j = col; j < d; ++j)
          A[static_cast<std::size_t>(r) * d + j] -= f * A[static_cast<std::size_t>(col) * d + j];
        rhs[static_cast<std::size_t>(r)] -= f * rhs[static_cast<std::size_t>(col)];
      }
    }
    for (int i = 0; i < d; ++i) z[static_cast<std::size_t>(i)] = rhs[static_cast<std::size_t>(i)] / A[static_cast<std::size_t>(i) * d + i];
  }
  const double rho2 = radius * radius * (1 + 1e-12) + 1e-300;
  std::vector<long> c(static_cast<std::size_t>(d), 0);
  std::vector<double> v(static_cast<std::size_t>(d), 0.0);  // c_i - z_i
  std::size_t nodes = 0;
  // Recursive descent from the last coordinate; ranges come from the
  // remaining quadratic budget at each level.
  auto descend = [&](auto&& self, int level, double partial) -> void {
    if (++nodes > budget) throw TruncationOverflow(static_cast<double>(nodes), budget);
    if (level < 0) {
      // Recompute the exact squared distance; the recursion value carries
      // cancellation error for skew bases.
      double r2 = 0;
      for (int i = 0; i < d; ++i) {
        double s = -y[static_cast<std::size_t>(i)];
        for (int j = 0; j < d; ++j)
          s += basis_row_major[static_cast<std::size_t>(i) * d + j] * static_cast<double>(c[static_cast<std::size_t>(j)]);
        r2 += s * s;
      }
      visit(c, r2);
      return;
    }
    double shift = 0;
    for (int j = level + 1; j < d; ++j) shift += q(level, j) * v[static_cast<std::size_t>(j)];
    double room = (rho2 - partial) / q(level, level);
    if (room < 0) return;
    double T = std::sqrt(room);
    double center = z[static_cast<std::size_t>(level)] - shift;
    long lo = static_cast<long>(std::ceil(center - T - 1e-9));
    long hi = static_cast<long>(std::floor(center + T + 1e-9));
    for (long ci = lo; ci <= hi; ++ci) {
      c[static_cast<std::size_t>(level)] = ci;
      v[static_cast<std::size_t>(level)] = static_cast<double>(ci) - z[static_cast<std::size_t>(level)];
      double w = v[static_cast<std::size_t>(level)] + shift;
      double next_partial = partial + q(level, level) * w * w;
      if (next_partial <= rho2) self(self, level - 1, next_partial);
    }
  };
  descend(descend, d - 1, 0.0);
}

namespace {

double lattice_min_distance_lower_bound(const Lattice& L) {
  // Exact shortest vector by enumeration when cheap; otherwise a coarse
  // determinant/Hadamard bound. Any positive lower bound keeps the tail
  // estimate valid.
  const int d = L.dim();
  double s = L.shortest_basis_len();
  double best = s;
  bool enumerated = false;
  try {
    std::vector<double> origin(static_cast<std::size_t>(d), 0.0);
    enumerate_ball(d, L.basis(), origin, s * 1.0000001, 200000,
                   [&](const std::vector<long>& c, double r2) {
                     bool zero = true;
                     for (long v : c)
                       if (v != 0) zero = false;
                     if (!zero && r2 > 0) best = std::min(best, std::sqrt(r2));
                   });
    enumerated = true;
  } catch (const TruncationOverflow&) {
  }
  if (enumerated) return best;
  double prod = 1, minlen = std::numeric_limits<double>::infinity();
  for (int j = 0; j < d; ++j) {
    double len = 0;
    for (int i = 0; i < d; ++i) {
      double v = L.basis()[static_cast<std::size_t>(i) * d + j];
      len += v * v;
    }
    len = std::sqrt(len);
    prod *= len;
    minlen = std::min(minlen, len);
  }
  return std::max(L.det() * minlen / prod, 1e-12);
}

ThetaValue theta_reduced(const Lattice& L, double t, const std::vector<double>& xr,
                         const ThetaOptions& opt) {
  const int d = L.dim();
  if (L.is_diagonal()) {
    std::vector<double> b = diag_entries(L);
    double prod_bar = 1;
    std::vector<double> bar(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) {
      bar[static_cast<std::size_t>(i)] = 2.0 + 1.0 / (b[static_cast<std::size_t>(i)] * std::sqrt(t));
      prod_bar *= bar[static_cast<std::size_t>(i)];
    }
    double value = 1, tail = 0, radius = 0;
    for (int i = 0; i < d; ++i) {
      double others = prod_bar / bar[static_cast<std::size_t>(i)];
      double tol_i = opt.tolerance / (d * std::max(others, 1.0));
      OneDimTheta one = theta_1d(b[static_cast<std::size_t>(i)], t, xr[static_cast<std::size_t>(i)], tol_i,
                                 opt.point_budget, opt.fixed_radius);
      value *= one.value;
      tail += one.tail * others;
      radius = std::max(radius, one.radius);
    }
    return {value, radius, tail};
  }
  double lambda1 = lattice_min_distance_lower_bound(L);
  double norm_x = 0;
  for (double v : xr) norm_x += v * v;
  norm_x = std::sqrt(norm_x);
  double s_seed = std::min(L.shortest_basis_len(), 3.0);
  double rho = norm_x +
               std::sqrt(std::max(0.0, d * std::log(3.0 / s_seed) + std::log(1.0 / opt.tolerance) + d) /
                         (kPi * t)) +
               L.covering_pad();
  double tail = 0;
  if (opt.fixed_radius > 0) {
    rho = opt.fixed_radius;
    tail = gaussian_tail_bound(rho, t, d, lambda1);
  } else {
    for (int rounds = 0; rounds < 256; ++rounds) {
      tail = gaussian_tail_bound(rho, t, d, lambda1);
      if (tail < opt.tolerance) break;
      rho *= 1.2;
    }
  }
  double sum = 0;
  enumerate_ball(d, L.basis(), xr, rho, opt.point_budget,
                 [&](const std::vector<long>&, double r2) { sum += std::exp(-kPi * t * r2); });
  return {sum, rho, tail};
}

}  // namespace

ThetaValue theta(const Lattice& L, double t, const std::vector<double>& x, const ThetaOptions& opt) {
  if (!(t > 0)) throw std::invalid_argument("t must be positive");
  return theta_reduced(L, t, L.reduce(x), opt);
}

ThetaValue theta(const Lattice& L, double t, const FixedVector& x, const ThetaOptions& opt) {
  if (!(t > 0)) throw std::invalid_argument("t must be positive");
  return theta_reduced(L, t, L.reduce(x), opt);
}

double a_const(const Lattice& L, const ThetaOptions& opt, double rel_tol) {
  std::vector<double> origin(static_cast<std::size_t>(L.dim()), 0.0);
  double via_dual = theta_reduced(L.dual_lattice(), 1.0, origin, opt).value;
  double via_det = L.det() * theta_reduced(L, 1.0, origin, opt).value;
  if (std::abs(via_dual - via_det) > rel_tol * std::max(1.0, std::abs(via_dual)))
    throw PoissonMismatch(via_dual, via_det);
  return via_dual;
}

PoissonIdentity poisson_check(const Lattice& L, double t, const std::vector<double>& x,
                              const ThetaOptions& opt) {
  if (!(t > 0)) throw std::invalid_argument("t must be positive");
  const int d = L.dim();
  std::vector<double> xr = L.reduce(x);
  double lhs = theta_reduced(L, t, xr, opt).value;
  Lattice dual = L.dual_lattice();
  const double t_dual = 1.0 / t;
  std::complex<double> acc(0.0, 0.0);
  if (dual.is_diagonal()) {
    std::vector<double> b = diag_entries(dual);
    std::complex<double> prod(1.0, 0.0);
    for (int i = 0; i < d; ++i) {
      double bi = b[static_cast<std::size_t>(i)];
      OneDimTheta probe = theta_1d(bi, t_dual, 0.0, opt.tolerance / (4 * d), opt.point_budget, 0);
      long hi = static_cast<long>(std::floor(probe.radius / bi));
      std::complex<double> s(0.0, 0.0);
      for (long k = -hi; k <= hi; ++k) {
        double xi = bi * static_cast<double>(k);
        double w = std::exp(-kPi * xi * xi * t_dual);
        double phase = 2 * kPi * xi * xr[static_cast<std::size_t>(i)];
        s += w * std::complex<double>(std::cos(phase), std::sin(phase));
      }
      prod *= s;
    }
    acc = prod;
  } else {
    double lambda1 = lattice_min_distance_lower_bound(dual);
    double rho = std::sqrt(std::max(1.0, d + std::log(1.0 / opt.tolerance)) / (kPi * t_dual)) +
                 dual.covering_pad();
    for (int rounds = 0; rounds < 256; ++rounds) {
      if (gaussian_tail_bound(rho, t_dual, d, lambda1) < opt.tolerance) break;
      rho *= 1.2;
    }
    std::vector<double> origin(static_cast<std::size_t>(d), 0.0);
    enumerate_ball(d, dual.basis(), origin, rho, opt.point_budget,
                   [&](const std::vector<long>& c, double r2) {
                     double phase = 0;
                     for (int i = 0; i < d; ++i) {
                       double xi = 0;
                       for (int j = 0; j < d; ++j)
                         xi += dual.basis()[static_cast<std::size_t>(i) * d + j] *
                               static_cast<double>(c[static_cast<std::size_t>(j)]);
                       phase += xi * xr[static_cast<std::size_t>(i)];
                     }
                     phase *= 2 * kPi;
                     double w = std::exp(-kPi * r2 * t_dual);
                     acc += w * std::complex<double>(std::cos(phase), std::sin(phase));
                   });
  }
  std::complex<double> rhs = acc * std::pow(t, -0.5 * d) / L.det();
  PoissonIdentity out;
  out.lhs = lhs;
  out.rhs_real = rhs.real();
  out.rhs_imag = rhs.imag();
  out.gap = std::abs(lhs - rhs.real());
  return out;
}

double f_avg(const IntPoly& h, const Lattice& L, const FixedVector& alpha, long N, int workers,
             const ThetaOptions& opt) {
  if (N < 1) throw std::invalid_argument("N must be >= 1");
  if (alpha.size() != static_cast<std::size_t>(L.dim()))
    throw std::invalid_argument("alpha dimension does not match lattice");
  long prec = common_precision(alpha);
  long needed = precision_for(h, N);
  if (prec < needed) throw InsufficientPrecision("f_avg alpha", needed, prec);

  const long block = 1024;
  const long nblocks = (N + block - 1) / block;
  std::vector<double> partial(static_cast<std::size_t>(nblocks), 0.0);
  mpz_class two_pow;
  mpz_setbit(two_pow.get_mpz_t(), static_cast<mp_bitcnt_t>(prec));
  run_blocks(N, block, workers, [&](long b, long lo, long hi) {
    double sum = 0;
    std::vector<mpq_class> x(alpha.size());
    for (long n = lo + 1; n <= hi; ++n) {
      mpz_class hn = h.eval(n);
      for (std::size_t j = 0; j < alpha.size(); ++j) {
        mpq_class v(alpha[j].mantissa() * hn, two_pow);
        v.canonicalize();
        x[j] = v;
      }
      sum += theta_reduced(L, 1.0, L.reduce_mpq(x), opt).value;
    }
    partial[static_cast<std::size_t>(b)] = sum;
  });
  double total = 0;
  for (double p : partial) total += p;
  return L.det() * total / static_cast<double>(N);
}

Dichotomy alternative_check(const IntPoly& h_q, const Lattice& L, const FixedVector& alpha,
                            const mpz_class& q, long N, double xi_radius, long qprime_max,
                            double norm_tol, int workers, const ThetaOptions& opt) {
  if (q < 1 || N < 1 || qprime_max < 1 || !(xi_radius > 0))
    throw std::invalid_argument("bad dichotomy parameters");
  const int d = L.dim();
  Dichotomy out;
  int k = std::max(1, h_q.degree());
  mpz_setbit(out.exponent_budget.get_mpz_t(), static_cast<mp_bitcnt_t>(10 * k));
  // q <= N^(1/K) with K = 2^(10k) >= 1024: any q >= 2 would need N >= 2^1024,
  // far beyond the representable search range, so only q = 1 qualifies.
  out.precondition_ok = (q == 1);
  out.f_value = f_avg(h_q, L, alpha, N, workers, opt);
  if (out.f_value >= 0.5) {
    out.kind = Dichotomy::Kind::CaseI;
    return out;
  }
  // Enumerate primitive dual vectors up to the radius; each sign pair is
  // represented once (first nonzero coordinate positive).
  Lattice dual = L.dual_lattice();
  struct Cand {
    std::vector<long> c;
    double r2;
  };
  std::vector<Cand> cands;
  std::vector<double> origin(static_cast<std::size_t>(d), 0.0);
  enumerate_ball(d, dual.basis(), origin, xi_radius, opt.point_budget,
                 [&](const std::vector<long>& c, double r2) {
                   long g = 0;
                   int first_sign = 0;
                   for (long v : c) {
                     g = std::gcd(g, std::labs(v));
                     if (first_sign == 0 && v != 0) first_sign = v > 0 ? 1 : -1;
                   }
                   if (g != 1 || first_sign <= 0) return;
                   cands.push_back({c, r2});
                 });
  std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
    if (a.r2 != b.r2) return a.r2 < b.r2;
    return a.c < b.c;
  });
  std::vector<mpq_class> alpha_q = to_mpq_vector(alpha);
  bool have_best = false;
  mpq_class best_dist;
  long best_qp = 0;
  std::size_t best_idx = 0;
  for (std::size_t idx = 0; idx < cands.size(); ++idx) {
    // xi . alpha, exactly.
    mpq_class dot(0);
    for (int i = 0; i < d; ++i) {
      mpq_class xi_i(0);
      for (int j = 0; j < d; ++j)
        xi_i += L.inverse_exact()[static_cast<std::size_t>(j) * d + i] *
                mpq_class(cands[idx].c[static_cast<std::size_t>(j)]);
      dot += xi_i * alpha_q[static_cast<std::size_t>(i)];
    }
    mpq_class qp_dot = 0;
    for (long qp = 1; qp <= qprime_max; ++qp) {
      qp_dot += dot;
      mpq_class dist = mpq_dist_to_nearest_int(qp_dot);
      if (!have_best || dist < best_dist) {
        have_best = true;
        best_dist = dist;
        best_qp = qp;
        best_idx = idx;
      }
    }
  }
  if (have_best) {
    out.xi_coords = cands[best_idx].c;
    out.xi.resize(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) {
      double v = 0;
      for (int j = 0; j < d; ++j)
        v += dual.basis()[static_cast<std::size_t>(i) * d + j] *
             static_cast<double>(cands[best_idx].c[static_cast<std::size_t>(j)]);
      out.xi[static_cast<std::size_t>(i)] = v;
    }
    out.q_prime = best_qp;
    out.achieved_norm = best_dist.get_d();
    out.kind = best_dist.get_d() <= norm_tol ? Dichotomy::Kind::CaseII : Dichotomy::Kind::Exhausted;
  } else {
    out.kind = Dichotomy::Kind::Exhausted;
  }
  return out;
}

}  // namespace polyrecur
