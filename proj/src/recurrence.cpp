#include "polyrecur/recurrence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "polyrecur/parallel.hpp"

namespace polyrecur {

namespace {

constexpr double kPi = 3.14159265358979323846;

struct Candidate {
  mpz_class max_dist;               // mantissa of the worst coordinate
  long n = 0;
  std::vector<mpz_class> dists;     // per-coordinate mantissas

  bool better_than(const std::optional<Candidate>& other) const {
    if (!other) return true;
    int c = cmp(max_dist, other->max_dist);
    if (c != 0) return c < 0;
    return n < other->n;
  }
};

RecurrenceResult minimize_over_range(const std::vector<IntPoly>& polys, const FixedVector& alpha,
                                     long N, bool require_nonzero, int workers) {
  if (N < 1) throw std::invalid_argument("N must be >= 1");
  if (polys.size() != alpha.size()) throw std::invalid_argument("polys/alpha length mismatch");
  const long prec = common_precision(alpha);
  const long needed = precision_for(polys, N);
  if (prec < needed) throw InsufficientPrecision("recurrence alpha", needed, prec);
  const std::size_t d = polys.size();
  const bool same_poly = std::all_of(polys.begin(), polys.end(),
                                     [&](const IntPoly& p) { return p == polys.front(); });

  const long block = 8192;
  const long nblocks = (N + block - 1) / block;
  std::vector<std::optional<Candidate>> block_best(static_cast<std::size_t>(nblocks));
  run_blocks(N, block, workers, [&](long b, long lo, long hi) {
    std::optional<Candidate> best;
    std::vector<mpz_class> dists(d);
    mpz_class hn;
    for (long n = lo + 1; n <= hi; ++n) {
      bool admissible = true;
      mpz_class max_dist = -1;
      for (std::size_t j = 0; j < d; ++j) {
        if (j == 0 || !same_poly) hn = polys[j].eval(n);
        if (require_nonzero && hn == 0) {
          admissible = false;
          break;
        }
        dists[j] = alpha[j].dist_mantissa_scaled(hn);
        if (dists[j] > max_dist) max_dist = dists[j];
      }
      if (!admissible) continue;
      bool better;
      if (!best) {
        better = true;
      } else {
        int c = cmp(max_dist, best->max_dist);
        better = c < 0 || (c == 0 && n < best->n);
      }
      if (better) best = Candidate{std::move(max_dist), n, dists};
    }
    block_best[static_cast<std::size_t>(b)] = std::move(best);
  });

  std::optional<Candidate> overall;
  for (auto& cand : block_best)
    if (cand && cand->better_than(overall)) overall = std::move(cand);
  if (!overall) throw AllRootsInRange(N);

  RecurrenceResult out;
  out.n_star = overall->n;
  out.N = N;
  out.nonzero_constraint = require_nonzero;
  out.values.resize(d);
  for (std::size_t j = 0; j < d; ++j)
    out.values[j] = std::ldexp(overall->dists[j].get_d(), static_cast<int>(-prec));
  out.max_norm = std::ldexp(overall->max_dist.get_d(), static_cast<int>(-prec));
  return out;
}

}  // namespace

double dist_to_nearest_int(const FixedReal& x) { return x.dist_to_nearest_int(); }

RecurrenceResult best_recurrence(const IntPoly& h, const FixedVector& alpha, long N,
                                 bool require_nonzero, int workers) {
  std::vector<IntPoly> polys(alpha.size(), h);
  return minimize_over_range(polys, alpha, N, require_nonzero, workers);
}

RecurrenceResult kronecker_search(const FixedVector& alpha, long N, int workers) {
  return best_recurrence(IntPoly::x(), alpha, N, false, workers);
}

RecurrenceResult system_recurrence(const std::vector<IntPoly>& polys, const FixedVector& alpha,
                                   long N, int workers) {
  for (std::size_t j = 0; j < polys.size(); ++j)
    if (polys[j].constant_term() != 0) throw ConstantTermViolation(j);
  return minimize_over_range(polys, alpha, N, false, workers);
}

MassProximity mass_proximity_check(const std::vector<double>& x, double R,
                                   const ThetaOptions& opt) {
  if (!(R > 0)) throw std::invalid_argument("R must be positive");
  const int d = static_cast<int>(x.size());
  Lattice L = Lattice::scaled_integer(R, d);
  MassProximity out;
  out.mass = theta(L, 1.0, x, opt).value;
  double A = a_const(L, opt);
  // If every lattice point is farther than sqrt(R), each Gaussian term
  // splits off a factor e^{-pi R/2} and the rest is bounded through the dual
  // mass, so the total cannot exceed this threshold.
  out.threshold = std::exp(-kPi * R / 2.0) * std::pow(2.0, 0.5 * d) * A / L.det();
  double dist2 = 0;
  for (double xi : x) {
    double r = xi - R * std::round(xi / R);
    dist2 += r * r;
  }
  out.dist = std::sqrt(dist2);
  out.consistent = !(out.mass > out.threshold && out.dist > std::sqrt(R));
  return out;
}

FixedVector resolve_alphas(const std::vector<std::string>& specs, std::uint64_t seed, long prec) {
  std::mt19937_64 rng(seed);
  FixedVector alpha;
  alpha.reserve(specs.size());
  for (const std::string& s : specs) {
    if (s == "random")
      alpha.push_back(FixedReal::random_unit(rng, prec));
    else
      alpha.push_back(FixedReal::parse(s, prec));
  }
  return alpha;
}

ScalingReport scaling_experiment(const ScalingSpec& spec, const std::vector<long>& n_grid,
                                 int workers) {
  if (n_grid.size() < 3) throw std::invalid_argument("grid needs at least 3 points");
  for (std::size_t i = 1; i < n_grid.size(); ++i)
    if (n_grid[i] <= n_grid[i - 1]) throw std::invalid_argument("grid must be strictly increasing");

  std::vector<IntPoly> polys = spec.polys;
  if (spec.kind == ScalingKind::kKronecker) {
    polys.assign(spec.alpha.size(), IntPoly::x());
  } else if (spec.kind == ScalingKind::kPolynomial) {
    if (polys.size() != 1) throw std::invalid_argument("polynomial scaling takes one polynomial");
    polys.assign(spec.alpha.size(), polys.front());
  } else {
    if (polys.size() != spec.alpha.size())
      throw std::invalid_argument("system scaling needs one multiplier per polynomial");
  }

  const long max_n = n_grid.back();
  const long prec = precision_for(polys, max_n);
  FixedVector alpha = resolve_alphas(spec.alpha, spec.seed, prec);

  ScalingReport report;
  report.kind = spec.kind;
  report.seed = spec.seed;
  report.precision_bits = prec;
  for (const FixedReal& a : alpha) {
    mpq_class q = a.to_mpq();
    report.alpha_desc.push_back(q.get_num().get_str() + "/" + q.get_den().get_str());
  }

  for (long N : n_grid) {
    RecurrenceResult r;
    switch (spec.kind) {
      case ScalingKind::kKronecker:
        r = kronecker_search(alpha, N, workers);
        break;
      case ScalingKind::kPolynomial:
        r = best_recurrence(spec.polys.front(), alpha, N, spec.require_nonzero, workers);
        break;
      case ScalingKind::kSystem:
        r = system_recurrence(spec.polys, alpha, N, workers);
        break;
    }
    report.grid.push_back({N, r.max_norm, r.n_star});
  }

  // Least squares on log-log points; exact hits have no logarithm and are
  // reported separately.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t m = 0;
  for (const ScalingPoint& p : report.grid) {
    if (p.max_norm <= 0) {
      report.exact_hits.push_back(p.N);
      continue;
    }
    double lx = std::log(static_cast<double>(p.N));
    double ly = std::log(p.max_norm);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++m;
  }
  report.points_used = m;
  if (m >= 2) {
    double denom = m * sxx - sx * sx;
    report.fitted_slope = (m * sxy - sx * sy) / denom;
    report.fitted_intercept = (sy - report.fitted_slope * sx) / m;
    double ss = 0;
    for (const ScalingPoint& p : report.grid) {
      if (p.max_norm <= 0) continue;
      double pred = report.fitted_intercept + report.fitted_slope * std::log(static_cast<double>(p.N));
      double res = std::log(p.max_norm) - pred;
      ss += res * res;
    }
    report.residual = std::sqrt(ss / m);
  } else {
    report.fitted_slope = std::numeric_limits<double>::quiet_NaN();
    report.fitted_intercept = std::numeric_limits<double>::quiet_NaN();
    report.residual = std::numeric_limits<double>::quiet_NaN();
  }
  return report;
}

}  // namespace polyrecur
