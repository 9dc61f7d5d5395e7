#ifndef POLYRECUR_RECURRENCE_HPP
#define POLYRECUR_RECURRENCE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "polyrecur/fixed_point.hpp"
#include "polyrecur/int_poly.hpp"
#include "polyrecur/lattice.hpp"

namespace polyrecur {

// Distance from x to the nearest integer, in [0, 1/2].
double dist_to_nearest_int(const FixedReal& x);

struct RecurrenceResult {
  long n_star = 0;             // minimizer, smallest on ties
  std::vector<double> values;  // ||p(n*) alpha_j|| per coordinate
  double max_norm = 0;
  long N = 0;
  bool nonzero_constraint = false;
};

// Exhaustive minimization of max_j ||h(n) alpha_j|| over 1 <= n <= N,
// skipping roots of h when require_nonzero. Candidates are compared by exact
// mantissas, so block order and worker count cannot change the winner.
RecurrenceResult best_recurrence(const IntPoly& h, const FixedVector& alpha, long N,
                                 bool require_nonzero, int workers = 0);

// best_recurrence specialized to h(x) = x.
RecurrenceResult kronecker_search(const FixedVector& alpha, long N, int workers = 0);

// Exhaustive minimization of max_j ||h_j(n) alpha_j|| for polynomials with
// zero constant term, one multiplier per polynomial.
RecurrenceResult system_recurrence(const std::vector<IntPoly>& polys, const FixedVector& alpha,
                                   long N, int workers = 0);

struct MassProximity {
  double mass = 0;       // Gaussian mass of R*Z^d around x
  double threshold = 0;  // e^{-pi R/2} 2^{d/2} A / det: mass above it forces a near point
  double dist = 0;       // distance from x to R*Z^d
  bool consistent = false;  // never (mass > threshold and dist > sqrt(R))
};

MassProximity mass_proximity_check(const std::vector<double>& x, double R,
                                   const ThetaOptions& opt = {});

enum class ScalingKind { kKronecker, kPolynomial, kSystem };

struct ScalingPoint {
  long N = 0;
  double max_norm = 0;
  long n_star = 0;
};

struct ScalingReport {
  ScalingKind kind = ScalingKind::kKronecker;
  std::vector<ScalingPoint> grid;   // sorted by N ascending
  double fitted_slope = 0;          // OLS on log-log points with max_norm > 0
  double fitted_intercept = 0;
  double residual = 0;              // RMS of fit residuals
  std::vector<long> exact_hits;     // N values with max_norm == 0, excluded from fit
  std::size_t points_used = 0;
  std::uint64_t seed = 0;
  long precision_bits = 0;
  std::vector<std::string> alpha_desc;  // resolved multipliers, exact digit strings
};

struct ScalingSpec {
  ScalingKind kind = ScalingKind::kKronecker;
  std::vector<IntPoly> polys;            // one for kPolynomial, several for kSystem
  std::vector<std::string> alpha;        // symbol | decimal | "random"
  std::uint64_t seed = 0;                // consumed by "random" entries
  bool require_nonzero = true;           // kPolynomial only
};

// Runs the matching search for every N in the grid (same multipliers
// throughout, so max_norm is non-increasing) and fits a power law to the
// nonzero points.
ScalingReport scaling_experiment(const ScalingSpec& spec, const std::vector<long>& n_grid,
                                 int workers = 0);

// Resolves "random"/symbol/decimal entries at the given precision; random
// entries consume the seeded generator in order.
FixedVector resolve_alphas(const std::vector<std::string>& specs, std::uint64_t seed, long prec);

}  // namespace polyrecur

#endif  // POLYRECUR_RECURRENCE_HPP
