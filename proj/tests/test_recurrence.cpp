#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "polyrecur/exp_sums.hpp"
#include "polyrecur/recurrence.hpp"

using namespace polyrecur;

namespace {

// Naive reference search: power-by-power evaluation and rational arithmetic
// end to end, sharing nothing with the fixed-point search path.
struct NaiveResult {
  long n_star = 0;
  mpq_class max_dist;
};

NaiveResult naive_search(const std::vector<IntPoly>& polys, const FixedVector& alpha, long N,
                         bool require_nonzero) {
  NaiveResult best;
  bool have = false;
  for (long n = 1; n <= N; ++n) {
    mpq_class worst = -1;
    bool admissible = true;
    for (std::size_t j = 0; j < polys.size(); ++j) {
      mpq_class value = 0;
      mpq_class npow = 1;
      for (const mpz_class& c : polys[j].coeffs()) {
        value += mpq_class(c) * npow;
        npow *= n;
      }
      if (require_nonzero && value == 0) {
        admissible = false;
        break;
      }
      mpq_class away = mpq_dist_to_nearest_int(value * alpha[j].to_mpq());
      if (away > worst) worst = away;
    }
    if (!admissible) continue;
    if (!have || worst < best.max_dist) {
      best.n_star = n;
      best.max_dist = worst;
      have = true;
    }
  }
  if (!have) best.n_star = 0;
  return best;
}

}  // namespace

TEST_CASE("distance to nearest integer") {
  CHECK(dist_to_nearest_int(FixedReal::from_decimal("0.5", 80)) == doctest::Approx(0.5));
  CHECK(dist_to_nearest_int(FixedReal::from_decimal("3.2", 80)) == doctest::Approx(0.2));
  CHECK(dist_to_nearest_int(FixedReal::from_decimal("-0.7", 80)) == doctest::Approx(0.3));
  CHECK(dist_to_nearest_int(FixedReal::zero(80)) == 0.0);
}

TEST_CASE("best recurrence: convergent minimizers") {
  long prec = precision_for(IntPoly::x(), 100);
  FixedVector root2{FixedReal::from_symbol("sqrt2", prec)};
  RecurrenceResult r = best_recurrence(IntPoly::x(), root2, 100, false);
  CHECK(r.n_star == 70);
  CHECK(r.max_norm == doctest::Approx(0.00505063388335).epsilon(1e-9));
  CHECK(r.values.size() == 1);
  CHECK(r.values[0] == r.max_norm);

  // 1/7 lands on an integer at n = 7; the stored multiplier is the nearest
  // dyadic, so the hit is exact only to the working precision.
  FixedVector seventh{FixedReal::from_mpq(mpq_class(1, 7), prec)};
  RecurrenceResult r7 = best_recurrence(IntPoly::x(), seventh, 100, false);
  CHECK(r7.n_star == 7);
  CHECK(r7.max_norm < std::ldexp(8.0, static_cast<int>(-prec)));

  // A dyadic multiplier hits exactly.
  FixedVector eighth{FixedReal::from_mpq(mpq_class(1, 8), prec)};
  RecurrenceResult r8 = best_recurrence(IntPoly::x(), eighth, 100, false);
  CHECK(r8.n_star == 8);
  CHECK(r8.max_norm == 0.0);
}

TEST_CASE("best recurrence: nonzero constraint") {
  IntPoly h = IntPoly::parse("x^2-x");  // vanishes at 1
  long prec = precision_for(h, 1);
  FixedVector alpha{FixedReal::from_symbol("sqrt2", prec)};
  CHECK_THROWS_AS(best_recurrence(h, alpha, 1, true), AllRootsInRange);
  RecurrenceResult ok = best_recurrence(h, alpha, 1, false);
  CHECK(ok.n_star == 1);
  CHECK(ok.max_norm == 0.0);
}

TEST_CASE("kronecker search") {
  long prec = precision_for(IntPoly::x(), 50);
  FixedVector zeros{FixedReal::zero(prec), FixedReal::zero(prec)};
  RecurrenceResult r = kronecker_search(zeros, 50);
  CHECK(r.n_star == 1);
  CHECK(r.max_norm == 0.0);
  CHECK_FALSE(r.nonzero_constraint);

  // Golden-ratio convergents are global minimizers at Fibonacci bounds.
  long prec2 = precision_for(IntPoly::x(), 25);
  FixedVector phi{FixedReal::from_symbol("phi", prec2)};
  CHECK(kronecker_search(phi, 13).n_star == 13);
  CHECK(kronecker_search(phi, 20).n_star == 13);
  CHECK(kronecker_search(phi, 21).n_star == 21);
}

TEST_CASE("kronecker agrees with the denominator search") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 30; ++trial) {
    long N = 50 + static_cast<long>(rng() % 2000);
    long prec = precision_for(IntPoly::x(), N);
    FixedReal alpha = FixedReal::random_unit(rng, prec);
    RecurrenceResult r = kronecker_search(FixedVector{alpha}, N);
    BestRational b = best_rational(alpha, N);
    CHECK(mpz_class(r.n_star) == b.q_prime);
    CHECK(r.max_norm == doctest::Approx(b.dist));
  }
}

TEST_CASE("system recurrence") {
  std::vector<IntPoly> polys{IntPoly::parse("x"), IntPoly::parse("x^2")};
  long prec = precision_for(polys, 1000);
  FixedVector alpha{FixedReal::from_symbol("sqrt2", prec), FixedReal::from_symbol("sqrt2", prec)};
  RecurrenceResult r = system_recurrence(polys, alpha, 1000);
  NaiveResult oracle = naive_search(polys, alpha, 1000, false);
  CHECK(r.n_star == oracle.n_star);
  CHECK(r.max_norm == doctest::Approx(oracle.max_dist.get_d()).epsilon(1e-14));

  FixedVector zeros{FixedReal::zero(prec), FixedReal::zero(prec)};
  RecurrenceResult rz = system_recurrence(polys, zeros, 1000);
  CHECK(rz.n_star == 1);
  CHECK(rz.max_norm == 0.0);

  // Single linear system collapses to the kronecker search.
  FixedVector single{FixedReal::from_symbol("sqrt2", prec)};
  RecurrenceResult rs = system_recurrence({IntPoly::x()}, single, 1000);
  RecurrenceResult rk = kronecker_search(single, 1000);
  CHECK(rs.n_star == rk.n_star);
  CHECK(rs.max_norm == rk.max_norm);

  CHECK_THROWS_AS(system_recurrence({IntPoly::parse("x^2+1")}, single, 10), ConstantTermViolation);
}

TEST_CASE("search equals the naive reference on random instances") {
  std::mt19937_64 rng(43);
  std::uniform_int_distribution<int> deg(1, 4);
  std::uniform_int_distribution<long> coeff(-9, 9);
  std::uniform_int_distribution<long> n_dist(20, 500);
  for (int trial = 0; trial < 100; ++trial) {
    int k = deg(rng);
    std::vector<mpz_class> c(static_cast<std::size_t>(k) + 1);
    bool nonzero = false;
    for (auto& v : c) {
      v = coeff(rng);
      if (v != 0) nonzero = true;
    }
    if (!nonzero) c.back() = 1;
    IntPoly h(std::move(c));
    long N = n_dist(rng);
    int d = 1 + static_cast<int>(rng() % 3);
    long prec = precision_for(h, N);
    FixedVector alpha;
    for (int j = 0; j < d; ++j) alpha.push_back(FixedReal::random_unit(rng, prec));
    std::vector<IntPoly> polys(static_cast<std::size_t>(d), h);
    bool require_nonzero = trial % 2 == 0;
    NaiveResult oracle = naive_search(polys, alpha, N, require_nonzero);
    if (oracle.n_star == 0) {
      CHECK_THROWS_AS(best_recurrence(h, alpha, N, require_nonzero), AllRootsInRange);
      continue;
    }
    RecurrenceResult got = best_recurrence(h, alpha, N, require_nonzero);
    CHECK(got.n_star == oracle.n_star);
    CHECK(std::abs(got.max_norm - oracle.max_dist.get_d()) < 1e-16);
  }
}

TEST_CASE("parallel search matches serial bit for bit") {
  IntPoly h = IntPoly::parse("x^2");
  long N = 40000;
  long prec = precision_for(h, N);
  FixedVector alpha{FixedReal::from_symbol("sqrt3", prec)};
  RecurrenceResult serial = best_recurrence(h, alpha, N, true, 1);
  RecurrenceResult wide = best_recurrence(h, alpha, N, true, 4);
  CHECK(serial.n_star == wide.n_star);
  CHECK(serial.max_norm == wide.max_norm);
}

TEST_CASE("monotone in the search bound") {
  IntPoly h = IntPoly::parse("x^2");
  long prec = precision_for(h, 20000);
  FixedVector alpha{FixedReal::from_symbol("sqrt2", prec)};
  double prev = 1;
  for (long N : {100L, 1000L, 5000L, 20000L}) {
    double v = best_recurrence(h, alpha, N, true).max_norm;
    CHECK(v <= prev);
    prev = v;
  }
}

TEST_CASE("integer shifts of the multipliers change nothing") {
  std::mt19937_64 rng(47);
  IntPoly h = IntPoly::parse("x^3-x");
  long N = 300;
  long prec = precision_for(h, N);
  FixedReal a = FixedReal::random_unit(rng, prec);
  FixedReal b = FixedReal::random_unit(rng, prec);
  FixedVector alpha{a, b};
  FixedVector shifted{FixedReal(a.mantissa() + (mpz_class(5) << prec), prec),
                      FixedReal(b.mantissa() - (mpz_class(12) << prec), prec)};
  RecurrenceResult r1 = best_recurrence(h, alpha, N, false);
  RecurrenceResult r2 = best_recurrence(h, shifted, N, false);
  CHECK(r1.n_star == r2.n_star);
  CHECK(r1.max_norm == r2.max_norm);
  CHECK(r1.values == r2.values);
}

TEST_CASE("negating the multipliers changes nothing") {
  std::mt19937_64 rng(53);
  IntPoly h = IntPoly::parse("x^2+x");
  long N = 250;
  long prec = precision_for(h, N);
  FixedReal a = FixedReal::random_unit(rng, prec);
  FixedVector alpha{a};
  FixedVector negated{-a};
  RecurrenceResult r1 = best_recurrence(h, alpha, N, false);
  RecurrenceResult r2 = best_recurrence(h, negated, N, false);
  CHECK(r1.n_star == r2.n_star);
  CHECK(r1.max_norm == r2.max_norm);
}

TEST_CASE("mass proximity: worked cases") {
  MassProximity at_origin = mass_proximity_check({0.0, 0.0}, 3.0);
  CHECK(at_origin.dist == 0.0);
  CHECK(at_origin.mass >= 1.0);
  CHECK(at_origin.consistent);

  // Deep hole of 4 Z^2: far from the lattice and the mass is tiny.
  MassProximity hole = mass_proximity_check({2.0, 2.0}, 4.0);
  CHECK(hole.dist == doctest::Approx(2 * std::sqrt(2.0)));
  CHECK(hole.dist > std::sqrt(4.0));
  CHECK(hole.mass < hole.threshold);
  CHECK(hole.consistent);

  // Close points are consistent no matter the mass.
  MassProximity close = mass_proximity_check({0.3, -0.2, 0.4}, 2.0);
  CHECK(close.dist <= std::sqrt(2.0));
  CHECK(close.consistent);
}

TEST_CASE("mass proximity: randomized implication") {
  std::mt19937_64 rng(59);
  std::uniform_real_distribution<double> r_dist(1.0, 8.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 2000; ++trial) {
    int d = 1 + trial % 3;
    double R = r_dist(rng);
    std::vector<double> x(static_cast<std::size_t>(d));
    for (auto& v : x) v = R * unit(rng);
    MassProximity m = mass_proximity_check(x, R);
    CHECK(m.consistent);
  }
}

TEST_CASE("scaling: linear rotation follows the reciprocal law") {
  ScalingSpec spec;
  spec.kind = ScalingKind::kKronecker;
  spec.alpha = {"sqrt2"};
  ScalingReport rep = scaling_experiment(spec, {100, 1000, 10000});
  REQUIRE(rep.grid.size() == 3);
  CHECK(rep.grid[0].n_star == 70);
  CHECK(rep.fitted_slope < -0.6);
  CHECK(rep.fitted_slope > -1.4);
  CHECK(rep.points_used == 3);
  for (std::size_t i = 1; i < rep.grid.size(); ++i)
    CHECK(rep.grid[i].max_norm <= rep.grid[i - 1].max_norm);
}

TEST_CASE("scaling: rational multipliers are excluded as exact hits") {
  ScalingSpec spec;
  spec.kind = ScalingKind::kKronecker;
  spec.alpha = {"0.25"};
  ScalingReport rep = scaling_experiment(spec, {10, 100, 1000});
  CHECK(rep.exact_hits == std::vector<long>{10, 100, 1000});
  CHECK(rep.points_used == 0);
  CHECK(std::isnan(rep.fitted_slope));
}

TEST_CASE("scaling: deterministic given the seed") {
  ScalingSpec spec;
  spec.kind = ScalingKind::kPolynomial;
  spec.polys = {IntPoly::parse("x^2")};
  spec.alpha = {"random"};
  spec.seed = 12345;
  ScalingReport a = scaling_experiment(spec, {100, 400, 1600});
  ScalingReport b = scaling_experiment(spec, {100, 400, 1600});
  REQUIRE(a.grid.size() == b.grid.size());
  for (std::size_t i = 0; i < a.grid.size(); ++i) {
    CHECK(a.grid[i].max_norm == b.grid[i].max_norm);
    CHECK(a.grid[i].n_star == b.grid[i].n_star);
  }
  CHECK(a.fitted_slope == b.fitted_slope);
  CHECK(a.alpha_desc == b.alpha_desc);
  CHECK(a.seed == 12345);

  ScalingSpec other = spec;
  other.seed = 54321;
  ScalingReport c = scaling_experiment(other, {100, 400, 1600});
  CHECK(c.alpha_desc != a.alpha_desc);
}

TEST_CASE("scaling: grid validation") {
  ScalingSpec spec;
  spec.kind = ScalingKind::kKronecker;
  spec.alpha = {"sqrt2"};
  CHECK_THROWS_AS(scaling_experiment(spec, {100, 1000}), std::invalid_argument);
  CHECK_THROWS_AS(scaling_experiment(spec, {100, 100, 1000}), std::invalid_argument);
}
