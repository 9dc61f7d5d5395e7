#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "polyrecur/int_poly.hpp"

using namespace polyrecur;

namespace {

IntPoly random_poly(std::mt19937_64& rng, int max_deg, long coeff_bound) {
  std::uniform_int_distribution<int> deg_dist(0, max_deg);
  std::uniform_int_distribution<long> coeff_dist(-coeff_bound, coeff_bound);
  int deg = deg_dist(rng);
  std::vector<mpz_class> c(static_cast<std::size_t>(deg) + 1);
  for (auto& x : c) x = coeff_dist(rng);
  return IntPoly(std::move(c));
}

// Plain j-th derivative (not divided by j!), by repeated differentiation.
IntPoly plain_derivative(const IntPoly& p, unsigned j) {
  std::vector<mpz_class> c = p.coeffs();
  for (unsigned rep = 0; rep < j; ++rep) {
    std::vector<mpz_class> d;
    for (std::size_t i = 1; i < c.size(); ++i) d.push_back(c[i] * static_cast<long>(i));
    c = std::move(d);
  }
  return IntPoly(std::move(c));
}

}  // namespace

TEST_CASE("evaluation") {
  IntPoly sq = IntPoly::parse("x^2");
  CHECK(sq.eval(0) == 0);
  CHECK(sq.eval(1000000) == mpz_class("1000000000000"));

  IntPoly quintic = IntPoly::parse("x^5+x^4+x^3-19x^2-19x-19");
  CHECK(quintic.eval(1) == -54);
  CHECK(quintic == IntPoly::parse("[-19,-19,-19,1,1,1]"));

  IntPoly zero;
  CHECK(zero.is_zero());
  CHECK(zero.degree() == IntPoly::kZeroDegree);
  CHECK(zero.eval(12345) == 0);
}

TEST_CASE("evaluation mod m") {
  IntPoly quintic = IntPoly::parse("x^5+x^4+x^3-19x^2-19x-19");
  for (long n : {0L, 1L, 7L, 100L}) {
    mpz_class direct;
    mpz_fdiv_r(direct.get_mpz_t(), quintic.eval(n).get_mpz_t(), mpz_class(97).get_mpz_t());
    CHECK(quintic.eval_mod(n, 97) == direct);
  }
}

TEST_CASE("hasse derivative") {
  IntPoly cube = IntPoly::parse("x^3");
  CHECK(cube.hasse_derivative(1) == IntPoly::parse("3x^2"));
  CHECK(cube.hasse_derivative(2) == IntPoly::parse("3x"));
  CHECK(cube.hasse_derivative(4).is_zero());
  CHECK(cube.hasse_derivative(0) == cube);
}

TEST_CASE("hasse derivative equals derivative over factorial") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    IntPoly p = random_poly(rng, 6, 1000);
    for (unsigned j = 0; j <= 7; ++j) {
      mpz_class fact;
      mpz_fac_ui(fact.get_mpz_t(), j);
      CHECK(p.hasse_derivative(j).times(fact) == plain_derivative(p, j));
    }
  }
}

TEST_CASE("affine composition") {
  CHECK(IntPoly::parse("x^2").compose_affine(0, 3) == IntPoly::parse("9x^2"));
  CHECK(IntPoly::parse("x^2-1").compose_affine(-1, 2) == IntPoly::parse("4x^2-4x"));
  IntPoly quintic = IntPoly::parse("x^5+x^4+x^3-19x^2-19x-19");
  CHECK(quintic.compose_affine(0, 1) == quintic);
  // Degree preserved, leading coefficient picks up q^deg.
  IntPoly composed = quintic.compose_affine(5, 7);
  CHECK(composed.degree() == 5);
  CHECK(composed.leading() == mpz_class(7 * 7) * (7 * 7) * 7);
}

TEST_CASE("composition agrees with evaluation on random instances") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> r_dist(-50, 50);
  std::uniform_int_distribution<long> q_dist(1, 20);
  std::uniform_int_distribution<long> n_dist(-30, 30);
  for (int trial = 0; trial < 200; ++trial) {
    IntPoly p = random_poly(rng, 6, 1000000);
    long r = r_dist(rng), q = q_dist(rng), n = n_dist(rng);
    CHECK(p.compose_affine(r, q).eval(n) == p.eval(r + q * n));
  }
}

TEST_CASE("composition law") {
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<long> r_dist(-20, 20);
  std::uniform_int_distribution<long> q_dist(1, 9);
  for (int trial = 0; trial < 100; ++trial) {
    IntPoly p = random_poly(rng, 5, 10000);
    long r = r_dist(rng), q = q_dist(rng), r2 = r_dist(rng), q2 = q_dist(rng);
    CHECK(p.compose_affine(r, q).compose_affine(r2, q2) ==
          p.compose_affine(r + q * r2, q * q2));
  }
}

TEST_CASE("exact division") {
  CHECK(IntPoly::parse("9x^2").divide_exact(9) == IntPoly::parse("x^2"));
  CHECK(IntPoly::parse("4x^2-4x").divide_exact(4) == IntPoly::parse("x^2-x"));
  CHECK_THROWS_AS(IntPoly::parse("3x+1").divide_exact(3), NonIntegralDivision);
  try {
    IntPoly::parse("3x+1").divide_exact(3);
  } catch (const NonIntegralDivision& e) {
    CHECK(e.coeff_index == 0);
  }
}

TEST_CASE("divide of multiple round trips") {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<long> m_dist(1, 10000);
  for (int trial = 0; trial < 100; ++trial) {
    IntPoly p = random_poly(rng, 6, 1000000);
    mpz_class m(m_dist(rng));
    CHECK(p.times(m).divide_exact(m) == p);
  }
}

TEST_CASE("text formats round trip") {
  IntPoly quintic = IntPoly::parse("[-19,-19,-19,1,1,1]");
  CHECK(quintic.to_human() == "x^5+x^4+x^3-19x^2-19x-19");
  CHECK(IntPoly::parse(quintic.to_human()) == quintic);
  CHECK(IntPoly::parse(quintic.to_coeff_list()) == quintic);
  CHECK(IntPoly::parse("x").to_coeff_list() == "[0,1]");
  CHECK(IntPoly::parse("-x^2+1").to_human() == "-x^2+1");
  CHECK(IntPoly::parse(" x^2 + x + 1 ") == IntPoly::parse("[1,1,1]"));
  CHECK(IntPoly().to_human() == "0");
  CHECK_THROWS(IntPoly::parse("x^"));
  CHECK_THROWS(IntPoly::parse("x+*3"));
  CHECK_THROWS(IntPoly::parse("[1,,2]"));
}

TEST_CASE("abs bound dominates") {
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 50; ++trial) {
    IntPoly p = random_poly(rng, 5, 1000);
    mpz_class bound = p.abs_eval_bound(37);
    for (long n = -37; n <= 37; n += 7) CHECK(abs(p.eval(n)) <= bound);
  }
}

TEST_CASE("precision covers the largest orbit value") {
  IntPoly quintic = IntPoly::parse("x^5+x^4+x^3-19x^2-19x-19");
  long prec = precision_for(quintic, 1000000);
  mpz_class top = abs(quintic.eval(1000000));
  CHECK(prec >= static_cast<long>(mpz_sizeinbase(top.get_mpz_t(), 2)) + 64);
}
