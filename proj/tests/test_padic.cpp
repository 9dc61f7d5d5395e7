#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "polyrecur/padic.hpp"

using namespace polyrecur;

namespace {

const IntPoly kQuintic = IntPoly::parse("x^5+x^4+x^3-19x^2-19x-19");

std::vector<mpz_class> brute_roots(const IntPoly& h, long modulus) {
  std::vector<mpz_class> out;
  for (long r = 0; r < modulus; ++r)
    if (h.eval_mod(mpz_class(r), mpz_class(modulus)) == 0) out.emplace_back(r);
  return out;
}

mpz_class pow_l(long p, int e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(e));
  return r;
}

}  // namespace

TEST_CASE("roots mod prime powers: examples") {
  CHECK(roots_mod_prime_power(IntPoly::parse("x^2+1"), 3, 1).empty());
  CHECK(roots_mod_prime_power(IntPoly::parse("x^2"), 5, 2) ==
        std::vector<mpz_class>{0, 5, 10, 15, 20});
  for (long p : {2L, 5L, 13L})
    for (int j = 1; j <= 3; ++j)
      CHECK(roots_mod_prime_power(IntPoly::parse("x-1"), p, j) == std::vector<mpz_class>{1});
}

TEST_CASE("roots mod prime powers agree with brute force") {
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<long> coeff(-50, 50);
  std::vector<std::pair<long, int>> levels = {{2, 1}, {2, 3}, {2, 8}, {3, 2}, {3, 5},
                                              {5, 3}, {7, 2}, {11, 3}, {47, 2}, {97, 1},
                                              {101, 2}, {9973, 1}};
  for (int trial = 0; trial < 8; ++trial) {
    std::vector<mpz_class> c(5);
    for (auto& x : c) x = coeff(rng);
    IntPoly h(std::move(c));
    for (auto [p, j] : levels) {
      mpz_class mod = pow_l(p, j);
      if (mod > 10000) continue;
      CHECK(roots_mod_prime_power(h, p, j) == brute_roots(h, mod.get_si()));
    }
  }
}

TEST_CASE("root chains: squares carry multiplicity two") {
  RootSystem rs = choose_root_system(IntPoly::parse("x^2"), {7}, 3);
  const PrimeRootRecord* rec = rs.find(7);
  REQUIRE(rec != nullptr);
  CHECK(rec->residues == std::vector<mpz_class>{0, 0, 0});
  CHECK(rec->multiplicity == 2);
}

TEST_CASE("root chains: quintic at p=3 picks the smallest qualifying lift") {
  RootSystem rs = choose_root_system(kQuintic, {3}, 2);
  const PrimeRootRecord* rec = rs.find(3);
  REQUIRE(rec != nullptr);
  // h(1) = -54 vanishes mod 3 and mod 9, so the chain starts (1, 1).
  CHECK(rec->residues == std::vector<mpz_class>{1, 1});
  CHECK(rec->multiplicity == 1);
}

TEST_CASE("root chains: missing root is an error") {
  CHECK_THROWS_AS(choose_root_system(IntPoly::parse("x^2+1"), {3}, 1), NoRootChain);
  try {
    choose_root_system(IntPoly::parse("x^2+1"), {3}, 1);
  } catch (const NoRootChain& e) {
    CHECK(e.prime == 3);
  }
}

TEST_CASE("root chains survive deep fake branches") {
  // At p=3 the quintic has side branches vanishing to high but finite order;
  // a depth-6 chain must tunnel through to the genuine one.
  RootSystem rs = choose_root_system(kQuintic, {3}, 6);
  const PrimeRootRecord* rec = rs.find(3);
  REQUIRE(rec != nullptr);
  CHECK(rec->depth() == 6);
  for (int j = 1; j <= 6; ++j) {
    mpz_class mod = pow_l(3, j);
    CHECK(kQuintic.eval_mod(rec->residues[j - 1], mod) == 0);
    if (j > 1) {
      mpz_class prev_mod = pow_l(3, j - 1);
      mpz_class reduced;
      mpz_fdiv_r(reduced.get_mpz_t(), rec->residues[j - 1].get_mpz_t(), prev_mod.get_mpz_t());
      CHECK(reduced == rec->residues[j - 2]);
    }
  }
  CHECK(rec->multiplicity == 1);
}

TEST_CASE("lambda: multiplicity powers") {
  RootSystem sq = root_system_for_moduli(IntPoly::parse("x^2"), 30);
  CHECK(lambda_of(sq, 12) == 144);
  CHECK(lambda_of(sq, 1) == 1);
  RootSystem lin = root_system_for_moduli(IntPoly::parse("x-1"), 30);
  CHECK(lambda_of(lin, 30) == 30);
  CHECK_THROWS_AS(lambda_of(lin, 31), UncoveredPrime);
}

TEST_CASE("chosen root representatives") {
  RootSystem sq = root_system_for_moduli(IntPoly::parse("x^2"), 50);
  for (long q : {1L, 2L, 9L, 24L, 49L}) CHECK(chosen_root(sq, q) == 0);
  RootSystem lin = root_system_for_moduli(IntPoly::parse("x-1"), 50);
  CHECK(chosen_root(lin, 5) == -4);
  CHECK(chosen_root(lin, 1) == 0);
  CHECK_THROWS_AS(chosen_root(choose_root_system(IntPoly::parse("x-1"), {2}, 1), mpz_class(4)),
                  InsufficientPrecision);
}

TEST_CASE("auxiliary data: worked examples") {
  RootSystem cube = root_system_for_moduli(IntPoly::parse("x^3"), 10);
  AuxiliaryData a = auxiliary(cube, 4);
  CHECK(a.r_q == 0);
  CHECK(a.lambda_q == 64);
  CHECK(a.h_q == IntPoly::parse("x^3"));

  RootSystem pm1 = root_system_for_moduli(IntPoly::parse("x^2-1"), 10);
  AuxiliaryData b = auxiliary(pm1, 2);
  CHECK(b.r_q == -1);
  CHECK(b.lambda_q == 2);
  CHECK(b.h_q == IntPoly::parse("2x^2-2x"));

  AuxiliaryData c = auxiliary(pm1, 1);
  CHECK(c.r_q == 0);
  CHECK(c.lambda_q == 1);
  CHECK(c.h_q == IntPoly::parse("x^2-1"));
}

TEST_CASE("complete multiplicativity of lambda") {
  for (const char* poly : {"x^2", "x^5+x^4+x^3-19x^2-19x-19"}) {
    IntPoly h = IntPoly::parse(poly);
    RootSystem rs = root_system_for_moduli(h, 199);
    for (long q1 = 1; q1 <= 200; ++q1)
      for (long q2 = 1; q2 <= 200; ++q2)
        CHECK(lambda_of(rs, q1 * q2) == lambda_of(rs, q1) * lambda_of(rs, q2));
  }
}

TEST_CASE("representative congruence and divisibility") {
  IntPoly h = kQuintic;
  // Moduli q*q' with q, q' <= 200 only involve primes below 200, to depth 16.
  RootSystem rs = choose_root_system(h, primes_up_to(200), 16);
  for (long q = 1; q <= 200; ++q) {
    mpz_class r_small = chosen_root(rs, q);
    for (long qp = 1; qp <= 200; ++qp) {
      mpz_class r_big = chosen_root(rs, mpz_class(q) * qp);
      mpz_class diff = r_big - r_small;
      CHECK(mpz_divisible_p(diff.get_mpz_t(), mpz_class(q).get_mpz_t()));
    }
  }
  RootSystem rs_wide = root_system_for_moduli(h, 2000);
  for (long q = 1; q <= 2000; q += 7) {
    mpz_class r = chosen_root(rs_wide, q);
    mpz_class v = h.eval(r);
    CHECK(mpz_divisible_p(v.get_mpz_t(), mpz_class(q).get_mpz_t()));
  }
}

TEST_CASE("auxiliary integrality and coherence") {
  IntPoly h = kQuintic;
  RootSystem rs = choose_root_system(h, primes_up_to(300), 12);
  // Integrality over a spread of moduli (divide_exact throws otherwise).
  for (long q = 1; q <= 300; ++q) {
    AuxiliaryData a = auxiliary(rs, q);
    CHECK(a.h_q.degree() == h.degree());
    CHECK(-a.q < a.r_q);
    CHECK(a.r_q <= 0);
  }
  // Two-step coherence: rescaling by qq' equals rescaling by q then by q'
  // along the shifted class.
  for (long q = 1; q <= 60; ++q)
    for (long qp = 1; qp <= 60; ++qp) {
      AuxiliaryData a_q = auxiliary(rs, q);
      AuxiliaryData a_qq = auxiliary(rs, mpz_class(q) * qp);
      mpz_class shift = (a_qq.r_q - a_q.r_q) / q;
      IntPoly recomposed =
          a_q.h_q.compose_affine(shift, qp).divide_exact(lambda_of(rs, qp));
      CHECK(recomposed == a_qq.h_q);
    }
}

TEST_CASE("intersectivity verdicts") {
  IntersectivityVerdict v1 = certify_intersective(IntPoly::parse("x^2+1"), 100, 4);
  CHECK(v1.kind == IntersectivityVerdict::Kind::Refuted);
  CHECK(v1.refuted_modulus == 3);
  CHECK(v1.witness.exhaustive);
  CHECK(v1.witness.residues_checked == 3);

  IntersectivityVerdict v2 = certify_intersective(IntPoly::parse("x^2-2"), 100, 4);
  CHECK(v2.kind == IntersectivityVerdict::Kind::Refuted);
  CHECK(v2.refuted_modulus == 3);

  IntersectivityVerdict v3 = certify_intersective(kQuintic, 100, 4);
  CHECK(v3.kind == IntersectivityVerdict::Kind::NoObstructionFound);
  CHECK(v3.prime_bound == 100);
  CHECK(v3.depth == 4);

  IntersectivityVerdict v4 = certify_intersective(IntPoly::parse("x^2+7x"), 100, 4);
  CHECK(v4.kind == IntersectivityVerdict::Kind::CertifiedByIntegerRoot);
  CHECK(v4.integer_root == 0);

  IntersectivityVerdict v5 = certify_intersective(IntPoly::parse("x^2-4x+3"), 100, 4);
  CHECK(v5.kind == IntersectivityVerdict::Kind::CertifiedByIntegerRoot);
  CHECK(IntPoly::parse("x^2-4x+3").eval(v5.integer_root) == 0);

  // A nonzero constant is obstructed at the first prime power beyond it.
  IntersectivityVerdict v6 = certify_intersective(IntPoly::parse("[6]"), 10, 3);
  CHECK(v6.kind == IntersectivityVerdict::Kind::Refuted);
  CHECK(v6.refuted_modulus == 4);
}

TEST_CASE("prime utilities") {
  CHECK(primes_up_to(1).empty());
  CHECK(primes_up_to(13) == std::vector<long>{2, 3, 5, 7, 11, 13});
  auto f = factorize(mpz_class(2000));
  REQUIRE(f.size() == 2);
  CHECK(f[0] == std::pair<long, int>(2, 4));
  CHECK(f[1] == std::pair<long, int>(5, 3));
  CHECK(factorize(mpz_class(1)).empty());
}
