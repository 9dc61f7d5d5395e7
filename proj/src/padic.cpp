#include "polyrecur/padic.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace polyrecur {

namespace {

mpz_class pow_long(long base, int exp) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(base), static_cast<unsigned long>(exp));
  return r;
}

long padic_valuation(const mpz_class& v, long p) {
  // Caller guarantees v != 0.
  mpz_class t = v;
  long val = 0;
  while (mpz_divisible_ui_p(t.get_mpz_t(), static_cast<unsigned long>(p))) {
    mpz_divexact_ui(t.get_mpz_t(), t.get_mpz_t(), static_cast<unsigned long>(p));
    ++val;
  }
  return val;
}

// Residues r in [0, p) with h(r) = 0 mod p (p need not be prime).
// Machine-word Horner when the modulus fits; products stay below 2^62 for
// p < 2^31.
std::vector<mpz_class> roots_mod_prime(const IntPoly& h, long p) {
  std::vector<mpz_class> roots;
  if (p < (1L << 31)) {
    std::vector<unsigned long> c;
    c.reserve(h.coeffs().size());
    for (const mpz_class& x : h.coeffs())
      c.push_back(mpz_fdiv_ui(x.get_mpz_t(), static_cast<unsigned long>(p)));
    const unsigned long up = static_cast<unsigned long>(p);
    for (unsigned long r = 0; r < up; ++r) {
      unsigned long acc = 0;
      for (auto it = c.rbegin(); it != c.rend(); ++it) acc = (acc * r + *it) % up;
      if (acc == 0) roots.emplace_back(static_cast<long>(r));
    }
  } else {
    for (long r = 0; r < p; ++r)
      if (h.eval_mod(mpz_class(r), mpz_class(p)) == 0) roots.emplace_back(r);
  }
  return roots;
}

// Depth-first search for the lexicographically first chain of the given
// depth: smallest residue at each level, backtracking to the next candidate
// at the deepest live level when a branch has no lift. Returns the chain or
// nullopt, recording the shallowest level at which the whole tree was empty.
std::optional<std::vector<mpz_class>> first_chain(const IntPoly& h, long p, int depth,
                                                  int* dead_level) {
  std::vector<mpz_class> level1 = roots_mod_prime(h, p);
  if (level1.empty()) {
    if (dead_level) *dead_level = 1;
    return std::nullopt;
  }
  std::vector<mpz_class> chain;
  // extend(j): chain holds residues for levels 1..j; try to reach `depth`.
  auto extend = [&](auto&& self, int j) -> bool {
    if (j == depth) return true;
    const mpz_class step = pow_long(p, j);
    const mpz_class mod_next = step * p;
    for (long t = 0; t < p; ++t) {
      mpz_class cand = chain.back() + step * t;
      if (h.eval_mod(cand, mod_next) == 0) {
        chain.push_back(cand);
        if (self(self, j + 1)) return true;
        chain.pop_back();
      }
    }
    return false;
  };
  for (const mpz_class& r : level1) {
    chain.assign(1, r);
    if (extend(extend, 1)) return chain;
  }
  if (dead_level) *dead_level = depth;  // tree has nodes but no path this deep
  return std::nullopt;
}

// Multiplicity of the chosen chain's root: the smallest j >= 1 whose j-th
// Hasse derivative does not vanish p-adically at the root. At finite level J
// a value is trusted nonzero when its valuation is below J; otherwise it is
// saturated and the chain is re-derived at doubled depth, up to a cap. A
// representative that is an exact integer root settles every saturation
// (there the chain is constant and all evaluations are exact).
int chain_multiplicity(const IntPoly& h, long p, const std::vector<mpz_class>& stored_chain,
                       int requested_depth) {
  const int deg = h.degree();
  if (deg <= 0) return 1;
  const int cap = std::max(64, 4 * requested_depth);
  int J = std::max(requested_depth, 6);
  for (;;) {
    // Prefer extending the stored prefix so the multiplicity belongs to the
    // stored branch; fall back to a fresh deep search if the prefix dies.
    std::vector<mpz_class> chain;
    {
      std::vector<mpz_class> ext = stored_chain;
      const mpz_class mod_top = pow_long(p, J);
      bool ok = true;
      auto extend = [&](auto&& self, int j) -> bool {
        if (j == J) return true;
        const mpz_class step = pow_long(p, j);
        const mpz_class mod_next = step * p;
        for (long t = 0; t < p; ++t) {
          mpz_class cand = ext.back() + step * t;
          if (h.eval_mod(cand, mod_next) == 0) {
            ext.push_back(cand);
            if (self(self, j + 1)) return true;
            ext.pop_back();
          }
        }
        return false;
      };
      if (static_cast<int>(ext.size()) >= J) {
        ext.resize(J);
      } else {
        ok = extend(extend, static_cast<int>(ext.size()));
      }
      if (ok) {
        chain = std::move(ext);
      } else {
        auto fresh = first_chain(h, p, J, nullptr);
        if (!fresh) {
          // No chain this deep at all; report from the deepest data we have.
          chain = stored_chain;
          J = static_cast<int>(chain.size());
        } else {
          chain = std::move(*fresh);
        }
      }
      (void)mod_top;
    }
    const mpz_class& z = chain.back();
    const bool exact_root = (h.eval(z) == 0);
    int m = 0;
    bool ambiguous = false;
    long vm = 0;
    for (int j = 1; j <= deg; ++j) {
      mpz_class val = h.hasse_derivative(static_cast<unsigned>(j)).eval(z);
      if (val == 0) {
        if (!exact_root) ambiguous = true;
        continue;
      }
      long v = padic_valuation(val, p);
      if (v >= J) {
        ambiguous = true;
        continue;
      }
      m = j;
      vm = v;
      break;
    }
    if (m == 0) {
      // Even the leading coefficient looked saturated; deepen.
      ambiguous = true;
      m = deg;
    }
    if ((!ambiguous && J >= 2 * (1 + vm)) || J >= cap) return m;
    J = std::min(2 * J, cap);
  }
}

PrimeRootRecord record_for_prime(const IntPoly& h, long p, int depth) {
  int dead = 0;
  auto chain = first_chain(h, p, depth, &dead);
  if (!chain) throw NoRootChain(p, dead);
  PrimeRootRecord rec;
  rec.prime = p;
  rec.residues = *chain;
  rec.multiplicity = chain_multiplicity(h, p, rec.residues, depth);
  return rec;
}

// Chinese remainder combination of (r1 mod m1, r2 mod m2) with coprime moduli.
mpz_class crt_pair(const mpz_class& r1, const mpz_class& m1, const mpz_class& r2,
                   const mpz_class& m2) {
  mpz_class inv;
  if (mpz_invert(inv.get_mpz_t(), m1.get_mpz_t(), m2.get_mpz_t()) == 0)
    throw Error("crt: moduli not coprime");
  mpz_class diff = r2 - r1;
  mpz_class t = (diff * inv) % m2;
  mpz_class combined = r1 + m1 * t;
  mpz_class m = m1 * m2;
  mpz_fdiv_r(combined.get_mpz_t(), combined.get_mpz_t(), m.get_mpz_t());
  return combined;
}

// Integer roots are divisors of the constant term (h(0) != 0). Trial
// division is capped; a huge constant term falls back to the small divisors
// found, which can only miss a certificate, never fabricate one.
std::optional<mpz_class> find_integer_root(const IntPoly& h) {
  if (h.is_zero()) return mpz_class(0);
  if (h.degree() == 0) return std::nullopt;
  if (h.constant_term() == 0) return mpz_class(0);
  mpz_class c = abs(h.constant_term());
  std::vector<mpz_class> divisors{1};
  mpz_class rest = c;
  for (long d = 2; d <= 1000000 && mpz_cmp_ui(rest.get_mpz_t(), 1) != 0; ++d) {
    if (mpz_class(d * static_cast<long>(d)) > rest) break;
    if (!mpz_divisible_ui_p(rest.get_mpz_t(), static_cast<unsigned long>(d))) continue;
    int e = 0;
    while (mpz_divisible_ui_p(rest.get_mpz_t(), static_cast<unsigned long>(d))) {
      mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), static_cast<unsigned long>(d));
      ++e;
    }
    std::size_t base = divisors.size();
    mpz_class pw = 1;
    for (int i = 1; i <= e; ++i) {
      pw *= d;
      for (std::size_t k = 0; k < base; ++k) {
        if (divisors.size() >= 100000) break;
        divisors.push_back(divisors[k] * pw);
      }
    }
  }
  if (rest != 1) {
    std::size_t base = divisors.size();
    for (std::size_t k = 0; k < base && divisors.size() < 100000; ++k)
      divisors.push_back(divisors[k] * rest);
  }
  std::sort(divisors.begin(), divisors.end());
  divisors.erase(std::unique(divisors.begin(), divisors.end()), divisors.end());
  for (const mpz_class& d : divisors) {
    if (h.eval(d) == 0) return d;
    mpz_class neg = -d;
    if (h.eval(neg) == 0) return neg;
  }
  return std::nullopt;
}

}  // namespace

RootSystem::RootSystem(IntPoly poly, std::vector<PrimeRootRecord> records)
    : poly_(std::move(poly)), records_(std::move(records)) {
  std::sort(records_.begin(), records_.end(),
            [](const PrimeRootRecord& a, const PrimeRootRecord& b) { return a.prime < b.prime; });
}

const PrimeRootRecord* RootSystem::find(long prime) const {
  auto it = std::lower_bound(records_.begin(), records_.end(), prime,
                             [](const PrimeRootRecord& r, long p) { return r.prime < p; });
  return (it != records_.end() && it->prime == prime) ? &*it : nullptr;
}

std::vector<mpz_class> roots_mod_prime_power(const IntPoly& h, long prime, int exponent) {
  if (exponent < 1) throw std::invalid_argument("exponent must be >= 1");
  std::vector<mpz_class> roots = roots_mod_prime(h, prime);
  mpz_class mod = prime;
  for (int j = 1; j < exponent; ++j) {
    mpz_class mod_next = mod * prime;
    std::vector<mpz_class> next;
    for (const mpz_class& r : roots) {
      for (long t = 0; t < prime; ++t) {
        mpz_class cand = r + mod * t;
        if (h.eval_mod(cand, mod_next) == 0) next.push_back(cand);
      }
    }
    roots = std::move(next);
    mod = mod_next;
    if (roots.empty()) break;
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

RootSystem choose_root_system(const IntPoly& h, const std::vector<long>& primes, int depth) {
  if (depth < 1) throw std::invalid_argument("depth must be >= 1");
  std::vector<PrimeRootRecord> records;
  records.reserve(primes.size());
  for (long p : primes) records.push_back(record_for_prime(h, p, depth));
  return RootSystem(h, std::move(records));
}

RootSystem root_system_for_moduli(const IntPoly& h, long q_max) {
  std::vector<PrimeRootRecord> records;
  for (long p : primes_up_to(q_max)) {
    int depth = 1;
    mpz_class pw = p;
    while (pw * p <= q_max) {
      pw *= p;
      ++depth;
    }
    records.push_back(record_for_prime(h, p, depth));
  }
  return RootSystem(h, std::move(records));
}

RootSystem root_system_for_modulus(const IntPoly& h, const mpz_class& q) {
  std::vector<PrimeRootRecord> records;
  for (auto [p, e] : factorize(q)) records.push_back(record_for_prime(h, p, e));
  return RootSystem(h, std::move(records));
}

mpz_class lambda_of(const RootSystem& rs, const mpz_class& q) {
  if (q < 1) throw std::invalid_argument("lambda_of requires q >= 1");
  mpz_class result = 1;
  for (auto [p, e] : factorize(q)) {
    const PrimeRootRecord* rec = rs.find(p);
    if (!rec) throw UncoveredPrime(p);
    mpz_class base = pow_long(p, rec->multiplicity);
    mpz_class term;
    mpz_pow_ui(term.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(e));
    result *= term;
  }
  return result;
}

mpz_class chosen_root(const RootSystem& rs, const mpz_class& q) {
  if (q < 1) throw std::invalid_argument("chosen_root requires q >= 1");
  mpz_class combined = 0;
  mpz_class modulus = 1;
  for (auto [p, e] : factorize(q)) {
    const PrimeRootRecord* rec = rs.find(p);
    if (!rec) throw UncoveredPrime(p);
    if (rec->depth() < e)
      throw InsufficientPrecision("root chain for prime " + std::to_string(p), e, rec->depth());
    mpz_class pe = pow_long(p, e);
    mpz_class residue;
    mpz_fdiv_r(residue.get_mpz_t(), rec->residues[e - 1].get_mpz_t(), pe.get_mpz_t());
    combined = (modulus == 1) ? residue : crt_pair(combined, modulus, residue, pe);
    modulus *= pe;
  }
  // Shift the representative from [0, q) into (-q, 0].
  if (combined > 0) combined -= q;
  return combined;
}

AuxiliaryData auxiliary(const RootSystem& rs, const mpz_class& q) {
  AuxiliaryData out;
  out.q = q;
  out.r_q = chosen_root(rs, q);
  out.lambda_q = lambda_of(rs, q);
  out.h_q = rs.poly().compose_affine(out.r_q, q).divide_exact(out.lambda_q);
  return out;
}

IntersectivityVerdict certify_intersective(const IntPoly& h, long prime_bound, int depth) {
  if (prime_bound < 1 || depth < 1)
    throw std::invalid_argument("prime_bound and depth must be >= 1");
  IntersectivityVerdict verdict;
  if (auto root = find_integer_root(h)) {
    verdict.kind = IntersectivityVerdict::Kind::CertifiedByIntegerRoot;
    verdict.integer_root = *root;
    return verdict;
  }
  // Scan prime powers in increasing order so the smallest refuting modulus
  // is reported.
  std::vector<long> primes = primes_up_to(prime_bound);
  struct Entry {
    mpz_class q;
    long p;
    int j;
  };
  std::vector<Entry> entries;
  for (long p : primes) {
    mpz_class pw = 1;
    for (int j = 1; j <= depth; ++j) {
      pw *= p;
      entries.push_back({pw, p, j});
    }
  }
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) { return a.q < b.q; });
  std::map<long, std::vector<mpz_class>> roots_by_prime;  // deepest level computed so far
  std::map<long, int> level_by_prime;
  for (const Entry& e : entries) {
    auto& roots = roots_by_prime[e.p];
    int& level = level_by_prime[e.p];
    if (level == 0) {
      roots = roots_mod_prime(h, e.p);
      level = 1;
    }
    while (level < e.j && !roots.empty()) {
      mpz_class mod = pow_long(e.p, level);
      mpz_class mod_next = mod * e.p;
      std::vector<mpz_class> next;
      for (const mpz_class& r : roots)
        for (long t = 0; t < e.p; ++t) {
          mpz_class cand = r + mod * t;
          if (h.eval_mod(cand, mod_next) == 0) next.push_back(cand);
        }
      roots = std::move(next);
      ++level;
    }
    if (roots.empty()) {
      mpz_class q = pow_long(e.p, level);
      verdict.kind = IntersectivityVerdict::Kind::Refuted;
      verdict.refuted_modulus = q;
      verdict.witness.modulus = q;
      // Direct exhaustive confirmation when the modulus is small enough.
      if (q <= 1000000) {
        if (!roots_mod_prime(h, q.get_si()).empty())
          throw Error("refutation witness failed: root found");
        verdict.witness.residues_checked = q.get_ui();
        verdict.witness.exhaustive = true;
      } else {
        verdict.witness.residues_checked = 0;
        verdict.witness.exhaustive = false;
      }
      return verdict;
    }
  }
  verdict.kind = IntersectivityVerdict::Kind::NoObstructionFound;
  verdict.prime_bound = prime_bound;
  verdict.depth = depth;
  return verdict;
}

std::vector<long> primes_up_to(long n) {
  std::vector<long> primes;
  if (n < 2) return primes;
  std::vector<bool> sieve(static_cast<std::size_t>(n) + 1, true);
  for (long i = 2; i <= n; ++i) {
    if (!sieve[static_cast<std::size_t>(i)]) continue;
    primes.push_back(i);
    for (long j = i * i; j >= 0 && j <= n; j += i) sieve[static_cast<std::size_t>(j)] = false;
  }
  return primes;
}

std::vector<std::pair<long, int>> factorize(const mpz_class& q) {
  if (q < 1) throw std::invalid_argument("factorize requires q >= 1");
  std::vector<std::pair<long, int>> factors;
  mpz_class rest = q;
  for (long d = 2; mpz_class(d) * d <= rest; ++d) {
    if (!mpz_divisible_ui_p(rest.get_mpz_t(), static_cast<unsigned long>(d))) continue;
    int e = 0;
    while (mpz_divisible_ui_p(rest.get_mpz_t(), static_cast<unsigned long>(d))) {
      mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), static_cast<unsigned long>(d));
      ++e;
    }
    factors.emplace_back(d, e);
  }
  if (rest != 1) {
    if (!rest.fits_slong_p()) throw Error("factorize: prime factor exceeds long range");
    factors.emplace_back(rest.get_si(), 1);
  }
  return factors;
}

}  // namespace polyrecur
