#include "doctest.h"

#include <algorithm>

#include "partrace/errors.hpp"
#include "partrace/polyops.hpp"
#include "support.hpp"

using namespace partrace;
using partrace::testing::uniform_int;

namespace {

IntPoly P(std::initializer_list<long> descending) {
  std::vector<mpz_class> c;
  for (long x : descending) c.emplace_back(x);
  return IntPoly::from_descending(c);
}

bool is_square(long n) {
  if (n < 0) return false;
  long r = static_cast<long>(std::llround(std::sqrt(static_cast<double>(n))));
  for (long k = std::max(0L, r - 2); k <= r + 2; ++k)
    if (k * k == n) return true;
  return false;
}

// Irreducibility of a primitive quadratic or cubic checked without polyops: no rational root
// (cubic) or non-square discriminant (quadratic).
bool small_irreducible(const std::vector<long>& d) {
  if (d.size() == 3) return !is_square(d[1] * d[1] - 4 * d[0] * d[2]);
  long a = d[0], c = d[3];
  if (c == 0) return false;
  for (long p = 1; p <= std::labs(c); ++p) {
    if (c % p) continue;
    for (long q = 1; q <= std::labs(a); ++q) {
      if (a % q) continue;
      for (long s : {1, -1}) {
        // a (sp/q)^3 + ... = 0  <=>  a p^3 s + b p^2 q + c' ... scaled by q^3
        long x = s * p;
        long v = a * x * x * x + d[1] * x * x * q + d[2] * x * q * q + c * q * q * q;
        if (v == 0) return false;
      }
    }
  }
  return true;
}

IntPoly random_irreducible(int degree) {
  for (;;) {
    std::vector<long> d(static_cast<std::size_t>(degree) + 1);
    d[0] = uniform_int(1, 4);
    for (std::size_t k = 1; k < d.size(); ++k) d[k] = uniform_int(-9, 9);
    if (d.back() == 0) continue;
    std::vector<mpz_class> z(d.begin(), d.end());
    IntPoly f = IntPoly::from_descending(z);
    if (f.content() != 1) continue;
    if (small_irreducible(d)) return f;
  }
}

}  // namespace

TEST_CASE("IntPoly arithmetic") {
  IntPoly f = P({1, 0, 1});
  IntPoly g = P({1, -1});
  CHECK((f * g) == P({1, -1, 1, -1}));
  CHECK((f + g) == P({1, 1, 0}));
  CHECK((f - f).is_zero());
  CHECK(f.degree() == 2);
  CHECK(IntPoly().degree() == -1);
  CHECK(f(mpz_class(3)) == 10);
  CHECK(P({6, 4, 2}).content() == 2);
  CHECK(P({-6, 4, 2}).primitive_part() == P({3, -2, -1}));
  CHECK(P({1, 2, 3}).derivative() == P({2, 2}));
  CHECK(P({1, 2, 3}).scale_variable(2) == P({4, 4, 3}));
  CHECK(pow(g, 3) == P({1, -3, 3, -1}));
  IntPoly q;
  CHECK(divides(g, P({1, -1, 1, -1}), &q));
  CHECK(q == f);
  CHECK_FALSE(divides(P({1, 1}), f));
  CHECK(gcd(P({1, 0, -1}), P({1, -2, 1})) == P({1, -1}));
  CHECK(P({1, 0, -2, 5}).to_string() == "x^3 - 2x + 5");
}

TEST_CASE("RatPoly arithmetic") {
  RatPoly f(P({2, 0, -2}));
  RatPoly g(P({2, -2}));
  RatPoly quo, rem;
  divmod(f, g, quo, rem);
  CHECK(rem.is_zero());
  CHECK(quo == RatPoly(P({1, 1})));
  CHECK(gcd(f, g) == RatPoly(P({1, -1})));
  CHECK(f.monic().leading() == 1);
  RatPoly h(std::vector<mpq_class>{mpq_class(1, 2), mpq_class(1, 3)});
  CHECK(h.clear_denominators() == P({2, 3}));
}

TEST_CASE("recognize_integer_polynomial") {
  const mpfr_prec_t prec = 128;
  std::vector<BigComplex> approx{BigComplex::from_doubles(1.0000000000, 0, prec),
                                 BigComplex::from_doubles(-22.99999999997, 0, prec)};
  std::vector<mpz_class> scales{1, 1};
  // 3e-11 is farther than 2^-32 from an integer, so move it closer for the exact example
  approx[1] = BigComplex::from_doubles(-22.99999999999997, 0, prec);
  CHECK(recognize_integer_polynomial(approx, scales) == P({1, -23}));

  std::vector<BigComplex> bad{BigComplex::from_doubles(1, 0, prec), BigComplex::from_doubles(2.4, 0, prec)};
  CHECK_THROWS_AS(recognize_integer_polynomial(bad, scales), RecognitionFailure);
  try {
    recognize_integer_polynomial(bad, scales);
  } catch (const RecognitionFailure& e) {
    CHECK(e.index() == 1);
  }
  CHECK(recognition_distance(bad, scales) == doctest::Approx(0.4));

  std::vector<BigComplex> scaled{BigComplex::from_doubles(1, 0, prec), BigComplex::from_doubles(0.5, 0, prec)};
  CHECK(recognize_integer_polynomial(scaled, {1, 4}) == P({1, 2}));
}

TEST_CASE("irreducibility examples") {
  IrreducibilityOptions from2;
  from2.prime_start = 2;
  IrreducibilityCertificate c = irreducible_over_Q(P({1, 0, 1}), from2);
  CHECK(c.verdict == Verdict::Irreducible);
  CHECK(c.method == "prime");
  CHECK(c.witness == 3);
  CHECK(verify_certificate(P({1, 0, 1}), c));

  IrreducibilityCertificate r = irreducible_over_Q(P({1, 0, -1}));
  CHECK(r.verdict == Verdict::Reducible);
  CHECK(r.factor.degree() == 1);
  CHECK(divides(r.factor, P({1, 0, -1})));
  CHECK((r.factor == P({1, -1}) || r.factor == P({1, 1})));
  CHECK(verify_certificate(P({1, 0, -1}), r));

  CHECK(irreducible_over_Q(P({3, 5})).verdict == Verdict::Irreducible);
  CHECK(irreducible_over_Q(P({1, 0, 0})).verdict == Verdict::Reducible);
  // x^4 + 1 is reducible modulo every prime
  IrreducibilityCertificate x4 = irreducible_over_Q(P({1, 0, 0, 0, 1}));
  CHECK(x4.verdict == Verdict::Irreducible);
  CHECK(verify_certificate(P({1, 0, 0, 0, 1}), x4));
  CHECK(to_string(Verdict::Irreducible) == "irreducible");
}

TEST_CASE("factor patterns") {
  FactorPattern p = factor_pattern_mod(P({1, 0, 1}), 5);
  std::sort(p.degrees.begin(), p.degrees.end());
  CHECK(p.degrees == std::vector<int>{1, 1});
  CHECK(factor_pattern_mod(P({1, 0, 1}), 7).degrees == std::vector<int>{2});
  CHECK(factor_pattern_mod(P({1, 0, 1}), 2).degrees.empty());
}

TEST_CASE("random products are reducible") {
  for (int trial = 0; trial < 200; ++trial) {
    IntPoly f = random_irreducible(2 + trial % 2);
    IntPoly g = random_irreducible(2 + (trial / 2) % 2);
    IntPoly h = f * g;
    IrreducibilityCertificate c = irreducible_over_Q(h);
    CHECK(c.verdict == Verdict::Reducible);
    IntPoly q;
    CHECK(divides(c.factor, h, &q));
    CHECK(c.factor.degree() >= 1);
    CHECK(c.factor.degree() < h.degree());
    CHECK(c.factor * q == h);
    CHECK(verify_certificate(h, c));
  }
  for (int trial = 0; trial < 60; ++trial) {
    IntPoly f = random_irreducible(2 + trial % 2);
    IrreducibilityCertificate c = irreducible_over_Q(f);
    CHECK(c.verdict == Verdict::Irreducible);
    CHECK(verify_certificate(f, c));
  }
}

TEST_CASE("perfect powers and square-free parts") {
  PerfectPower sq = perfect_power_structure(pow(P({1, 0, 1}), 2));
  CHECK(sq.base == P({1, 0, 1}));
  CHECK(sq.exponent == 2);
  PerfectPower one = perfect_power_structure(P({1, 0, 1}));
  CHECK(one.base == P({1, 0, 1}));
  CHECK(one.exponent == 1);

  for (int trial = 0; trial < 40; ++trial) {
    IntPoly f = random_irreducible(2 + trial % 2);
    if (trial % 3 == 0) f = f * random_irreducible(2);
    unsigned e = 1 + static_cast<unsigned>(trial % 4);
    IntPoly fe = pow(f, e);
    PerfectPower pp = perfect_power_structure(fe);
    CHECK(pp.exponent % e == 0);
    IntPoly rebuilt = pow(pp.base, pp.exponent);
    CHECK(RatPoly(fe) == pp.scale * RatPoly(rebuilt));
  }

  // f = x^3 (x + 1)^2 (x - 2)
  IntPoly f = P({1, 0, 0, 0}) * pow(P({1, 1}), 2) * P({1, -2});
  auto parts = squarefree_decomposition(f);
  REQUIRE(parts.size() == 3);
  CHECK(parts[0] == P({1, -2}));
  CHECK(parts[1] == P({1, 1}));
  CHECK(parts[2] == P({1, 0}));
}
