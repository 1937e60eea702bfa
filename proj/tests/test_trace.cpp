#include "doctest.h"

#include <cmath>

#include "partrace/errors.hpp"
#include "partrace/oracles.hpp"
#include "partrace/trace.hpp"
#include "support.hpp"

using namespace partrace;

namespace {

std::int64_t conductor_class_sum(std::int64_t n) {
  const std::int64_t D = 1 - 24 * n;
  std::int64_t total = 0;
  for (std::int64_t f = 1; f * f <= -D; ++f)
    if (D % (f * f) == 0 && ((D / (f * f)) % 4 == 0 || (((D / (f * f)) % 4) + 4) % 4 == 1)) total += class_number(D / (f * f));
  return total;
}

bool squarefree(std::int64_t m) {
  for (std::int64_t p = 2; p * p <= m; ++p)
    if (m % (p * p) == 0) return false;
  return true;
}

// g(x) -> g(-x) for a rational polynomial
RatPoly negate_variable(const RatPoly& g) { return g.scale_variable(mpq_class(-1)); }

}  // namespace

TEST_CASE("epsilon") {
  CHECK(epsilon(1) == 1);
  CHECK(epsilon(11) == 1);
  CHECK(epsilon(13) == 1);
  CHECK(epsilon(5) == -1);
  CHECK(epsilon(7) == -1);
  CHECK(epsilon(25) == 1);
}

TEST_CASE("heegner forms") {
  for (std::int64_t n = 1; n <= 60; ++n) {
    auto forms = heegner_forms(n);
    CHECK(static_cast<std::int64_t>(forms.size()) == conductor_class_sum(n));
    for (const auto& h : forms) {
      CHECK(h.form.discriminant() == 1 - 24 * n);
      CHECK(h.form.a % 6 == 0);
      CHECK(((h.form.b - 1) % 12 + 12) % 12 == 0);
      CHECK(h.form == h.primitive.scaled(h.conductor));
      CHECK(h.primitive.is_primitive());
    }
  }
}

TEST_CASE("trace equals (24n - 1) p(n)") {
  PartitionTable t = euler_p(20);
  EvalContext ctx = EvalContext::at(128);
  for (std::int64_t n = 1; n <= 20; ++n) {
    TraceResult r = trace_P(n, ctx);
    CHECK(r.p == t[static_cast<std::size_t>(n)]);
    CHECK(r.residual < 1e-6);
    CHECK(std::fabs(r.value.im().to_double()) <= r.value.err() + 1e-30);
    CHECK(r.per_form.size() == heegner_forms(n).size());
    CHECK(partition_bo(n) == t[static_cast<std::size_t>(n)]);
    CHECK(partition_bo(n) == rademacher_p(n, rademacher_terms(n), ctx).value);
  }
  TraceResult one = trace_P(1, ctx);
  CHECK(std::fabs(one.value.re().to_double() - 23) < 1e-20);
  CHECK(partition_bo(1) == 1);
  CHECK(partition_bo(5) == 7);
  CHECK(partition_bo(10) == 42);
  CHECK(partition_bo(13) == 101);
  CHECK(partition_bo(20) == 627);
  CHECK(trace_P_converged(10).p == 42);
  CHECK_THROWS_AS(trace_P(0, ctx), InvalidArgument);
}

TEST_CASE("build_Hhat") {
  EvalContext ctx = EvalContext::at(128);
  ScaledHhat h1 = build_Hhat(1, ctx);
  CHECK(h1.poly.degree() == 3);
  CHECK(h1.poly == IntPoly::from_descending({1, -529, 82616, -5097973}));
  CHECK(h1.unscaled()[2] == -23);
  CHECK(h1.unscaled().leading() == 1);

  for (std::int64_t n = 1; n <= 20; ++n) {
    ScaledHhat h = build_Hhat(n, ctx);
    CHECK(h.poly.degree() == class_number(1 - 24 * n));
    CHECK(h.h == class_number(1 - 24 * n));
    CHECK(h.distance < std::ldexp(1.0, -32));
    CHECK(h.confirm_distance < std::ldexp(1.0, -32));
    CHECK(h.poly.leading() == 1);
  }
}

TEST_CASE("assemble_H") {
  EvalContext ctx = EvalContext::at(128);
  for (std::int64_t n = 1; n <= 30; ++n) {
    AssembledH a = assemble_H(n, ctx);
    CHECK(a.exact_match);
    CHECK(a.numeric_ratio <= 1);
    CHECK(a.H.degree() == conductor_class_sum(n));
    CHECK(a.H == a.direct);
    if (squarefree(24 * n - 1)) {
      CHECK(a.factors.size() == 1);
      CHECK(a.H == a.factors.front().hhat.unscaled());
    }
  }

  AssembledH a24 = assemble_H(24, ctx);
  CHECK(a24.D == -575);
  CHECK(a24.H.degree() == 18 + 3);
  ScaledHhat big = build_Hhat(24, ctx);
  ScaledHhat small = build_Hhat(1, ctx);
  RatPoly expected = mpq_class(-1) * (big.unscaled() * negate_variable(small.unscaled()));
  CHECK(a24.H == expected);
  CHECK(a24.direct == expected);
}

TEST_CASE("expand_roots") {
  const mpfr_prec_t prec = 128;
  auto c = expand_roots({BigComplex(1, prec), BigComplex(2, prec), BigComplex(-3, prec)});
  REQUIRE(c.size() == 4);
  CHECK(partrace::testing::agree(c[0], BigComplex(1, prec)));
  CHECK(partrace::testing::agree(c[1], BigComplex(0, prec), 1e-30));
  CHECK(partrace::testing::agree(c[2], BigComplex(-7, prec), 1e-30));
  CHECK(partrace::testing::agree(c[3], BigComplex(6, prec), 1e-30));
}
