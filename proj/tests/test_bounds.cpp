#include "doctest.h"

#include <cmath>

#include "partrace/bounds.hpp"
#include "partrace/errors.hpp"
#include "partrace/specfun.hpp"
#include "support.hpp"

using namespace partrace;

namespace {

const EvalContext ctx = EvalContext::at(128);

double bound(std::int64_t l) { return poincare_coeff_bound(l, ctx).to_double(); }

}  // namespace

TEST_CASE("coefficient bound closed forms") {
  const double z3 = 1.2020569031595942854;
  CHECK(bound(0) == doctest::Approx(2.0 / 27 * std::pow(M_PI, 4) * z3).epsilon(1e-14));
  CHECK(bound(0) == doctest::Approx(8.67342743021659).epsilon(1e-13));
  double one = 12 * M_PI * (std::exp(2 * M_PI / 3) / std::sqrt(3.0) + std::pow(M_PI, 3) / 81 * z3);
  CHECK(bound(1) == doctest::Approx(one).epsilon(1e-14));
  CHECK(bound(1) == doctest::Approx(194.094944012347).epsilon(1e-13));
  CHECK_THROWS_AS(poincare_coeff_bound(-1, ctx), InvalidArgument);
}

TEST_CASE("bound times exp(-pi sqrt3 l / 6) decreases to zero from l = 25") {
  double prev = bound(25) * std::exp(-M_PI * std::sqrt(3.0) * 25 / 6);
  for (std::int64_t l = 26; l <= 400; ++l) {
    double t = bound(l) * std::exp(-M_PI * std::sqrt(3.0) * static_cast<double>(l) / 6);
    CHECK(t < prev);
    prev = t;
  }
  CHECK(prev < 1e-60);
}

TEST_CASE("Poincare coefficients are dominated by the bound") {
  const Real vs[] = {sqrt(Real(3, ctx.prec)) / 2, Real(1, ctx.prec), Real(2, ctx.prec)};
  for (std::int64_t l = 0; l <= 30; ++l) {
    for (const Real& v : vs) {
      CAPTURE(l);
      BigComplex b = exact_poincare_coeff(l, v, 240, ctx);
      CHECK(b.abs_upper() <= bound(l));
      if (l > 0) CHECK(std::fabs(b.im().to_double()) <= b.err() + 1e-30);
    }
  }
}

TEST_CASE("exact Poincare coefficients") {
  const Real v(1, ctx.prec);
  // negative index: v-dependent, still finite
  BigComplex neg = exact_poincare_coeff(-3, v, 120, ctx);
  CHECK(neg.finite());
  // the tail estimate covers the change from doubling cmax
  for (std::int64_t l : {0, 1, 4, 17, -2}) {
    BigComplex a = exact_poincare_coeff(l, v, 120, ctx);
    BigComplex b = exact_poincare_coeff(l, v, 240, ctx);
    CHECK(partrace::testing::distance(a, b) <= a.err() + b.err());
    CHECK(b.err() <= a.err());
  }
  // l = 0 closed form: -16 pi^4 sum_{6 | c} K(-1, 0, c) / c^4
  BigComplex zero = exact_poincare_coeff(0, v, 6000, ctx);
  double direct = 0;
  for (long c = 6; c <= 6000; c += 6)
    direct += kloosterman(-1, 0, c, ctx).re().to_double() / std::pow(static_cast<double>(c), 4);
  CHECK(zero.re().to_double() == doctest::Approx(-16 * std::pow(M_PI, 4) * direct).epsilon(1e-10));
  CHECK_THROWS_AS(exact_poincare_coeff(1, v, 5, ctx), InvalidArgument);
  CHECK_THROWS_AS(exact_poincare_coeff(1, Real(0, ctx.prec), 60, ctx), InvalidArgument);
}

TEST_CASE("kappa certificate") {
  BoundCertificate c = kappa_certificate(ctx);
  CHECK(c.kappa.to_double() <= kKappa);
  CHECK(c.within_published);
  CHECK(c.method == KappaMethod::SeriesSummed);
  CHECK(c.kappa.to_double() == doctest::Approx(1138.177767).epsilon(1e-8));
  CHECK(c.kappa > 0);
  CHECK(c.components.b0_bound > 0);
  CHECK(c.components.first_series > 0);
  CHECK(c.components.second_series > 0);
  CHECK(c.components.constant_part > 0);
  CHECK(c.last_term < 1e-30);
  double sum = (c.components.first_series + c.components.second_series + c.components.constant_part).to_double();
  CHECK(sum == doctest::Approx(c.kappa.to_double()).epsilon(1e-12));

  BoundCertificate h1 = kappa_certificate(ctx, 1);
  CHECK(h1.kappa < c.kappa.to_double());
  CHECK(h1.components.first_series < c.components.first_series.to_double());
  CHECK(h1.components.second_series < c.components.second_series.to_double());
  CHECK(h1.components.constant_part < c.components.constant_part.to_double());

  BoundCertificate geo = kappa_certificate(ctx, 6, KappaMethod::GeometricMajorized);
  CHECK(geo.kappa > c.kappa.to_double());
  CHECK(geo.kappa.to_double() == doctest::Approx(1854.89).epsilon(1e-5));
  CHECK_FALSE(geo.within_published);
  CHECK(to_string(KappaMethod::SeriesSummed) == "series-summed");
  CHECK(to_string(KappaMethod::GeometricMajorized) == "geometric-majorized");
}

TEST_CASE("main term") {
  Real m54 = main_term(54, 12, 1, ctx);
  CHECK(m54.to_double() == doctest::Approx(1.1e4).epsilon(0.01));
  double half_width = std::atan(kKappa / m54.to_double());
  CHECK(half_width == doctest::Approx(0.120).epsilon(0.005));
  CHECK(half_width < M_PI / 24);
  CHECK(main_term(54, 2, 6, ctx) == m54);

  double s23 = std::sqrt(23.0);
  CHECK(main_term(1, 6, 1, ctx).to_double() ==
        doctest::Approx(std::exp(M_PI * s23 / 6) * (1 - 6 / (M_PI * s23))).epsilon(1e-14));

  for (std::int64_t n = 1; n <= 500; n += 7) {
    double prev = main_term(n, 6, 1, ctx).to_double();
    for (std::int64_t s = 12; s <= 36; s += 6) {
      double m = main_term(n, s, 1, ctx).to_double();
      CHECK(m < prev);
      prev = m;
    }
  }
  CHECK_THROWS_AS(main_term(0, 12, 1, ctx), InvalidArgument);
  CHECK_THROWS_AS(main_term(5, 5, 1, ctx), InvalidArgument);
}

TEST_CASE("separation at n = 54 and n = 100") {
  SeparationReport r = separation_report(54, ctx);
  CHECK(r.passed());
  CHECK(r.magnitude_pass);
  CHECK(r.argument_pass);
  CHECK(r.table_pass);
  CHECK(r.numeric_pass);
  CHECK(r.max_half_width < M_PI / 24);
  CHECK(r.argument_margin == doctest::Approx(M_PI / 24 - r.max_half_width));
  CHECK(r.argument_margin > 0.01);
  CHECK(r.min_gap > 2 * kKappa);
  CHECK(r.rows.size() == static_cast<std::size_t>(class_number(r.D)));
  CHECK(separation_report(100, ctx).passed());

  SeparationReport low = separation_report(10, ctx);
  CHECK(low.n == 10);
  CHECK_FALSE(low.rows.empty());
  CHECK_THROWS_AS(separation_report(0, ctx), InvalidArgument);
}

TEST_CASE("separation for 54 <= n <= 500") {
  SeparationOptions numeric;
  SeparationOptions fast;
  fast.numeric_check = false;
  for (std::int64_t n = 54; n <= 500; ++n) {
    CAPTURE(n);
    SeparationReport r = separation_report(n, ctx, n <= 200 ? numeric : fast);
    CHECK(r.passed());
    CHECK(r.min_gap > 2 * kKappa);
    CHECK(r.max_half_width <= M_PI / 24);
    // every untabulated a h = 12 row is [12, -11, (n + 5) / 2] for odd n
    for (const QuadForm& q : r.untabulated) {
      CHECK(n % 2 == 1);
      CHECK(q == QuadForm{12, -11, (n + 5) / 2});
    }
  }
}

TEST_CASE("published tables agree with the computed cusp data") {
  const auto& rows = published_cusp_tables();
  CHECK(rows.size() == 7);
  for (int parity : {0, 1}) {
    int checked = 0;
    for (std::int64_t n = 60 + parity; checked < 20; n += 2, ++checked) {
      for (const auto& t : rows) {
        if (t.parity != parity) continue;
        QuadForm q = t.form_for(n);
        CHECK(q.discriminant() == 1 - 24 * n);
        CHECK(q.is_reduced());
        CuspData cd = cusp_invariants(q, n);
        CHECK(cd.rep == t.rep);
        CHECK(cd.width == t.width);
        CHECK(cd.zeta_exponent == t.zeta_exponent);
        CHECK(cd.phi_twelfths == t.phi_twelfths);
        CHECK(q.a * cd.width == 12);
      }
      CHECK(separation_report(n, ctx, {false, kKappa}).table_pass);
    }
  }
}

TEST_CASE("empirical error term stays below kappa") {
  CHECK(error_grid(ctx.prec).size() == 10);
  auto samples = empirical_error_grid(ctx);
  CHECK(samples.size() == 120);
  double worst = 0;
  for (const auto& s : samples) {
    CHECK(s.error + s.error_bound <= kKappa);
    CHECK(s.error_bound < 1e-20);
    worst = std::max(worst, s.error);
  }
  BoundCertificate c = kappa_certificate(ctx);
  CHECK(worst <= c.kappa.to_double());
}
