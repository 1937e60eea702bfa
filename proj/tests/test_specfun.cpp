#include "doctest.h"

#include <cmath>
#include <numeric>

#include "partrace/errors.hpp"
#include "partrace/specfun.hpp"
#include "support.hpp"

using namespace partrace;
using partrace::testing::agree;
using partrace::testing::uniform;
using partrace::testing::uniform_int;

namespace {

const EvalContext ctx = EvalContext::at(128);

BigComplex real_from(const char* digits) { return BigComplex::from_real(Real::from_string(digits, ctx.prec)); }

int moebius(long n) {
  int mu = 1;
  for (long p = 2; p * p <= n; ++p)
    if (n % p == 0) {
      n /= p;
      if (n % p == 0) return 0;
      mu = -mu;
    }
  return n > 1 ? -mu : mu;
}

// Ramanujan sum c_q(n) via the Moebius formula.
long ramanujan_sum(long q, long n) {
  long g = std::gcd(q, std::labs(n));
  if (n == 0) g = q;
  long s = 0;
  for (long d = 1; d <= g; ++d)
    if (g % d == 0) s += moebius(q / d) * d;
  return s;
}

mpq_class frac(long p, long q) {
  mpq_class r(p, q);
  r.canonicalize();
  return r;
}

long euler_phi(long n) {
  long r = 0;
  for (long k = 1; k <= n; ++k) r += std::gcd(k, n) == 1;
  return r;
}

}  // namespace

TEST_CASE("dedekind sums") {
  for (std::int64_t k = 1; k <= 40; ++k) CHECK(dedekind_sum(1, k) == frac((k - 1) * (k - 2), 12 * k));
  for (std::int64_t h = 1; h <= 30; ++h)
    for (std::int64_t k = 1; k <= 30; ++k) {
      if (std::gcd(h, k) != 1) continue;
      mpq_class rhs = (frac(h, k) + frac(k, h) + frac(1, h * k)) / 12 - frac(1, 4);
      CHECK(dedekind_sum(h, k) + dedekind_sum(k, h) == rhs);
    }
  CHECK_THROWS_AS(dedekind_sum(2, 4), InvalidArgument);
}

TEST_CASE("inverse_mod") {
  for (std::int64_t c = 1; c <= 60; ++c)
    for (std::int64_t d = -30; d <= 30; ++d) {
      if (std::gcd(d, c) != 1) continue;
      std::int64_t e = inverse_mod(d, c);
      CHECK(e >= 0);
      CHECK(e < c);
      CHECK((((d * e - 1) % c) + c) % c == 0);
    }
}

TEST_CASE("kloosterman examples") {
  for (long m : {-3, 0, 7})
    for (long l : {-5, 0, 2}) CHECK(agree(kloosterman(m, l, 1, ctx), BigComplex(1, ctx.prec), 1e-30));
  CHECK(agree(kloosterman(0, 0, 4, ctx), BigComplex(2, ctx.prec), 1e-30));
  CHECK(agree(kloosterman(-1, 0, 6, ctx), BigComplex(1, ctx.prec), 1e-30));
  for (long c = 1; c <= 60; ++c) {
    CHECK(agree(kloosterman(0, 0, c, ctx), BigComplex(euler_phi(c), ctx.prec), 1e-25));
    for (long m : {-7, -1, 1, 4, 12})
      CHECK(agree(kloosterman(m, 0, c, ctx), BigComplex(ramanujan_sum(c, m), ctx.prec), 1e-25));
  }
  KloostermanSum ks = kloosterman_sum(-1, 3, 12, ctx);
  CHECK(ks.c == 12);
  CHECK(agree(ks.value, kloosterman(-1, 3, 12, ctx)));
  CHECK_THROWS_AS(kloosterman(1, 1, 0, ctx), InvalidArgument);
}

TEST_CASE("kloosterman trivial bound and realness") {
  for (int trial = 0; trial < 500; ++trial) {
    long m = uniform_int(-25, 25), l = uniform_int(-60, 60), c = uniform_int(1, 150);
    BigComplex k = kloosterman(m, l, c, ctx);
    CHECK(k.mid_abs() <= c + k.err());
    CHECK(std::fabs(k.im().to_double()) <= k.err() + 1e-30);
  }
}

TEST_CASE("bessel_I values") {
  CHECK(agree(bessel_I(BesselOrder::half(1), Real(1, ctx.prec), ctx),
              real_from("0.937674888245487646717262884391393367831789152831687115147303"), 1e-30));
  CHECK(agree(bessel_I(BesselOrder::integer(3), Real(1, ctx.prec), ctx),
              real_from("0.0221684249243319024762857476298996155294153491699792580901091"), 1e-30));
  CHECK(agree(bessel_I(BesselOrder::half(3), Real::from_double(2.5, ctx.prec), ctx),
              real_from("1.87327838883761888852719131628748158039125729949242779400455"), 1e-30));
  CHECK(agree(bessel_I(BesselOrder::integer(3), Real::from_double(7.25, ctx.prec), ctx),
              real_from("110.057249731587902015389190996230394180232796537787776544054"), 1e-28));
  // I_{1/2}(x) = sqrt(2 / (pi x)) sinh x
  for (double x : {0.1, 1.0, 3.7, 12.0}) {
    Real X = Real::from_double(x, ctx.prec);
    BigComplex closed = BigComplex::from_real(sqrt(Real(2, ctx.prec) / (Real::pi(ctx.prec) * X)) * sinh(X));
    CHECK(agree(bessel_I(BesselOrder::half(1), X, ctx), closed, 1e-28 * closed.mid_abs()));
    for (int twice : {1, 3})
      CHECK(agree(bessel_I(BesselOrder::half(twice), X, ctx), bessel_I_closed(BesselOrder::half(twice), X, ctx),
                  1e-28 * closed.mid_abs()));
  }
}

TEST_CASE("bessel_I bounds") {
  const int orders[] = {1, 3, 6};
  // I_3(1) < (1/3!) (1/2)^3 cosh 1
  CHECK(bessel_I(BesselOrder::integer(3), Real(1, ctx.prec), ctx).abs_upper() < std::cosh(1.0) / 48);
  // I_3(0.5) <= (2 / 3!) 0.25^3
  CHECK(bessel_I(BesselOrder::integer(3), Real::from_double(0.5, ctx.prec), ctx).abs_upper() <= 2.0 / 6 * std::pow(0.25, 3));

  for (int trial = 0; trial < 100; ++trial) {
    BesselOrder nu{orders[trial % 3]};
    double x = uniform(1e-3, 10.0);
    Real X = Real::from_double(x, ctx.prec);
    double bound = std::pow(x / 2, nu.value()) * std::cosh(x) / gamma_order_plus_one(nu, ctx.prec).to_double();
    CHECK(bessel_I(nu, X, ctx).abs_upper() < bound);
  }
  for (int k = 0; k < 50; ++k) {
    BesselOrder nu{orders[k % 3]};
    double x = 1 + k * 0.8;
    Real X = Real::from_double(x, ctx.prec);
    // the gap is relatively e^{-2x} for nu = 1/2, below double resolution
    BigComplex bound = BigComplex::from_real(exp(X) / sqrt(Real::pi(ctx.prec) * 2 * X));
    BigComplex gap = bound - bessel_I(nu, X, ctx);
    CHECK(gap.re().to_long_double() >= gap.err());
  }
}

TEST_CASE("bessel_J") {
  CHECK(agree(bessel_J(BesselOrder::integer(3), Real(1, ctx.prec), ctx),
              real_from("0.019563353982668405918905321621751508254508954928055790511117"), 1e-30));
  CHECK(agree(bessel_J(BesselOrder::half(3), Real::from_double(0.7, ctx.prec), ctx),
              real_from("0.14826350832010160956389371353116400885363365055913214897272"), 1e-30));

  // alternating partial sums bracket the value for x <= 1
  for (double x : {0.2, 0.6, 1.0}) {
    Real X = Real::from_double(x, ctx.prec);
    for (int twice : {1, 3, 6}) {
      double full = bessel_J(BesselOrder{twice}, X, ctx).re().to_double();
      for (int k = 1; k <= 6; ++k) {
        double a = bessel_J(BesselOrder{twice}, X, ctx, k).re().to_double();
        double b = bessel_J(BesselOrder{twice}, X, ctx, k + 1).re().to_double();
        CHECK(std::min(a, b) <= full);
        CHECK(full <= std::max(a, b));
      }
    }
  }

  // J_3(x) / x^3 -> 1 / (8 * 3!)
  Real small = Real::from_double(1e-3, ctx.prec);
  double ratio = bessel_J(BesselOrder::integer(3), small, ctx).re().to_double() / 1e-9;
  CHECK(std::fabs(ratio - 1.0 / 48) < 1e-8);

  BigComplex j30 = bessel_J(BesselOrder::integer(3), Real(1, ctx.prec), ctx, 30);
  BigComplex j60 = bessel_J(BesselOrder::integer(3), Real(1, ctx.prec), ctx, 60);
  CHECK(partrace::testing::distance(j30, j60) < std::ldexp(1.0L, -static_cast<int>(ctx.prec / 2)));
}

TEST_CASE("inc_gamma_upper") {
  Real two(2, ctx.prec), one(1, ctx.prec), zero(0, ctx.prec);
  CHECK(agree(inc_gamma_upper(1, two, ctx), BigComplex::from_real(exp(-two)), 1e-30));
  CHECK(agree(inc_gamma_upper(3, zero, ctx), BigComplex(2, ctx.prec), 1e-30));
  CHECK(agree(inc_gamma_upper(3, one, ctx), BigComplex::from_real(exp(-one) * 5), 1e-30));
  Real x = Real::from_double(4.5, ctx.prec);
  CHECK(agree(inc_gamma_upper(2, x, ctx), BigComplex::from_real(exp(-x) * (x + 1)), 1e-30));
  CHECK_THROWS_AS(inc_gamma_upper(0, one, ctx), InvalidArgument);
}

TEST_CASE("constants") {
  CHECK(agree(BigComplex::from_real(zeta3(ctx.prec)),
              real_from("1.20205690315959428539973816151144999076498629234049888179227"), 1e-35));
  Real sp = sqrt(Real::pi(ctx.prec));
  CHECK(std::fabs((gamma_order_plus_one(BesselOrder::half(3), ctx.prec) - sp * 3 / 4).to_double()) < 1e-35);
  CHECK(std::fabs((gamma_order_plus_one(BesselOrder::half(1), ctx.prec) - sp / 2).to_double()) < 1e-35);
  CHECK(gamma_order_plus_one(BesselOrder::integer(3), ctx.prec).to_double() == 6.0);
}
