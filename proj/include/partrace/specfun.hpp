#pragma once

// Special functions and exponential sums used by the coefficient bounds and
// the partition oracles.

#include <cstdint>

#include <gmpxx.h>

#include "partrace/numeric/complex.hpp"
#include "partrace/numeric/context.hpp"

namespace partrace {

// Dedekind sum s(h, k) = sum_{r=1}^{k-1} ((r/k)) ((h r/k)), exact; requires k >= 1, gcd(h, k) = 1.
mpq_class dedekind_sum(std::int64_t h, std::int64_t k);

// Inverse of d modulo c (c >= 1, gcd(d, c) = 1), in [0, c).
std::int64_t inverse_mod(std::int64_t d, std::int64_t c);

struct KloostermanSum {
  std::int64_t m = 0, l = 0, c = 1;
  BigComplex value;
};

// K(m, l, c) = sum over d mod c, gcd(d, c) = 1, of exp(2 pi i (m dbar + l d) / c).
BigComplex kloosterman(std::int64_t m, std::int64_t l, std::int64_t c, const EvalContext& ctx);
KloostermanSum kloosterman_sum(std::int64_t m, std::int64_t l, std::int64_t c, const EvalContext& ctx);

// Bessel order nu = twice / 2; only the orders 1/2, 3/2 and 3 are needed.
struct BesselOrder {
  int twice = 1;
  static BesselOrder half(int numerator) { return {numerator}; }
  static BesselOrder integer(int n) { return {2 * n}; }
  double value() const { return twice / 2.0; }
};

// I_nu(x) for x > 0 by the ascending series with a rigorous tail bound.
BigComplex bessel_I(BesselOrder nu, const Real& x, const EvalContext& ctx);
// I_{1/2} and I_{3/2} in elementary closed form.
BigComplex bessel_I_closed(BesselOrder nu, const Real& x, const EvalContext& ctx);
// J_nu(x) for x > 0 by the ascending series; `max_terms` caps the series (0 = until the tail bound is tiny).
BigComplex bessel_J(BesselOrder nu, const Real& x, const EvalContext& ctx, int max_terms = 0);

// Gamma(alpha, x) = (alpha - 1)! e^{-x} sum_{j < alpha} x^j / j! for integer alpha >= 1, x >= 0.
BigComplex inc_gamma_upper(int alpha, const Real& x, const EvalContext& ctx);

// zeta(3), cached per precision.
const Real& zeta3(mpfr_prec_t prec);

// Gamma(nu + 1) for the supported Bessel orders.
Real gamma_order_plus_one(BesselOrder nu, mpfr_prec_t prec);

}  // namespace partrace
