#include "partrace/specfun.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <vector>

#include "partrace/errors.hpp"

namespace partrace {

namespace {

std::int64_t posmod(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

Radius mag(const Real& x) { return std::fabs(x.to_long_double()); }

}  // namespace

mpq_class dedekind_sum(std::int64_t h, std::int64_t k) {
  if (k < 1) throw InvalidArgument("dedekind_sum: k must be positive");
  if (std::gcd(h, k) != 1) throw InvalidArgument("dedekind_sum: gcd(h, k) != 1");
  // Reciprocity: s(h,k) + s(k,h) = -1/4 + (h/k + k/h + 1/(hk)) / 12.
  mpq_class sum = 0;
  int sign = 1;
  h = posmod(h, k);
  while (k > 1 && h != 0) {
    mpq_class hk(h, k), kh(k, h), inv(1, h * k);
    hk.canonicalize();
    kh.canonicalize();
    inv.canonicalize();
    mpq_class rec = mpq_class(-1, 4) + (hk + kh + inv) / 12;
    sum += sign * rec;
    sign = -sign;
    std::int64_t nk = h;
    h = k % h;
    k = nk;
  }
  return sum;
}

std::int64_t inverse_mod(std::int64_t d, std::int64_t c) {
  if (c == 1) return 0;
  std::int64_t r0 = posmod(d, c), r1 = c, s0 = 1, s1 = 0;
  while (r1 != 0) {
    std::int64_t q = r0 / r1;
    std::int64_t t = r0 - q * r1;
    r0 = r1;
    r1 = t;
    t = s0 - q * s1;
    s0 = s1;
    s1 = t;
  }
  if (r0 != 1) throw InvalidArgument("inverse_mod: not invertible");
  return posmod(s0, c);
}

BigComplex kloosterman(std::int64_t m, std::int64_t l, std::int64_t c, const EvalContext& ctx) {
  if (c < 1) throw InvalidArgument("kloosterman: c must be positive");
  const mpfr_prec_t prec = ctx.prec;
  if (c == 1) return BigComplex(1, prec);
  // Collect multiplicities of each phase, then sum against a table of c-th roots of unity.
  std::vector<std::int64_t> count(static_cast<std::size_t>(c), 0);
  for (std::int64_t d = 1; d < c; ++d) {
    if (std::gcd(d, c) != 1) continue;
    std::int64_t dbar = inverse_mod(d, c);
    __int128 e = static_cast<__int128>(posmod(m, c)) * dbar + static_cast<__int128>(posmod(l, c)) * d;
    count[static_cast<std::size_t>(e % c)] += 1;
  }
  Real two_pi_over_c = Real::pi(prec + 16) * 2;
  two_pi_over_c /= c;
  Real re(prec + 16), im(prec + 16);
  std::int64_t terms = 0;
  for (std::int64_t k = 0; k < c; ++k) {
    std::int64_t n = count[static_cast<std::size_t>(k)];
    if (n == 0) continue;
    terms += n;
    Real theta = two_pi_over_c * k;
    re += cos(theta) * n;
    im += sin(theta) * n;
  }
  re.set_prec(prec);
  im.set_prec(prec);
  BigComplex out(std::move(re), std::move(im));
  out.set_error(static_cast<Radius>(terms + c + 4) * 8 * ulp_scale(prec));
  return out;
}

KloostermanSum kloosterman_sum(std::int64_t m, std::int64_t l, std::int64_t c, const EvalContext& ctx) {
  return {m, l, c, kloosterman(m, l, c, ctx)};
}

Real gamma_order_plus_one(BesselOrder nu, mpfr_prec_t prec) {
  Real arg = Real(nu.twice + 2, prec) / 2;
  Real out(prec);
  mpfr_gamma(out.get(), arg.get(), MPFR_RNDN);
  return out;
}

namespace {

// sum_k sign^k (x/2)^{2k+nu} / (k! Gamma(k+nu+1)).
BigComplex bessel_series(BesselOrder nu, const Real& x, const EvalContext& ctx, bool alternating, int max_terms) {
  if (x.sign() <= 0) throw InvalidArgument("bessel: x must be positive");
  const mpfr_prec_t wp = ctx.prec + 32;
  Real half = x.with_prec(wp) / 2;
  Real half_sq = half * half;
  Real nu_r = Real(nu.twice, wp) / 2;
  Real term = pow(half, nu_r) / gamma_order_plus_one(nu, wp);
  Real sum(wp);
  Radius abs_sum = 0;
  const Radius target = std::ldexp(Radius{1}, -static_cast<int>(ctx.prec) - 12);
  Radius tail = 0;
  for (int k = 0;; ++k) {
    if (alternating && (k & 1)) sum -= term;
    else sum += term;
    abs_sum += mag(term);
    // ratio of the next term to the current one; decreasing in k.
    Real denom(static_cast<long>(k + 1), wp);
    denom *= Real(static_cast<long>(2 * k + 2 + nu.twice), wp) / 2;
    Real ratio_r = half_sq / denom;
    Radius ratio = mag(ratio_r);
    term *= ratio_r;
    bool limit = max_terms > 0 && k + 1 >= max_terms;
    if (ratio < 0.5L && (mag(term) <= target * (abs_sum > 1 ? abs_sum : 1) || limit)) {
      tail = mag(term) / (1 - ratio);
      break;
    }
    if (limit) {
      tail = std::numeric_limits<Radius>::infinity();
      break;
    }
  }
  sum.set_prec(ctx.prec);
  BigComplex out = BigComplex::from_real(std::move(sum));
  out.set_error(tail + abs_sum * 64 * ulp_scale(ctx.prec));
  return out;
}

}  // namespace

BigComplex bessel_I(BesselOrder nu, const Real& x, const EvalContext& ctx) {
  return bessel_series(nu, x, ctx, false, 0);
}

BigComplex bessel_J(BesselOrder nu, const Real& x, const EvalContext& ctx, int max_terms) {
  return bessel_series(nu, x, ctx, true, max_terms);
}

BigComplex bessel_I_closed(BesselOrder nu, const Real& x, const EvalContext& ctx) {
  if (x.sign() <= 0) throw InvalidArgument("bessel: x must be positive");
  // cosh x - sinh x / x ~ x^2/3 loses about 2 log2(1/x) bits.
  long guard = 32;
  if (x < 1) guard += static_cast<long>(2 * std::max(0.0, -std::log2(x.to_double()))) + 8;
  const mpfr_prec_t wp = ctx.prec + guard;
  Real xw = x.with_prec(wp);
  Real pref = sqrt(Real(2, wp) / (Real::pi(wp) * xw));
  Real body(wp);
  if (nu.twice == 1) {
    body = sinh(xw);
  } else if (nu.twice == 3) {
    body = cosh(xw) - sinh(xw) / xw;
  } else {
    throw InvalidArgument("bessel_I_closed: only orders 1/2 and 3/2 have elementary forms here");
  }
  Real v = pref * body;
  v.set_prec(ctx.prec);
  BigComplex out = BigComplex::from_real(std::move(v));
  out.set_error(out.mid_abs() * 16 * ulp_scale(ctx.prec));
  return out;
}

BigComplex inc_gamma_upper(int alpha, const Real& x, const EvalContext& ctx) {
  if (alpha < 1) throw InvalidArgument("inc_gamma_upper: alpha must be a positive integer");
  if (x.sign() < 0) throw InvalidArgument("inc_gamma_upper: x must be non-negative");
  const mpfr_prec_t wp = ctx.prec + 16;
  Real xw = x.with_prec(wp);
  Real sum(wp), term(1, wp);
  for (int j = 0; j < alpha; ++j) {
    sum += term;
    term *= xw;
    term /= j + 1;
  }
  Real fact(1, wp);
  for (int j = 2; j < alpha; ++j) fact *= j;
  Real v = fact * exp(-xw) * sum;
  v.set_prec(ctx.prec);
  BigComplex out = BigComplex::from_real(std::move(v));
  out.set_error(out.mid_abs() * (alpha + 8) * 4 * ulp_scale(ctx.prec));
  return out;
}

const Real& zeta3(mpfr_prec_t prec) {
  static std::mutex mu;
  static std::map<mpfr_prec_t, std::unique_ptr<Real>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[prec];
  if (!slot) {
    // zeta(3) = 5/2 sum_{n>=1} (-1)^{n+1} / (n^3 binom(2n, n)); alternating with ratio < 1/4.
    const mpfr_prec_t wp = prec + 32;
    Real sum(wp);
    mpz_class binom = 2;
    for (long n = 1;; ++n) {
      if (n > 1) {
        binom *= (2 * n) * (2 * n - 1);
        binom /= n * n;
      }
      mpz_class den = binom * n * n * n;
      Real term = Real(1, wp) / Real(den, wp);
      if (n & 1) sum += term;
      else sum -= term;
      if (term.exponent() < -static_cast<long>(wp)) break;
    }
    sum *= 5;
    sum /= 2;
    sum.set_prec(prec);
    slot = std::make_unique<Real>(std::move(sum));
  }
  return *slot;
}

}  // namespace partrace
