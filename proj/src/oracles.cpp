#include "partrace/oracles.hpp"

#include <cmath>
#include <numeric>

#include "partrace/errors.hpp"
#include "partrace/specfun.hpp"

namespace partrace {

PartitionTable euler_p(std::int64_t N) {
  if (N < 0) throw InvalidArgument("euler_p: N must be non-negative");
  PartitionTable t;
  t.values.assign(static_cast<std::size_t>(N) + 1, 0);
  t.values[0] = 1;
  for (std::int64_t n = 1; n <= N; ++n) {
    mpz_class s = 0;
    for (std::int64_t k = 1;; ++k) {
      std::int64_t g1 = k * (3 * k - 1) / 2;
      if (g1 > n) break;
      std::int64_t g2 = k * (3 * k + 1) / 2;
      mpz_class pair = t.values[static_cast<std::size_t>(n - g1)];
      if (g2 <= n) pair += t.values[static_cast<std::size_t>(n - g2)];
      if (k & 1) s += pair;
      else s -= pair;
    }
    t.values[static_cast<std::size_t>(n)] = s;
  }
  return t;
}

namespace {
// Partitions of n into parts of size at most m.
mpz_class count_bounded(int n, int m) {
  if (n == 0) return 1;
  mpz_class s = 0;
  for (int part = std::min(n, m); part >= 1; --part) s += count_bounded(n - part, part);
  return s;
}
}  // namespace

mpz_class brute_force_p(int n) {
  if (n < 0 || n > 60) throw InvalidArgument("brute_force_p: 0 <= n <= 60");
  return count_bounded(n, n);
}

BigComplex rademacher_A(std::int64_t k, std::int64_t n, const EvalContext& ctx) {
  if (k < 1) throw InvalidArgument("rademacher_A: k must be positive");
  BigComplex sum(ctx.prec);
  for (std::int64_t h = 0; h < k; ++h) {
    if (std::gcd(h, k) != 1) continue;
    // phase in turns: s(h,k)/2 - n h / k
    std::int64_t r = (n % k) * h % k;
    mpq_class turns = dedekind_sum(h, k) / 2 - mpq_class(mpz_class(r), mpz_class(k));
    turns.canonicalize();
    mpz_class num = turns.get_num() % turns.get_den();
    sum += BigComplex::root_of_unity(num.get_si(), turns.get_den().get_si(), ctx.prec);
  }
  return sum;
}

std::int64_t rademacher_terms(std::int64_t n) {
  return static_cast<std::int64_t>(std::ceil(2 * std::sqrt(static_cast<double>(n)))) + 5;
}

RademacherResult rademacher_p(std::int64_t n, std::int64_t K, const EvalContext& ctx_in) {
  if (n < 1 || K < 1) throw InvalidArgument("rademacher_p: n >= 1 and K >= 1 required");
  // p(n) has about pi sqrt(2n/3) / ln 2 bits.
  const mpfr_prec_t need = static_cast<mpfr_prec_t>(M_PI * std::sqrt(2.0 * n / 3.0) / std::log(2.0)) + 64;
  EvalContext ctx = ctx_in;
  ctx.prec = std::max(ctx.prec, need);
  const mpfr_prec_t wp = ctx.prec;
  Real D(24 * n - 1, wp);
  Real sqrtD = sqrt(D);
  Real pi = Real::pi(wp);
  BigComplex sum(wp);
  for (std::int64_t k = 1; k <= K; ++k) {
    BigComplex A = rademacher_A(k, n, ctx);
    Real x = pi * sqrtD / (6 * k);
    BigComplex I = bessel_I_closed(BesselOrder::half(3), x, ctx);
    sum += A * I / k;
  }
  Real pref = pi * 2 / pow(D, Real::from_string("0.75", wp));
  sum *= pref;
  RademacherResult out;
  out.value = sum.re().round();
  Real diff = abs(sum.re() - Real(out.value, wp));
  out.residual = diff.to_double() + static_cast<double>(sum.err());
  out.sum = sum;
  if (out.residual > 0.25)
    throw PrecisionExhausted("rademacher_p: truncated sum is not within 0.25 of an integer");
  return out;
}

BigComplex hardy_ramanujan_asymptotic(std::int64_t n, const EvalContext& ctx) {
  if (n < 1) throw InvalidArgument("hardy_ramanujan_asymptotic: n must be positive");
  const mpfr_prec_t wp = ctx.prec;
  Real e = Real::pi(wp) * sqrt(Real(2 * n, wp) / 3);
  Real v = exp(e) / (Real(4 * n, wp) * sqrt(Real(3, wp)));
  BigComplex out = BigComplex::from_real(std::move(v));
  out.set_error(out.mid_abs() * 16 * ulp_scale(wp));
  return out;
}

}  // namespace partrace
