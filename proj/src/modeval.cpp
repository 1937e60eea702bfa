#include "partrace/modeval.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "partrace/errors.hpp"
#include "partrace/specfun.hpp"

namespace partrace {

namespace {

constexpr mpfr_prec_t kGuard = 24;

struct DivisorSums {
  std::vector<mpz_class> s1, s3, s5;
};

// sigma_1, sigma_3, sigma_5 for 0 <= n <= N, grown on demand.
const DivisorSums& divisor_sums(std::size_t N) {
  static std::mutex mu;
  static DivisorSums cache;
  std::lock_guard<std::mutex> lock(mu);
  if (cache.s1.size() <= N) {
    std::size_t size = std::max<std::size_t>(N + 1, 2 * cache.s1.size());
    DivisorSums fresh;
    fresh.s1.assign(size, 0);
    fresh.s3.assign(size, 0);
    fresh.s5.assign(size, 0);
    for (std::size_t d = 1; d < size; ++d) {
      mpz_class d1 = static_cast<unsigned long>(d);
      mpz_class d3 = d1 * d1 * d1;
      mpz_class d5 = d3 * d1 * d1;
      for (std::size_t n = d; n < size; n += d) {
        fresh.s1[n] += d1;
        fresh.s3[n] += d3;
        fresh.s5[n] += d5;
      }
    }
    cache = std::move(fresh);
  }
  return cache;
}

// Terms T with mult * sum_{n > T} n^power x^n < 2^(-bits), for 0 < x < 1/2.
std::size_t series_terms(long double x, int power, long double mult, long bits) {
  const long double target = std::ldexp(1.0L, -static_cast<int>(bits));
  for (std::size_t T = 1;; ++T) {
    long double m = static_cast<long double>(T + 1);
    long double ratio = std::pow((m + 1) / m, power) * x;
    if (ratio >= 1) continue;
    long double term = mult * std::pow(m, power) * std::pow(x, m);
    if (term / (1 - ratio) < target) return T;
    if (T > 200000) throw PrecisionExhausted("series_terms: too many terms");
  }
}

Radius series_tail(long double x, int power, long double mult, std::size_t T) {
  long double m = static_cast<long double>(T + 1);
  long double ratio = std::pow((m + 1) / m, power) * x;
  if (ratio >= 1) return std::numeric_limits<Radius>::infinity();
  return mult * std::pow(m, power) * std::pow(x, m) / (1 - ratio);
}

// sum_{n=1}^{T} c_n q^n by Horner.
BigComplex horner_from_one(const std::vector<mpz_class>& c, std::size_t T, const BigComplex& q) {
  mpfr_prec_t prec = q.prec();
  BigComplex s(c[T], prec);
  for (std::size_t n = T - 1; n >= 1; --n) {
    s *= q;
    s += BigComplex(c[n], prec);
  }
  return s * q;
}

BigComplex two_pi_i_times(const BigComplex& tau) {
  mpfr_prec_t prec = tau.prec();
  Real two_pi = Real::pi(prec) * 2;
  BigComplex r(-(tau.im() * two_pi), tau.re() * two_pi, tau.err() * 6.2831853071795864769L);
  return r;
}

struct ReducedAtomic {
  BigComplex q, eta, E2, E4, E6, delta;
};

// Values at a point of the fundamental domain.
ReducedAtomic atomic_reduced(const BigComplex& t) {
  const mpfr_prec_t prec = t.prec();
  ReducedAtomic out{BigComplex(prec), BigComplex(prec), BigComplex(prec), BigComplex(prec), BigComplex(prec),
                    BigComplex(prec)};
  out.q = exp(two_pi_i_times(t));
  long double qa = out.q.abs_upper();
  if (!(qa < 0.01L)) throw InternalError("atomic_reduced: point is not reduced");
  const long bits = static_cast<long>(prec) + 8;
  std::size_t T = series_terms(qa, 6, 504, bits);
  const DivisorSums& sig = divisor_sums(T);

  BigComplex s1 = horner_from_one(sig.s1, T, out.q);
  BigComplex s3 = horner_from_one(sig.s3, T, out.q);
  BigComplex s5 = horner_from_one(sig.s5, T, out.q);
  s1.add_error(series_tail(qa, 2, 1, T));
  s3.add_error(series_tail(qa, 4, 1, T));
  s5.add_error(series_tail(qa, 6, 1, T));
  out.E2 = BigComplex(1, prec) - s1 * 24;
  out.E4 = BigComplex(1, prec) + s3 * 240;
  out.E6 = BigComplex(1, prec) - s5 * 504;

  // prod (1 - q^n) = sum_k (-1)^k q^{k(3k-1)/2} over all integers k.
  BigComplex pent(1, prec);
  BigComplex qpow(1, prec);
  long last = 0;
  for (long k = 1;; ++k) {
    long e1 = k * (3 * k - 1) / 2, e2 = k * (3 * k + 1) / 2;
    if (std::pow(qa, static_cast<long double>(e1)) < std::ldexp(1.0L, -static_cast<int>(bits)) * (1 - qa)) {
      pent.add_error(2 * std::pow(qa, static_cast<long double>(e1)) / (1 - qa));
      break;
    }
    qpow *= pow(out.q, e1 - last);
    BigComplex a = qpow;
    qpow *= pow(out.q, e2 - e1);
    last = e2;
    BigComplex both = a + qpow;
    if (k & 1) pent -= both;
    else pent += both;
  }
  BigComplex q24 = exp(two_pi_i_times(t) / 24);
  out.eta = q24 * pent;
  out.delta = out.q * pow(pent, 24);
  return out;
}

// Values at tau itself, undoing the reduction.
AtomicValues atomic_at(const BigComplex& tau_in, const EvalContext& ctx) {
  const mpfr_prec_t wp = ctx.prec + kGuard;
  BigComplex tau = tau_in.with_prec(wp);
  FundamentalPoint fp = to_fundamental_domain(tau);
  ReducedAtomic r = atomic_reduced(fp.tau);
  const UnimodularMatrix& g = fp.gamma;
  AtomicValues v{r.eta, r.E2, r.E4, r.E6, r.E4 * r.E4 * r.E4 / r.delta};
  if (g.r == 0) {
    // gamma = T^k.
    v.eta = r.eta * BigComplex::root_of_unity(-g.q, 24, wp);
    return v;
  }
  BigComplex J = g.automorphy(tau);
  BigComplex J2 = J * J;
  v.E4 = r.E4 / (J2 * J2);
  v.E6 = r.E6 / (J2 * J2 * J2);
  Real six_over_pi = Real(6, wp) / Real::pi(wp);
  BigComplex corr(Real(wp), six_over_pi * g.r);
  v.E2 = (r.E2 + corr * J) / J2;
  // eta(g tau) = exp(pi i ((p + s)/(12 r) - s(s, r))) sqrt(-i J) eta(tau).
  mpq_class phase = mpq_class(g.p + g.s, 12 * g.r) - dedekind_sum(g.s, g.r);
  phase.canonicalize();
  mpz_class num = phase.get_num(), den = phase.get_den() * 2;
  num %= den;
  BigComplex eps = BigComplex::root_of_unity(num.get_si(), den.get_si(), wp);
  BigComplex minus_iJ(J.im(), -J.re(), J.err());
  v.eta = r.eta / (eps * sqrt(minus_iJ));
  return v;
}

BigComplex scaled_tau(const BigComplex& tau, long k) { return tau * k; }

// Atomic values at tau, 2 tau, 3 tau, 6 tau.
struct LevelSix {
  std::array<AtomicValues, 4> at;
};

constexpr std::array<long, 4> kLevels = {1, 2, 3, 6};
constexpr std::array<long, 4> kWeights = {1, -2, -3, 6};

LevelSix level_six(const BigComplex& tau, const EvalContext& ctx) {
  LevelSix out{{atomic_at(tau, ctx), atomic_at(scaled_tau(tau, 2), ctx), atomic_at(scaled_tau(tau, 3), ctx),
                atomic_at(scaled_tau(tau, 6), ctx)}};
  return out;
}

struct FParts {
  BigComplex F, thetaF;
};

FParts f_parts(const LevelSix& L) {
  const mpfr_prec_t prec = L.at[0].E2.prec();
  BigComplex N(prec), thetaN(prec), den(1, prec), e2sum(prec);
  for (std::size_t i = 0; i < 4; ++i) {
    const AtomicValues& a = L.at[i];
    const long k = kLevels[i];
    N += a.E2 * kWeights[i];
    // theta E2 = (E2^2 - E4) / 12 and theta[f(k tau)] = k (theta f)(k tau).
    thetaN += (a.E2 * a.E2 - a.E4) * (kWeights[i] * k);
    den *= a.eta * a.eta;
    e2sum += a.E2 * k;
  }
  thetaN /= 12;
  BigComplex F = N / (den * 2);
  // theta eta / eta = E2 / 24, so theta log(den) = sum_k k E2(k tau) / 12.
  BigComplex thetaF = thetaN / (den * 2) - F * e2sum / 12;
  return {std::move(F), std::move(thetaF)};
}

Real two_pi_v(const BigComplex& tau) { return Real::pi(tau.prec()) * 2 * tau.im(); }

void check_upper_half_plane(const BigComplex& tau) {
  if (tau.im().sign() <= 0) throw InvalidArgument("tau must lie in the upper half-plane");
}

BigComplex finish(BigComplex z, const EvalContext& ctx) { return z.with_prec(ctx.prec); }

}  // namespace

FundamentalPoint to_fundamental_domain(const BigComplex& tau) {
  check_upper_half_plane(tau);
  const mpfr_prec_t prec = tau.prec();
  Real x = tau.re(), y = tau.im();
  UnimodularMatrix g;
  for (int it = 0;; ++it) {
    if (it > 100000) throw PrecisionExhausted("to_fundamental_domain: no convergence");
    mpz_class k = x.round();
    if (k != 0) {
      if (!k.fits_slong_p()) throw InvalidArgument("to_fundamental_domain: real part too large");
      long kk = k.get_si();
      x -= kk;
      g = UnimodularMatrix::T(-kk) * g;
    }
    Real n2 = x * x + y * y;
    if (n2 < Real(1, prec)) {
      x = -x / n2;
      y = y / n2;
      g = UnimodularMatrix::S() * g;
      continue;
    }
    break;
  }
  if (g.r < 0 || (g.r == 0 && g.s < 0)) g = UnimodularMatrix(-g.p, -g.q, -g.r, -g.s);
  return {g.apply(tau), g};
}

AtomicValues eval_atomic_all(const BigComplex& tau, const EvalContext& ctx) {
  check_upper_half_plane(tau);
  AtomicValues v = atomic_at(tau, ctx);
  return {finish(v.eta, ctx), finish(v.E2, ctx), finish(v.E4, ctx), finish(v.E6, ctx), finish(v.j, ctx)};
}

BigComplex eval_atomic(Atomic which, const BigComplex& tau, const EvalContext& ctx) {
  AtomicValues v = eval_atomic_all(tau, ctx);
  switch (which) {
    case Atomic::Eta: return v.eta;
    case Atomic::E2: return v.E2;
    case Atomic::E4: return v.E4;
    case Atomic::E6: return v.E6;
    case Atomic::J: return v.j;
  }
  throw InternalError("eval_atomic: unknown function");
}

BigComplex eval_F(const BigComplex& tau, const EvalContext& ctx) {
  check_upper_half_plane(tau);
  return finish(f_parts(level_six(tau, ctx)).F, ctx);
}

BigComplex eval_theta_F(const BigComplex& tau, const EvalContext& ctx) {
  check_upper_half_plane(tau);
  return finish(f_parts(level_six(tau, ctx)).thetaF, ctx);
}

BigComplex eval_P(const BigComplex& tau, const EvalContext& ctx) {
  check_upper_half_plane(tau);
  FParts fp = f_parts(level_six(tau, ctx));
  BigComplex tw = tau.with_prec(ctx.prec + kGuard);
  BigComplex P = -fp.thetaF - fp.F / two_pi_v(tw);
  return finish(std::move(P), ctx);
}

BigComplex eval_modular(Modular which, const BigComplex& tau, const EvalContext& ctx) {
  check_upper_half_plane(tau);
  LevelSix L = level_six(tau, ctx);
  FParts fp = f_parts(L);
  const AtomicValues& a = L.at[0];
  const mpfr_prec_t wp = a.E2.prec();
  const Radius thresh = std::ldexp(Radius{1}, -static_cast<int>(ctx.prec / 2));
  BigComplex j1728 = a.j - BigComplex(1728, wp);
  if (a.E4.abs_upper() < thresh || a.j.abs_upper() < thresh || j1728.abs_upper() < thresh)
    throw PoleProximity("eval_modular: too close to a pole (E4, j or j - 1728 vanishes)");
  BigComplex tw = tau.with_prec(wp);
  Real pi = Real::pi(wp);
  BigComplex seven_j = a.j * 7 - BigComplex(6912, wp);
  BigComplex A = -fp.thetaF - a.E2 * fp.F / 6 + fp.F * a.E6 * seven_j / (a.E4 * j1728 * 6);
  BigComplex B = fp.F * a.E6 * a.j / a.E4;
  BigComplex nonhol = a.E2 - BigComplex::from_real(Real(3, wp) / (pi * tw.im()));
  BigComplex C = a.E4 / (a.E6 * a.j * 6) * nonhol - seven_j / (a.j * j1728 * 6);
  switch (which) {
    case Modular::A: return finish(std::move(A), ctx);
    case Modular::B: return finish(std::move(B), ctx);
    case Modular::C: return finish(std::move(C), ctx);
    case Modular::P: return finish(A + B * C, ctx);
  }
  throw InternalError("eval_modular: unknown function");
}

namespace {

std::vector<mpz_class> compute_F_coefficients(std::size_t L) {
  // q F = (N / 2) / prod_{k in 1,2,3,6} prod_n (1 - q^{kn})^2.
  std::vector<std::int64_t> euler(L, 0);
  for (long k = 0;; ++k) {
    bool any = false;
    for (long e : {k * (3 * k - 1) / 2, k * (3 * k + 1) / 2}) {
      if (e < static_cast<long>(L)) {
        euler[static_cast<std::size_t>(e)] = (k & 1) ? -1 : 1;
        any = true;
      }
      if (k == 0) break;
    }
    if (!any) break;
  }
  auto mul = [L](const std::vector<std::int64_t>& x, const std::vector<std::int64_t>& y) {
    std::vector<std::int64_t> z(L, 0);
    for (std::size_t i = 0; i < L; ++i) {
      if (x[i] == 0) continue;
      for (std::size_t j = 0; i + j < L; ++j) z[i + j] += x[i] * y[j];
    }
    return z;
  };
  auto stretch = [L](const std::vector<std::int64_t>& x, std::size_t k) {
    std::vector<std::int64_t> z(L, 0);
    for (std::size_t i = 0; i * k < L; ++i) z[i * k] = x[i];
    return z;
  };
  std::vector<std::int64_t> e2 = mul(euler, euler);
  std::vector<std::int64_t> den = mul(mul(e2, stretch(e2, 2)), mul(stretch(e2, 3), stretch(e2, 6)));

  const DivisorSums& sig = divisor_sums(L);
  std::vector<mpz_class> num(L, 0);
  num[0] = 1;
  for (std::size_t m = 1; m < L; ++m) {
    mpz_class s = 0;
    for (std::size_t i = 0; i < 4; ++i) {
      std::size_t k = static_cast<std::size_t>(kLevels[i]);
      if (m % k == 0) s += sig.s1[m / k] * kWeights[i];
    }
    num[m] = -12 * s;
  }
  std::vector<mpz_class> out(L);
  for (std::size_t n = 0; n < L; ++n) {
    mpz_class acc = num[n];
    for (std::size_t k = 1; k <= n; ++k) {
      if (den[k] == 0) continue;
      if (den[k] > 0) mpz_submul_ui(acc.get_mpz_t(), out[n - k].get_mpz_t(), static_cast<unsigned long>(den[k]));
      else mpz_addmul_ui(acc.get_mpz_t(), out[n - k].get_mpz_t(), static_cast<unsigned long>(-den[k]));
    }
    out[n] = acc;
  }
  return out;
}

}  // namespace

std::vector<mpz_class> F_coefficients(std::size_t count) {
  static std::mutex mu;
  static std::vector<mpz_class> cache;
  std::lock_guard<std::mutex> lock(mu);
  if (cache.size() < count) cache = compute_F_coefficients(std::max(count, 2 * cache.size()));
  return std::vector<mpz_class>(cache.begin(), cache.begin() + static_cast<std::ptrdiff_t>(count));
}

double F_growth_rate() { return 4 * M_PI / std::sqrt(6.0); }

double F_envelope() {
  static const double value = [] {
    const std::size_t M = 600;
    std::vector<mpz_class> a = F_coefficients(M + 2);
    double worst = 0;
    for (std::size_t m = 1; m <= M; ++m) {
      mpz_class x = abs(a[m + 1]);
      double lg = std::log(x.get_d()) - F_growth_rate() * std::sqrt(static_cast<double>(m));
      worst = std::max(worst, std::exp(lg));
    }
    return 2 * worst;
  }();
  return value;
}

Radius F_tail_bound(std::int64_t T, double x, int power) {
  const long double c = F_growth_rate();
  const long double logA = std::log(static_cast<long double>(F_envelope()));
  auto log_term = [&](long double m) { return logA + power * std::log(m) + c * std::sqrt(m) - x * m; };
  auto ratio = [&](long double m) {
    return std::exp(power * std::log((m + 1) / m) + c * (std::sqrt(m + 1) - std::sqrt(m)) - x);
  };
  long double sum = 0;
  long double m = static_cast<long double>(std::max<std::int64_t>(T + 1, 1));
  for (int steps = 0; ratio(m) >= 0.5L; ++steps, m += 1) {
    if (steps > 1000000) return std::numeric_limits<Radius>::infinity();
    sum += std::exp(log_term(m));
  }
  return sum + std::exp(log_term(m)) / (1 - ratio(m));
}

std::int64_t F_terms_for(double v, int width, long bits) {
  const double x = 2 * M_PI * v / width;
  const Radius target = std::ldexp(Radius{1}, -static_cast<int>(bits));
  std::int64_t hi = 8;
  while (!(F_tail_bound(hi, x) < target)) {
    hi *= 2;
    if (hi > (1 << 24)) throw PrecisionExhausted("F_terms_for: truncation too long");
  }
  std::int64_t lo = hi / 2;
  while (lo + 1 < hi) {
    std::int64_t mid = (lo + hi) / 2;
    if (F_tail_bound(mid, x) < target) hi = mid;
    else lo = mid;
  }
  return hi;
}

EvalContext EvalContext::at(mpfr_prec_t prec) {
  EvalContext ctx;
  ctx.prec = std::max<mpfr_prec_t>(prec, 64);
  ctx.terms = static_cast<int>(F_terms_for(ctx.vmin, 1, static_cast<long>(ctx.prec) + 10));
  return ctx;
}

BigComplex eval_P_qseries(const BigComplex& tau, const EvalContext& ctx) {
  check_upper_half_plane(tau);
  const double v = tau.im().to_double();
  if (v < 1) throw InvalidArgument("eval_P_qseries: requires Im(tau) >= 1");
  const mpfr_prec_t wp = ctx.prec + kGuard;
  BigComplex tw = tau.with_prec(wp);
  const std::int64_t T = std::max<std::int64_t>(F_terms_for(v, 1, static_cast<long>(wp) + 10), ctx.terms);
  std::vector<mpz_class> a = F_coefficients(static_cast<std::size_t>(T) + 2);
  BigComplex q = exp(two_pi_i_times(tw));
  // Horner for sum_{m=1}^T a_m q^m and sum m a_m q^m.
  BigComplex hs(wp), hd(wp);
  for (std::int64_t m = T; m >= 1; --m) {
    hs *= q;
    hd *= q;
    hs += BigComplex(a[static_cast<std::size_t>(m + 1)], wp);
    hd += BigComplex(mpz_class(a[static_cast<std::size_t>(m + 1)] * m), wp);
  }
  hs *= q;
  hd *= q;
  BigComplex qinv = exp(-two_pi_i_times(tw));
  BigComplex F = qinv + BigComplex(a[1], wp) + hs;
  BigComplex thetaF = hd - qinv;
  const double x = 2 * M_PI * v;
  F.add_error(F_tail_bound(T, x, 0));
  thetaF.add_error(F_tail_bound(T, x, 1));
  BigComplex P = -thetaF - F / two_pi_v(tw);
  return finish(std::move(P), ctx);
}

BigComplex QSeries::evaluate(const BigComplex& tau) const {
  check_upper_half_plane(tau);
  if (tau.im().to_double() < vmin * (1 - 1e-12)) throw InvalidArgument("QSeries::evaluate: Im(tau) below vmin");
  const mpfr_prec_t prec = coeffs.empty() ? tau.prec() : coeffs.front().prec();
  BigComplex tw = tau.with_prec(prec);
  BigComplex w = exp(two_pi_i_times(tw) / h);
  BigComplex s(prec);
  for (std::size_t k = coeffs.size(); k-- > 0;) {
    s *= w;
    s += coeffs[k];
  }
  if (start != 0) s *= start > 0 ? pow(w, start) : inv(pow(w, -start));
  s.add_error(tail);
  return s;
}

QSeries cusp_expansion_F(const CosetRep& rep, int terms, const EvalContext& ctx) {
  if (terms < 2) throw InvalidArgument("cusp_expansion_F: need at least two terms");
  const mpfr_prec_t prec = ctx.prec;
  QSeries out;
  out.h = rep.width();
  out.start = -1;
  out.vmin = ctx.vmin;
  std::vector<mpz_class> a = F_coefficients(static_cast<std::size_t>(terms));
  for (int k = 0; k < terms; ++k) {
    const long m = k - 1;
    long zeta = 0;  // exponent of zeta_6
    switch (rep.cusp) {
      case Cusp::Infinity: zeta = 0; break;
      case Cusp::OneThird: zeta = 3 + 3 * m * (rep.index + 1); break;
      case Cusp::OneHalf: zeta = 3 + 2 * m * rep.index; break;
      case Cusp::Zero: zeta = m * rep.index; break;
    }
    BigComplex c = BigComplex::root_of_unity(zeta, 6, prec) * BigComplex(a[static_cast<std::size_t>(k)], prec);
    out.coeffs.push_back(c * static_cast<long>(out.h));
  }
  out.tail = out.h * F_tail_bound(terms - 2, 2 * M_PI * ctx.vmin / out.h, 0);
  return out;
}

BigComplex IntMatrix::apply(const BigComplex& tau) const {
  BigComplex num = tau * static_cast<long>(p) + BigComplex(static_cast<long>(q), tau.prec());
  return num / automorphy(tau);
}

BigComplex IntMatrix::automorphy(const BigComplex& tau) const {
  return tau * static_cast<long>(r) + BigComplex(static_cast<long>(s), tau.prec());
}

IntMatrix atkin_lehner_matrix(int d) {
  switch (d) {
    case 6: return {0, -1, 6, 0};
    case 3: return {3, 1, 6, 3};
    case 2: return {2, -1, 6, -2};
    default: throw InvalidArgument("atkin_lehner_matrix: d must be 2, 3 or 6");
  }
}

BigComplex slash_F(const IntMatrix& m, const BigComplex& tau, const EvalContext& ctx) {
  if (m.det() <= 0) throw InvalidArgument("slash_F: determinant must be positive");
  BigComplex tw = tau.with_prec(ctx.prec + kGuard);
  BigComplex J = m.automorphy(tw);
  BigComplex val = J * J * eval_F(m.apply(tw), ctx.with_extra_bits(kGuard)) / static_cast<long>(m.det());
  return finish(std::move(val), ctx);
}

int atkin_lehner_sign(int d, const EvalContext& ctx) {
  IntMatrix W = atkin_lehner_matrix(d);
  const std::array<std::array<double, 2>, 4> samples = {{{0.1, 0.5}, {-0.23, 0.37}, {0.31, 1.1}, {0.05, 0.8}}};
  int sign = 0;
  for (const auto& s : samples) {
    BigComplex tau = BigComplex::from_doubles(s[0], s[1], ctx.prec);
    BigComplex f = eval_F(tau, ctx);
    BigComplex g = slash_F(W, tau, ctx);
    const Radius slack = f.abs_upper() * std::ldexp(Radius{1}, -static_cast<int>(ctx.prec / 2));
    int here = 0;
    if (g.overlaps(f, slack)) here = 1;
    else if (g.overlaps(-f, slack)) here = -1;
    if (here == 0 || (sign != 0 && here != sign))
      throw InternalError("atkin_lehner_sign: F is not an eigenform of this involution");
    sign = here;
  }
  return sign;
}

}  // namespace partrace
