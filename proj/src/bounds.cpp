#include "partrace/bounds.hpp"

#include <algorithm>
#include <cmath>

#include "partrace/errors.hpp"
#include "partrace/modeval.hpp"
#include "partrace/parallel.hpp"
#include "partrace/specfun.hpp"

namespace partrace {

namespace {

Real real(long v, mpfr_prec_t prec) { return Real(v, prec); }

Real pi(mpfr_prec_t prec) { return Real::pi(prec); }

// Bound on sum_{c > C, 6 | c} c^-3 with C = 6K.
Real cube_tail(std::int64_t K, mpfr_prec_t prec) {
  Real k(static_cast<long>(K), prec);
  return real(1, prec) / (k * k * 432);
}

}  // namespace

Real poincare_coeff_bound(std::int64_t l, const EvalContext& ctx) {
  if (l < 0) throw InvalidArgument("poincare_coeff_bound: l must be non-negative");
  const mpfr_prec_t prec = ctx.prec;
  const Real p = pi(prec);
  const Real& z3 = zeta3(prec);
  if (l == 0) return pow(p, 4) * z3 * 2 / 27;
  Real L(static_cast<long>(l), prec);
  Real sl = sqrt(L);
  Real first = sqrt(sl) / sqrt(real(3, prec)) * exp(p * sl * 2 / 3);
  Real second = pow(p, 3) / 81 * L * sl * z3;
  return p * 12 / (L * sl) * (first + second);
}

BigComplex exact_poincare_coeff(std::int64_t l, const Real& v, std::int64_t cmax, const EvalContext& ctx) {
  if (cmax < 6) throw InvalidArgument("exact_poincare_coeff: cmax must be at least 6");
  if (!(v > 0)) throw InvalidArgument("exact_poincare_coeff: v must be positive");
  const EvalContext wctx = ctx.with_extra_bits(16);
  const mpfr_prec_t prec = wctx.prec;
  const Real p = pi(prec);
  const std::int64_t al = l < 0 ? -l : l;
  const Real sl = sqrt(Real(static_cast<long>(al), prec));
  // Past C every Bessel argument 4 pi sqrt|l| / c is at most 1.
  std::int64_t C = std::max<std::int64_t>(cmax, static_cast<std::int64_t>(std::ceil(4 * M_PI * std::sqrt(static_cast<double>(al)))));
  C = (C + 5) / 6 * 6;
  const std::int64_t K = C / 6;

  BigComplex sum(prec);
  for (std::int64_t c = 6; c <= C; c += 6) {
    BigComplex k = kloosterman(-1, l, c, wctx);
    if (l == 0) {
      sum += k / Real(static_cast<long>(c), prec) / pow(Real(static_cast<long>(c), prec), 3);
      continue;
    }
    Real x = p * sl * 4 / c;
    BigComplex bes = l > 0 ? bessel_I(BesselOrder::integer(3), x, wctx) : bessel_J(BesselOrder::integer(3), x, wctx);
    sum += k * bes / c;
  }

  const Real tail_sum = cube_tail(K, prec);
  BigComplex out(prec);
  Real tail(prec);
  if (l == 0) {
    Real pref = pow(p, 4) * 16;
    out = -(sum * pref);
    tail = pref * tail_sum;
  } else if (l > 0) {
    Real pref = p * 12 / (Real(static_cast<long>(al), prec) * sl);
    out = -(sum * pref);
    tail = p * 12 * pow(p, 3) * 8 / 3 * tail_sum;
  } else {
    Real arg = p * 4 * Real(static_cast<long>(al), prec) * v.with_prec(prec);
    BigComplex g = inc_gamma_upper(3, arg, wctx);
    Real pref = p * 6 / (Real(static_cast<long>(al), prec) * sl);
    out = -(sum * g * pref);
    tail = pow(p, 4) * 8 * tail_sum * (g.re() + Real::from_double(static_cast<double>(g.err()), prec));
  }
  out.add_error(tail.to_long_double());
  return out.with_prec(ctx.prec);
}

std::string to_string(KappaMethod m) { return m == KappaMethod::SeriesSummed ? "series-summed" : "geometric-majorized"; }

BoundCertificate kappa_certificate(const EvalContext& ctx, int h, KappaMethod method) {
  if (h < 1) throw InvalidArgument("kappa_certificate: h must be positive");
  const mpfr_prec_t prec = ctx.prec;
  const Real p = pi(prec);
  const Real s3 = sqrt(real(3, prec));
  const Real& z3 = zeta3(prec);
  BoundCertificate cert;
  cert.method = method;
  cert.components.h = h;
  cert.components.b0_bound = poincare_coeff_bound(0, ctx);
  const Real outer1 = real(2 * h, prec) / 3;
  const Real outer2 = real(2 * h, prec) / (p * s3 * 3);
  cert.components.constant_part = outer2 * cert.components.b0_bound;

  Real first(prec), second(prec);
  if (method == KappaMethod::SeriesSummed) {
    const Real decay = p * s3 / h;
    const Real threshold = Real::from_double(1e-30, prec);
    Real previous(prec);
    std::int64_t l = 1;
    for (;; ++l) {
      Real L(static_cast<long>(l), prec);
      Real b = poincare_coeff_bound(l, ctx) * exp(-(decay * L));
      Real t1 = outer1 * L * b, t2 = outer2 * b;
      first += t1;
      second += t2;
      Real t = t1 + t2;
      // stop once past the peak and below the threshold
      if (l > 1 && t < previous && t < threshold) {
        cert.last_term = t.to_double();
        break;
      }
      previous = t;
      if (l > 1000000) throw InternalError("kappa_certificate: series did not converge");
    }
    cert.terms = l;
  } else {
    // sqrt l <= l / (2s) + s / 2, l^(-1/4) <= 1, then closed-form geometric sums; s chosen on a grid.
    const double y = std::exp(-M_PI * std::sqrt(3.0) / h);
    const Real yr = exp(-(p * s3 / h));
    const Real one = real(1, prec);
    const Real pc = pow(p, 3) / 81 * z3;
    std::optional<Real> best_first, best_second;
    for (double s = h / (3 * std::sqrt(3.0)) + 0.05; s < 40; s += 0.05) {
      if (std::exp(M_PI / (3 * s)) * y >= 1) continue;
      Real S = Real::from_double(s, prec);
      Real x = exp(p / (S * 3) - p * s3 / h);
      Real geo = x / (one - x);
      Real lead = exp(p * S / 3) / s3;
      Real f = outer1 * p * 12 * (lead * geo + pc * yr / ((one - yr) * (one - yr)));
      Real g = outer2 * p * 12 * (lead * geo + pc * yr / (one - yr));
      if (!best_first || f + g < *best_first + *best_second) {
        best_first = f;
        best_second = g;
      }
    }
    if (!best_first) throw InternalError("kappa_certificate: no admissible majorant");
    first = *best_first;
    second = *best_second;
  }
  cert.components.first_series = first;
  cert.components.second_series = second;
  cert.kappa = first + second + cert.components.constant_part;
  cert.within_published = cert.kappa.to_double() <= kKappa;
  if (method == KappaMethod::SeriesSummed && h == 6 && !cert.within_published)
    throw InvariantViolation("kappa_certificate: summed bound " + cert.kappa.to_string(12) + " exceeds 1334.42");
  return cert;
}

Real main_term(std::int64_t n, std::int64_t a, std::int64_t hQ, const EvalContext& ctx) {
  const std::int64_t s = a * hQ;
  if (n < 1 || a < 1 || hQ < 1 || s % 6 != 0) throw InvalidArgument("main_term: need n >= 1 and 6 | a hQ");
  const mpfr_prec_t prec = ctx.prec;
  const Real p = pi(prec);
  const Real r = sqrt(Real(static_cast<long>(24 * n - 1), prec));
  return (real(1, prec) - Real(static_cast<long>(2 * s), prec) / (p * r * 2)) * exp(p * r * 2 / (2 * s));
}

QuadForm CuspTableRow::form_for(std::int64_t n) const {
  std::int64_t num = c_mul * n + c_add;
  if (num % c_div != 0) throw InvalidArgument("cusp table row does not apply to this n");
  return {a, b, num / c_div};
}

const std::vector<CuspTableRow>& published_cusp_tables() {
  static const std::vector<CuspTableRow> rows = {
      {0, 2, -1, 3, 0, 1, {Cusp::Zero, 0}, 6, 0, -1},
      {0, 4, 1, 3, 0, 2, {Cusp::OneHalf, 1}, 3, 1, 5},
      {0, 6, -5, 1, 1, 1, {Cusp::OneThird, 0}, 2, 0, -5},
      {0, 12, 1, 1, 0, 2, {Cusp::Infinity, 0}, 1, 0, 1},
      {1, 2, -1, 3, 0, 1, {Cusp::Zero, 3}, 6, 3, 11},
      {1, 4, -3, 3, 1, 2, {Cusp::OneHalf, 2}, 3, 5, -7},
      {1, 6, -5, 1, 1, 1, {Cusp::OneThird, 1}, 2, 3, 7},
  };
  return rows;
}

SeparationReport separation_report(std::int64_t n, const EvalContext& ctx, const SeparationOptions& opts) {
  if (n < 1) throw InvalidArgument("separation_report: n must be positive");
  SeparationReport rep;
  rep.n = n;
  rep.D = 1 - 24 * n;
  rep.kappa = opts.kappa;
  const Discriminant disc = Discriminant::of(rep.D);
  const std::vector<QuadForm> forms = enumerate_primitive_reduced(disc);
  const Real kap = Real::from_double(opts.kappa, ctx.prec);
  const double absD = static_cast<double>(-rep.D);
  // |main term| <= e^{pi sqrt|D| / 6}
  const mpfr_prec_t wp = ctx.prec + static_cast<mpfr_prec_t>(M_PI * std::sqrt(absD) / (6 * std::log(2.0))) + 32;

  rep.rows.resize(forms.size());
  parallel_for(forms.size(), [&](std::size_t i) {
    SeparationRow& row = rep.rows[i];
    row.form = forms[i];
    row.cusp = cusp_invariants(forms[i], n);
    row.a_times_h = forms[i].a * row.cusp.width;
    row.M = main_term(n, forms[i].a, row.cusp.width, ctx);
    row.lower = row.M - kap;
    row.upper = row.M + kap;
    row.half_width = atan(kap / row.M);
    row.phi = M_PI * row.cusp.zeta_exponent / 3.0 + M_PI * static_cast<double>(forms[i].b) / static_cast<double>(row.a_times_h);
    row.phi = std::remainder(row.phi, 2 * M_PI);
    if (opts.numeric_check) {
      const EvalContext w = EvalContext::at(wp);
      BigComplex tau = cm_point(forms[i], wp + 16);
      BigComplex value = eval_P(row.cusp.rep.matrix().apply(tau), w);
      const int hq = row.cusp.width;
      const Real p = Real::pi(wp);
      Real v = tau.im();
      BigComplex mi = BigComplex(tau.im() * p * 2 / hq, -(tau.re() * p * 2 / hq));  // -2 pi i tau / h
      BigComplex main = exp(mi) * (Real(1, wp) - Real(hq, wp) / (p * v * 2)) *
                        BigComplex::root_of_unity(row.cusp.zeta_exponent, 6, wp);
      BigComplex diff = value - main;
      row.deviation = static_cast<double>(diff.abs_upper());
    }
  });

  std::vector<const SeparationRow*> twelve, other;
  for (const auto& r : rep.rows) (r.a_times_h == 12 ? twelve : other).push_back(&r);

  rep.min_gap = INFINITY;
  for (const auto* a : twelve)
    for (const auto* b : other) rep.min_gap = std::min(rep.min_gap, std::fabs((a->M - b->M).to_double()));
  rep.magnitude_pass = !twelve.empty() && rep.min_gap > 2 * opts.kappa;

  rep.max_half_width = 0;
  for (const auto* a : twelve) rep.max_half_width = std::max(rep.max_half_width, a->half_width.to_double());
  rep.argument_margin = M_PI / 24 - rep.max_half_width;
  rep.argument_pass = !twelve.empty() && rep.max_half_width <= M_PI / 24;

  rep.table_pass = true;
  const int parity = static_cast<int>(n & 1);
  for (const auto& t : published_cusp_tables()) {
    if (t.parity != parity) continue;
    QuadForm q = t.form_for(n);
    if (!q.is_reduced()) continue;
    auto it = std::find_if(rep.rows.begin(), rep.rows.end(), [&](const SeparationRow& r) { return r.form == q; });
    if (it == rep.rows.end() || !(it->cusp.rep == t.rep) || it->cusp.width != t.width ||
        it->cusp.zeta_exponent != t.zeta_exponent || it->cusp.phi_twelfths != t.phi_twelfths || it->a_times_h != 12) {
      rep.table_pass = false;
      continue;
    }
    it->tabulated = true;
  }
  for (const auto& r : rep.rows)
    if (r.a_times_h == 12 && !r.tabulated) rep.untabulated.push_back(r.form);

  rep.numeric_checked = opts.numeric_check;
  rep.numeric_pass = opts.numeric_check;
  if (opts.numeric_check)
    for (const auto& r : rep.rows)
      if (!(r.deviation && *r.deviation <= opts.kappa)) rep.numeric_pass = false;
  return rep;
}

std::vector<BigComplex> error_grid(mpfr_prec_t prec) {
  std::vector<BigComplex> pts;
  const Real half = Real(1, prec) / 2;
  pts.emplace_back(half, sqrt(Real(3, prec)) / 2);
  pts.emplace_back(Real(0, prec), Real(1, prec));
  pts.push_back(BigComplex::root_of_unity(5, 24, prec));
  pts.emplace_back(Real::from_string("-0.4", prec), Real::from_string("0.95", prec));
  pts.emplace_back(Real::from_string("0.25", prec), Real::from_string("1.2", prec));
  pts.emplace_back(Real::from_string("0.45", prec), Real(2, prec));
  for (const char* v : {"1.5", "3", "6", "10"}) pts.emplace_back(Real(0, prec), Real::from_string(v, prec));
  return pts;
}

std::vector<ErrorSample> empirical_error_grid(const EvalContext& ctx) {
  // e^{2 pi v} with v <= 10 needs about 91 bits of headroom.
  const mpfr_prec_t wp = ctx.prec + 96;
  const EvalContext w = EvalContext::at(wp);
  const std::vector<BigComplex> pts = error_grid(wp + 16);
  const auto& reps = CosetRep::all();
  std::vector<ErrorSample> out(reps.size() * pts.size());
  parallel_for(out.size(), [&](std::size_t k) {
    const CosetRep& rep = reps[k / pts.size()];
    const BigComplex& tau = pts[k % pts.size()];
    const int h = rep.width();
    const Real p = Real::pi(wp);
    BigComplex value = eval_P(rep.matrix().apply(tau), w);
    BigComplex mi = BigComplex(tau.im() * p * 2 / h, -(tau.re() * p * 2 / h));
    BigComplex main = exp(mi) * (Real(1, wp) - Real(h, wp) / (p * tau.im() * 2)) *
                      BigComplex::root_of_unity(rep.zeta_exponent(), 6, wp);
    BigComplex diff = value - main;
    out[k] = {rep, tau.with_prec(ctx.prec), static_cast<double>(diff.mid_abs()), static_cast<double>(diff.err())};
  });
  return out;
}

}  // namespace partrace
