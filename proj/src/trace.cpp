#include "partrace/trace.hpp"

#include <cmath>
#include <sstream>

#include "partrace/errors.hpp"
#include "partrace/modeval.hpp"
#include "partrace/parallel.hpp"

namespace partrace {

namespace {

std::int64_t disc_of(std::int64_t n) {
  if (n < 1) throw InvalidArgument("n must be positive");
  return 1 - 24 * n;
}

mpfr_prec_t magnitude_bits(std::int64_t D) {
  return static_cast<mpfr_prec_t>(std::ceil(M_PI * std::sqrt(static_cast<double>(-D)) / (6 * std::log(2.0))));
}

std::vector<BigComplex> values_at(const std::vector<HeegnerForm>& forms, const EvalContext& ctx) {
  std::vector<BigComplex> out(forms.size(), BigComplex(ctx.prec));
  parallel_for(forms.size(), [&](std::size_t i) {
    out[i] = eval_P(cm_point(forms[i].primitive, ctx.prec + 16), ctx);
  });
  return out;
}

std::vector<mpz_class> power_scales(std::int64_t base, std::size_t count) {
  std::vector<mpz_class> s(count);
  mpz_class pw = 1;
  for (std::size_t k = 0; k < count; ++k) {
    s[k] = pw;
    pw *= base;
  }
  return s;
}

// Monic rational polynomial in x from integer coefficients in y = scale x.
RatPoly unscale(const IntPoly& poly, std::int64_t scale) {
  const int h = poly.degree();
  std::vector<mpq_class> c(static_cast<std::size_t>(h) + 1);
  mpz_class pw = 1;
  for (int k = h; k >= 0; --k) {
    c[static_cast<std::size_t>(k)] = mpq_class(poly[static_cast<std::size_t>(k)], pw);
    pw *= scale;
  }
  return RatPoly(std::move(c));
}

}  // namespace

std::vector<HeegnerForm> heegner_forms(std::int64_t n) {
  const std::int64_t D = disc_of(n);
  std::vector<HeegnerForm> out;
  for (std::int64_t f = 1; f * f <= -D; ++f) {
    if (D % (f * f) != 0) continue;
    const std::int64_t D0 = D / (f * f);
    for (const auto& h : gamma06_representatives(Discriminant::of(D0), static_cast<int>(f % 12)))
      out.push_back({h.form.scaled(f), f, h.form, h.rep});
  }
  return out;
}

TraceResult trace_P(std::int64_t n, const EvalContext& ctx) {
  TraceResult r;
  r.n = n;
  r.D = disc_of(n);
  r.prec = ctx.prec;
  std::vector<HeegnerForm> forms = heegner_forms(n);
  std::vector<BigComplex> vals = values_at(forms, ctx);
  BigComplex sum(ctx.prec);
  for (std::size_t i = 0; i < forms.size(); ++i) {
    sum += vals[i];
    r.per_form.push_back({forms[i], vals[i]});
  }
  r.value = sum;
  const long scale = -r.D;
  BigComplex q = sum / scale;
  r.p = q.re().round();
  Real dre = q.re() - Real(r.p, ctx.prec);
  r.residual = std::hypot(dre.to_double(), q.im().to_double()) + static_cast<double>(q.err());
  if (!(r.residual < 0.5)) {
    std::ostringstream os;
    os << "trace_P: residual " << r.residual << " at " << ctx.prec << " bits for n = " << n;
    throw PrecisionExhausted(os.str());
  }
  return r;
}

TraceResult trace_P_converged(std::int64_t n, mpfr_prec_t max_prec) {
  mpfr_prec_t prec = std::max<mpfr_prec_t>(128, magnitude_bits(disc_of(n)) + 64);
  for (;;) {
    try {
      TraceResult r = trace_P(n, EvalContext::at(prec));
      if (r.residual < 1e-6) return r;
    } catch (const PrecisionExhausted&) {
    }
    if (prec * 2 > max_prec) throw PrecisionExhausted("trace_P_converged: precision cap reached");
    prec *= 2;
  }
}

mpz_class partition_bo(std::int64_t n) { return trace_P_converged(n).p; }

mpfr_prec_t hhat_precision(std::int64_t n) {
  const std::int64_t D = disc_of(n);
  return magnitude_bits(D) + 10 * static_cast<mpfr_prec_t>(class_number(D)) + 64;
}

std::vector<BigComplex> expand_roots(const std::vector<BigComplex>& roots) {
  const mpfr_prec_t prec = roots.empty() ? 64 : roots.front().prec();
  std::vector<BigComplex> c{BigComplex(1, prec)};
  for (const auto& r : roots) {
    std::vector<BigComplex> next(c.size() + 1, BigComplex(prec));
    for (std::size_t k = 0; k < c.size(); ++k) {
      next[k] += c[k];
      next[k + 1] -= c[k] * r;
    }
    c = std::move(next);
  }
  return c;
}

RatPoly ScaledHhat::unscaled() const { return unscale(poly, -D); }

ScaledHhat build_Hhat(std::int64_t n, const EvalContext& ctx, mpfr_prec_t max_prec) {
  const std::int64_t D = disc_of(n);
  std::vector<HeegnerForm> forms;
  for (const auto& h : gamma06_representatives(Discriminant::of(D), 1)) forms.push_back({h.form, 1, h.form, h.rep});
  const std::vector<mpz_class> scales = power_scales(-D, forms.size() + 1);
  mpfr_prec_t prec = std::max(ctx.prec, hhat_precision(n));
  for (;;) {
    try {
      std::vector<BigComplex> c = expand_roots(values_at(forms, EvalContext::at(prec)));
      IntPoly first = recognize_integer_polynomial(c, scales);
      std::vector<BigComplex> c2 = expand_roots(values_at(forms, EvalContext::at(prec + 64)));
      IntPoly second = recognize_integer_polynomial(c2, scales);
      if (first == second) {
        ScaledHhat out;
        out.n = n;
        out.D = D;
        out.h = static_cast<std::int64_t>(forms.size());
        out.poly = std::move(first);
        out.prec = prec;
        out.distance = recognition_distance(c, scales);
        out.confirm_distance = recognition_distance(c2, scales);
        return out;
      }
    } catch (const RecognitionFailure&) {
    }
    if (prec * 2 > max_prec) throw PrecisionExhausted("build_Hhat: coefficients not recognized within the precision cap");
    prec *= 2;
  }
}

int epsilon(std::int64_t f) {
  std::int64_t r = ((f % 12) + 12) % 12;
  return (r == 1 || r == 11) ? 1 : -1;
}

AssembledH assemble_H(std::int64_t n, const EvalContext& ctx) {
  AssembledH out;
  out.n = n;
  out.D = disc_of(n);
  const std::int64_t D = out.D;

  RatPoly H(std::vector<mpq_class>{1});
  for (std::int64_t f = 1; f * f <= -D; ++f) {
    if (D % (f * f) != 0) continue;
    const std::int64_t n0 = (1 - D / (f * f)) / 24;
    HFactor fac;
    fac.conductor = f;
    fac.sign = epsilon(f);
    fac.hhat = build_Hhat(n0, ctx);
    RatPoly part = fac.hhat.unscaled().scale_variable(fac.sign);
    if (fac.sign < 0 && (fac.hhat.h & 1)) part = mpq_class(-1) * part;
    H = H * part;
    out.factors.push_back(std::move(fac));
  }
  out.H = H;

  std::vector<HeegnerForm> forms = heegner_forms(n);
  const std::vector<mpz_class> scales = power_scales(-D, forms.size() + 1);
  mpfr_prec_t prec = std::max(ctx.prec, magnitude_bits(D) + 10 * static_cast<mpfr_prec_t>(forms.size()) + 64);
  std::vector<BigComplex> c;
  IntPoly scaled;
  for (;;) {
    try {
      c = expand_roots(values_at(forms, EvalContext::at(prec)));
      scaled = recognize_integer_polynomial(c, scales);
      break;
    } catch (const RecognitionFailure&) {
      if (prec > (1 << 14)) throw PrecisionExhausted("assemble_H: direct product not recognized");
      prec *= 2;
    }
  }
  out.direct = unscale(scaled, -D);
  out.exact_match = out.direct == out.H;

  // Numerical comparison of the assembled coefficients with the direct product.
  const int deg = static_cast<int>(forms.size());
  if (H.degree() != deg) throw InvariantViolation("assemble_H: degree mismatch between factorization and Q_D");
  double worst = 0;
  for (int k = 0; k <= deg; ++k) {
    const BigComplex& num = c[static_cast<std::size_t>(k)];  // coefficient of x^(deg - k)
    Real exact(H[static_cast<std::size_t>(deg - k)], num.prec());
    BigComplex diff = num - BigComplex::from_real(exact);
    Radius bound = num.err() + num.mid_abs() * ulp_scale(num.prec()) * 16;
    double ratio = bound > 0 ? static_cast<double>(diff.mid_abs() / bound) : (diff.mid_abs() == 0 ? 0.0 : INFINITY);
    worst = std::max(worst, ratio);
  }
  out.numeric_ratio = worst;
  if (!out.exact_match || !(worst <= 1))
    throw InvariantViolation("assemble_H: factorization does not match the direct product over Q_D");
  return out;
}

}  // namespace partrace
