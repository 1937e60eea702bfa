#pragma once

// The trace of P over Heegner points of discriminant D = 1 - 24n, which equals
// (24n - 1) p(n), and the polynomials whose roots are those singular moduli.

#include <cstdint>
#include <vector>

#include <gmpxx.h>

#include "partrace/numeric/complex.hpp"
#include "partrace/numeric/context.hpp"
#include "partrace/polyops.hpp"
#include "partrace/qforms.hpp"

namespace partrace {

// A form of discriminant D with 6 | a and b = 1 (mod 12), written as f * primitive.
struct HeegnerForm {
  QuadForm form;
  std::int64_t conductor = 1;  // f
  QuadForm primitive;          // form / f
  CosetRep rep;                // coset of the reduced form of `primitive`
};

// One representative per Gamma_0(6) class: for each f with f^2 | D, the primitive
// classes of D / f^2 normalized to b = f (mod 12), then scaled by f.
std::vector<HeegnerForm> heegner_forms(std::int64_t n);

struct FormValue {
  HeegnerForm form;
  BigComplex value;
};

struct TraceResult {
  std::int64_t n = 0;
  std::int64_t D = 0;
  BigComplex value;
  mpz_class p;
  // |value / (24n - 1) - p| plus the propagated error bound.
  double residual = 1;
  mpfr_prec_t prec = 0;
  std::vector<FormValue> per_form;
};

// Sum of P over heegner_forms(n). Throws PrecisionExhausted if the residual reaches 0.5.
TraceResult trace_P(std::int64_t n, const EvalContext& ctx);
// trace_P with doubling precision until the residual is below 1e-6.
TraceResult trace_P_converged(std::int64_t n, mpfr_prec_t max_prec = 1 << 14);
mpz_class partition_bo(std::int64_t n);

// ceil(pi sqrt|D| / (6 ln 2)) + 10 h(D) + 64.
mpfr_prec_t hhat_precision(std::int64_t n);

// prod over the primitive classes of (y - (24n - 1) P(tau_Q)), an integer polynomial.
struct ScaledHhat {
  std::int64_t n = 0;
  std::int64_t D = 0;
  std::int64_t h = 0;
  // Coefficients in y = (24n - 1) x.
  IntPoly poly;
  mpfr_prec_t prec = 0;
  // Worst distance to an integer at `prec` and at the +64-bit confirmation pass.
  double distance = 0;
  double confirm_distance = 0;

  // The monic rational polynomial in x.
  RatPoly unscaled() const;
};

// Throws PrecisionExhausted if recognition keeps failing up to max_prec.
ScaledHhat build_Hhat(std::int64_t n, const EvalContext& ctx, mpfr_prec_t max_prec = 1 << 14);

// +1 if f = +-1 (mod 12), else -1.
int epsilon(std::int64_t f);

struct HFactor {
  std::int64_t conductor = 1;
  int sign = 1;  // epsilon(f)
  ScaledHhat hhat;
};

struct AssembledH {
  std::int64_t n = 0;
  std::int64_t D = 0;
  std::vector<HFactor> factors;
  // prod_f eps(f)^h(D/f^2) Hhat_{D/f^2}(eps(f) x).
  RatPoly H;
  // prod over heegner_forms of (x - P(tau_Q)), recognized with scales |D|^k.
  RatPoly direct;
  // max over coefficients of |assembled - numerical| / (error bound of the numerical value); at most 1.
  double numeric_ratio = 0;
  bool exact_match = false;
};

// Throws InvariantViolation when the two constructions disagree.
AssembledH assemble_H(std::int64_t n, const EvalContext& ctx);

// Coefficients (leading first) of prod (x - r_i).
std::vector<BigComplex> expand_roots(const std::vector<BigComplex>& roots);

}  // namespace partrace
