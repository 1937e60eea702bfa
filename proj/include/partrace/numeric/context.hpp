#pragma once

#include <mpfr.h>

namespace partrace {

// Working precision and truncation policy shared by the evaluators.
struct EvalContext {
  // Working precision in bits; at least 64.
  mpfr_prec_t prec = 128;
  // Number of q-expansion coefficients of F used at width 1 with Im(tau) >= vmin.
  int terms = 0;
  // Lower bound on Im(tau) after reduction to the fundamental domain.
  double vmin = 0.86602540378443864676;

  // Context at `prec` bits with `terms` chosen so the tail at vmin stays below 2^(-prec-10).
  static EvalContext at(mpfr_prec_t prec);
  EvalContext with_extra_bits(mpfr_prec_t extra) const { return at(prec + extra); }
};

}  // namespace partrace
