#pragma once

// Evaluation of the modular building blocks at arbitrary points of the upper
// half-plane: eta, E2, E4, E6, j, the weight -2 form
//
//   F = (E2(t) - 2 E2(2t) - 3 E2(3t) + 6 E2(6t)) / (2 eta(t)^2 eta(2t)^2 eta(3t)^2 eta(6t)^2)
//     = q^-1 - 10 - 29 q - 104 q^2 - ...,
//
// the non-holomorphic weight 0 function P = -(1/2 pi i) dF/dtau - F / (2 pi v),
// and its decomposition P = A + B C with A, B meromorphic modular and C the
// non-holomorphic SL2(Z) invariant.
//
// Every atomic argument is first moved into the fundamental domain, so all
// q-series run with |q| <= exp(-pi sqrt 3).

#include <cstdint>
#include <mutex>
#include <vector>

#include <gmpxx.h>

#include "partrace/numeric/complex.hpp"
#include "partrace/numeric/context.hpp"
#include "partrace/qforms.hpp"

namespace partrace {

enum class Atomic { Eta, E2, E4, E6, J };
enum class Modular { A, B, C, P };

struct FundamentalPoint {
  BigComplex tau;          // gamma * original, in the closed fundamental domain
  UnimodularMatrix gamma;  // normalized so that r > 0, or r == 0 and s == 1
};

// Throws InvalidArgument if Im(tau) <= 0.
FundamentalPoint to_fundamental_domain(const BigComplex& tau);

struct AtomicValues {
  BigComplex eta, E2, E4, E6, j;
};

// All five values from a single reduction.
AtomicValues eval_atomic_all(const BigComplex& tau, const EvalContext& ctx);
BigComplex eval_atomic(Atomic which, const BigComplex& tau, const EvalContext& ctx);

BigComplex eval_F(const BigComplex& tau, const EvalContext& ctx);
// (1/2 pi i) dF/dtau, exact in terms of atomic values.
BigComplex eval_theta_F(const BigComplex& tau, const EvalContext& ctx);

// A, B, C, or P = A + B C. Throws PoleProximity if |E4|, |j| or |j - 1728| < 2^(-prec/2).
BigComplex eval_modular(Modular which, const BigComplex& tau, const EvalContext& ctx);
// P = -theta F - F / (2 pi v) via the atomic values directly; defined at every point.
BigComplex eval_P(const BigComplex& tau, const EvalContext& ctx);
// P from the integer q-expansion of F; requires Im(tau) >= 1.
BigComplex eval_P_qseries(const BigComplex& tau, const EvalContext& ctx);

// Exact coefficients of q F: result[k] is the coefficient of q^(k-1), k < count.
std::vector<mpz_class> F_coefficients(std::size_t count);

// Growth rate of |a_m|: 4 pi / sqrt 6.
double F_growth_rate();
// A with |a_m| <= A exp(growth * sqrt m) for m >= 1: twice the largest ratio seen up to m = 600.
double F_envelope();
// Bound on sum_{m > T} m^power |a_m| exp(-x m); infinite when the terms are still growing at T.
Radius F_tail_bound(std::int64_t T, double x, int power = 0);
// Smallest T with F_tail_bound(T, 2 pi v / width) < 2^(-bits).
std::int64_t F_terms_for(double v, int width, long bits);

// Truncated Puiseux expansion sum_k coeffs[k] q^((start + k) / h) with a tail bound valid for Im(tau) >= vmin.
struct QSeries {
  int h = 1;
  int start = -1;
  std::vector<BigComplex> coeffs;
  Radius tail = 0;
  double vmin = 0.86602540378443864676;

  BigComplex evaluate(const BigComplex& tau) const;
};

// Expansion of F|_{-2} gamma = (c tau + d)^2 F(gamma tau) for one of the twelve coset representatives.
QSeries cusp_expansion_F(const CosetRep& rep, int terms, const EvalContext& ctx);

// Integer matrix of positive determinant.
struct IntMatrix {
  std::int64_t p = 1, q = 0, r = 0, s = 1;

  std::int64_t det() const { return p * s - q * r; }
  BigComplex apply(const BigComplex& tau) const;
  BigComplex automorphy(const BigComplex& tau) const;
  static IntMatrix from(const UnimodularMatrix& m) { return {m.p, m.q, m.r, m.s}; }
};

// Atkin-Lehner involutions of level 6 for d in {2, 3, 6}.
IntMatrix atkin_lehner_matrix(int d);
// det^(-1) (r tau + s)^2 F(M tau).
BigComplex slash_F(const IntMatrix& m, const BigComplex& tau, const EvalContext& ctx);
// Eigenvalue of F under W_d, read off at sample points; throws InternalError if it is not a consistent sign.
int atkin_lehner_sign(int d, const EvalContext& ctx);

}  // namespace partrace
