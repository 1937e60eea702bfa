#pragma once

// Classical modular polynomials Phi_m(x, y), the Taylor coefficients
// beta_{mu,nu} of Phi_{-D} at the diagonal point (j(tau_Q), j(tau_Q)), the
// resulting closed form for C at CM points, and the meromorphic function M_D.

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "partrace/numeric/complex.hpp"
#include "partrace/numeric/context.hpp"
#include "partrace/qforms.hpp"

namespace partrace {

// Number of cosets m prod_{p | m} (1 + 1/p).
std::int64_t psi(std::int64_t m);

struct ModPoly {
  std::int64_t m = 1;
  // (i, j) -> coefficient of x^i y^j; zero entries are not stored.
  std::map<std::pair<int, int>, mpz_class> coeffs;

  mpz_class at(int i, int j) const;
  int degree_x() const;
  int degree_y() const;
  bool is_symmetric() const;
  // Symmetric for m > 1, monic of degree psi(m) in both variables. Throws InvariantViolation.
  void validate() const;
  BigComplex eval(const BigComplex& x, const BigComplex& y) const;

  friend bool operator==(const ModPoly&, const ModPoly&) = default;
};

// prod over the psi(m) cosets [a b; 0 d] of (x - j(M tau)), written as a
// polynomial in x and y = j(tau). Computed exactly: each coefficient is found
// modulo a sequence of primes by q-expansion and leading-term elimination, and
// the results are combined by the Chinese remainder theorem until they stop
// changing. Throws InvalidArgument for m outside [1, 60] and InternalError if
// an elimination residual does not vanish.
ModPoly modular_polynomial(std::int64_t m);

// As modular_polynomial, but using only primes below `prime_ceiling`; lets two
// disjoint prime sets be compared.
ModPoly modular_polynomial(std::int64_t m, std::uint64_t prime_ceiling);

// Line format: "m = <level>" then one "[i,j] <integer>" per nonzero coefficient.
// Entries given only for i >= j are mirrored. Throws ParseError or InvariantViolation.
ModPoly parse_modular_polynomial(const std::string& text);
ModPoly load_modular_polynomial(const std::string& path);
std::string format_modular_polynomial(const ModPoly& phi);
void save_modular_polynomial(const ModPoly& phi, const std::string& path);

// beta_{mu,nu} as integer polynomials in v = j(tau):
// Phi(x, y) = sum beta_{mu,nu}(v) (x - v)^mu (y - v)^nu.
struct BetaPolys {
  std::vector<mpz_class> b00, b10, b01, b11, b02;  // ascending in v
};
BetaPolys beta_polynomials(const ModPoly& phi);

struct BetaSet {
  BigComplex beta00, beta10, beta01, beta11, beta02;
};

// Values at v = jQ. Throws PoleProximity if |beta01| < 2^(-prec/2).
BetaSet beta_values(const ModPoly& phi, const BigComplex& jQ, const EvalContext& ctx);

// D = -3 d^2 for some integer d.
bool is_special_discriminant(std::int64_t D);

// (2 beta02 - beta11) / beta10 at tau_Q; requires phi.m == |disc(Q)|.
// Throws InvalidArgument for special discriminants.
BigComplex masser_C(const QuadForm& q, const ModPoly& phi, const EvalContext& ctx);

// A + B (2 beta02 - beta11) / beta10 with the betas taken at j(tau).
BigComplex eval_MD(const Discriminant& disc, const BigComplex& tau, const ModPoly& phi, const EvalContext& ctx);

}  // namespace partrace
