#pragma once

#include <cmath>
#include <random>
#include <string>

#include "partrace/numeric/complex.hpp"
#include "partrace/numeric/context.hpp"
#include "partrace/qforms.hpp"

namespace partrace::testing {

inline BigComplex cx(double re, double im, mpfr_prec_t prec) { return BigComplex::from_doubles(re, im, prec); }

inline BigComplex cx(const std::string& re, const std::string& im, mpfr_prec_t prec) {
  return BigComplex(Real::from_string(re, prec), Real::from_string(im, prec));
}

// |a - b| <= err(a) + err(b) + slack.
inline bool agree(const BigComplex& a, const BigComplex& b, long double slack = 0) { return a.overlaps(b, slack); }

inline long double distance(const BigComplex& a, const BigComplex& b) { return (a - b).mid_abs(); }

inline std::mt19937_64& rng() {
  static std::mt19937_64 g(20240611);
  return g;
}

inline double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng()); }
inline long uniform_int(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng()); }

// Product of generators T^k and [1 0; 6 1]^l of Gamma_0(6).
inline UnimodularMatrix random_gamma0_6(int factors = 4) {
  UnimodularMatrix g;
  for (int i = 0; i < factors; ++i) {
    long k = uniform_int(-2, 2);
    long l = uniform_int(-1, 1);
    g = g * UnimodularMatrix::T(k) * UnimodularMatrix(1, 0, 6 * l, 1);
  }
  return g;
}

inline UnimodularMatrix random_sl2(int factors = 4) {
  UnimodularMatrix g;
  for (int i = 0; i < factors; ++i) g = g * UnimodularMatrix::T(uniform_int(-3, 3)) * UnimodularMatrix::S();
  return g;
}

}  // namespace partrace::testing
