#pragma once

// Arbitrary-precision complex number with an attached absolute error bound.
//
// The true value lies within err() of the midpoint (re(), im()). Every
// arithmetic operation adds the propagated input uncertainty plus a rounding
// term at the working precision, so bounds stay conservative through long
// computations. Division by a ball that contains zero yields an infinite
// radius rather than throwing; callers decide how to report it.

#include <complex>
#include <iosfwd>

#include "partrace/numeric/real.hpp"

namespace partrace {

using Radius = long double;

class BigComplex {
 public:
  explicit BigComplex(mpfr_prec_t prec = 64);
  BigComplex(Real re, Real im, Radius err = 0);
  BigComplex(long re, mpfr_prec_t prec);
  BigComplex(const mpz_class& re, mpfr_prec_t prec);
  BigComplex(const mpq_class& re, mpfr_prec_t prec);

  static BigComplex from_real(Real re, Radius err = 0);
  static BigComplex from_doubles(double re, double im, mpfr_prec_t prec);
  // exp(i*theta) for real theta.
  static BigComplex expi(const Real& theta);
  // exp(2*pi*i*num/den), computed from the reduced fraction.
  static BigComplex root_of_unity(long num, long den, mpfr_prec_t prec);
  static BigComplex i(mpfr_prec_t prec);

  const Real& re() const { return re_; }
  const Real& im() const { return im_; }
  Radius err() const { return err_; }
  void add_error(Radius e) { err_ += e; }
  void set_error(Radius e) { err_ = e; }
  mpfr_prec_t prec() const { return re_.prec(); }
  BigComplex with_prec(mpfr_prec_t prec) const;

  bool finite() const;
  // |midpoint| as a long double.
  Radius mid_abs() const;
  Radius abs_upper() const { return mid_abs() + err_; }
  Radius abs_lower() const;
  Real abs() const;
  Real arg() const;
  std::complex<double> to_cdouble() const;
  bool contains_zero() const { return abs_lower() <= 0; }
  // Distance between midpoints does not exceed the sum of radii plus `slack`.
  bool overlaps(const BigComplex& other, Radius slack = 0) const;

  BigComplex conj() const;
  BigComplex operator-() const;

  BigComplex& operator+=(const BigComplex& o);
  BigComplex& operator-=(const BigComplex& o);
  BigComplex& operator*=(const BigComplex& o);
  BigComplex& operator/=(const BigComplex& o);
  BigComplex& operator*=(const Real& o);
  BigComplex& operator/=(const Real& o);
  BigComplex& operator+=(long o);
  BigComplex& operator*=(long o);
  BigComplex& operator/=(long o);

  friend BigComplex operator+(BigComplex a, const BigComplex& b) { return a += b; }
  friend BigComplex operator-(BigComplex a, const BigComplex& b) { return a -= b; }
  friend BigComplex operator*(BigComplex a, const BigComplex& b) { return a *= b; }
  friend BigComplex operator/(BigComplex a, const BigComplex& b) { return a /= b; }
  friend BigComplex operator*(BigComplex a, const Real& b) { return a *= b; }
  friend BigComplex operator*(const Real& b, BigComplex a) { return a *= b; }
  friend BigComplex operator/(BigComplex a, const Real& b) { return a /= b; }
  friend BigComplex operator+(BigComplex a, long b) { return a += b; }
  friend BigComplex operator-(BigComplex a, long b) { return a += -b; }
  friend BigComplex operator*(BigComplex a, long b) { return a *= b; }
  friend BigComplex operator*(long b, BigComplex a) { return a *= b; }
  friend BigComplex operator/(BigComplex a, long b) { return a /= b; }

 private:
  void add_rounding();

  Real re_;
  Real im_;
  Radius err_ = 0;
};

BigComplex exp(const BigComplex& z);
// Principal branch; the bound assumes z stays away from the negative axis.
BigComplex sqrt(const BigComplex& z);
BigComplex pow(const BigComplex& z, long n);
BigComplex inv(const BigComplex& z);
// z * 2^k exactly.
BigComplex ldexp(const BigComplex& z, long k);

// 2^(-prec) as a Radius.
Radius ulp_scale(mpfr_prec_t prec);

std::ostream& operator<<(std::ostream& os, const BigComplex& z);

}  // namespace partrace
