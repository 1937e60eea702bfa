#pragma once

// Thin RAII value type over an MPFR floating-point number.
//
// Every Real carries its own precision. Binary operations produce a result
// at the larger of the two operand precisions, rounded to nearest.

#include <mpfr.h>
#include <gmpxx.h>

#include <compare>
#include <string>

namespace partrace {

class Real {
 public:
  explicit Real(mpfr_prec_t prec = 64);
  Real(long value, mpfr_prec_t prec);
  Real(const mpz_class& value, mpfr_prec_t prec);
  Real(const mpq_class& value, mpfr_prec_t prec);

  static Real from_double(double value, mpfr_prec_t prec);
  static Real from_string(const std::string& text, mpfr_prec_t prec);
  static Real pi(mpfr_prec_t prec);
  static Real log2(mpfr_prec_t prec);

  Real(const Real& other);
  Real(Real&& other) noexcept;
  Real& operator=(const Real& other);
  Real& operator=(Real&& other) noexcept;
  ~Real();

  mpfr_prec_t prec() const { return mpfr_get_prec(v_); }
  // Changes precision in place, rounding the current value.
  void set_prec(mpfr_prec_t prec);
  Real with_prec(mpfr_prec_t prec) const;

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  long double to_long_double() const { return mpfr_get_ld(v_, MPFR_RNDN); }
  // Nearest integer (ties away from zero).
  mpz_class round() const;
  mpz_class floor() const;
  std::string to_string(int digits = 20) const;

  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }
  // Binary exponent e with 2^(e-1) <= |x| < 2^e; very negative for zero.
  long exponent() const;

  Real& operator+=(const Real& o);
  Real& operator-=(const Real& o);
  Real& operator*=(const Real& o);
  Real& operator/=(const Real& o);
  Real& operator+=(long o);
  Real& operator-=(long o);
  Real& operator*=(long o);
  Real& operator/=(long o);

  Real operator-() const;

  friend Real operator+(Real a, const Real& b) { return a += b; }
  friend Real operator-(Real a, const Real& b) { return a -= b; }
  friend Real operator*(Real a, const Real& b) { return a *= b; }
  friend Real operator/(Real a, const Real& b) { return a /= b; }
  friend Real operator+(Real a, long b) { return a += b; }
  friend Real operator-(Real a, long b) { return a -= b; }
  friend Real operator*(Real a, long b) { return a *= b; }
  friend Real operator/(Real a, long b) { return a /= b; }
  friend Real operator*(long a, Real b) { return b *= a; }

  friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
  friend std::partial_ordering operator<=>(const Real& a, const Real& b);
  friend bool operator<(const Real& a, long b) { return mpfr_cmp_si(a.v_, b) < 0; }
  friend bool operator>(const Real& a, long b) { return mpfr_cmp_si(a.v_, b) > 0; }

 private:
  mpfr_t v_;
};

Real abs(const Real& x);
Real sqrt(const Real& x);
Real exp(const Real& x);
Real log(const Real& x);
Real sin(const Real& x);
Real cos(const Real& x);
Real sinh(const Real& x);
Real cosh(const Real& x);
Real atan(const Real& x);
Real atan2(const Real& y, const Real& x);
Real pow(const Real& x, const Real& y);
Real pow(const Real& x, long n);
Real hypot(const Real& x, const Real& y);
Real max(const Real& a, const Real& b);

// Precision in bits needed to carry `digits` decimal digits.
inline mpfr_prec_t bits_for_digits(double digits) {
  return static_cast<mpfr_prec_t>(digits * 3.3219280948873623) + 1;
}

}  // namespace partrace
