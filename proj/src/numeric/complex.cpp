#include "partrace/numeric/complex.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>

namespace partrace {

namespace {

constexpr Radius kInf = std::numeric_limits<Radius>::infinity();

Radius mag(const Real& x) { return std::fabs(x.to_long_double()); }

}  // namespace

Radius ulp_scale(mpfr_prec_t prec) { return std::ldexp(Radius{1}, -static_cast<int>(prec)); }

BigComplex::BigComplex(mpfr_prec_t prec) : re_(prec), im_(prec) {}

BigComplex::BigComplex(Real re, Real im, Radius err)
    : re_(std::move(re)), im_(std::move(im)), err_(err) {
  if (im_.prec() > re_.prec()) re_.set_prec(im_.prec());
  if (re_.prec() > im_.prec()) im_.set_prec(re_.prec());
}

BigComplex::BigComplex(long re, mpfr_prec_t prec) : re_(re, prec), im_(prec) {}

BigComplex::BigComplex(const mpz_class& re, mpfr_prec_t prec) : re_(re, prec), im_(prec) {
  if (re_.exponent() > prec) err_ = mag(re_) * ulp_scale(prec);
}

BigComplex::BigComplex(const mpq_class& re, mpfr_prec_t prec) : re_(re, prec), im_(prec) {
  err_ = mag(re_) * ulp_scale(prec);
}

BigComplex BigComplex::from_real(Real re, Radius err) {
  Real im(re.prec());
  return BigComplex(std::move(re), std::move(im), err);
}

BigComplex BigComplex::from_doubles(double re, double im, mpfr_prec_t prec) {
  return BigComplex(Real::from_double(re, prec), Real::from_double(im, prec));
}

BigComplex BigComplex::expi(const Real& theta) {
  BigComplex r(cos(theta), sin(theta));
  r.err_ = 4 * ulp_scale(theta.prec());
  return r;
}

BigComplex BigComplex::root_of_unity(long num, long den, mpfr_prec_t prec) {
  long g = std::gcd(num, den);
  num /= g;
  den /= g;
  if (den < 0) {
    num = -num;
    den = -den;
  }
  num %= den;
  if (num < 0) num += den;
  if (num == 0) return BigComplex(1, prec);
  if (2 * num == den) return BigComplex(-1, prec);
  if (4 * num == den) return BigComplex(Real(prec), Real(1, prec));
  if (4 * num == 3 * den) return BigComplex(Real(prec), Real(-1, prec));
  Real theta = Real::pi(prec + 8) * (2 * num);
  theta /= den;
  BigComplex r = expi(theta);
  r.re_.set_prec(prec);
  r.im_.set_prec(prec);
  r.err_ = 4 * ulp_scale(prec);
  return r;
}

BigComplex BigComplex::i(mpfr_prec_t prec) { return BigComplex(Real(prec), Real(1, prec)); }

BigComplex BigComplex::with_prec(mpfr_prec_t prec) const {
  BigComplex r(re_.with_prec(prec), im_.with_prec(prec), err_);
  if (prec < re_.prec()) r.add_rounding();
  return r;
}

bool BigComplex::finite() const {
  return std::isfinite(err_) && mpfr_number_p(re_.get()) && mpfr_number_p(im_.get());
}

Radius BigComplex::mid_abs() const {
  Radius a = mag(re_), b = mag(im_);
  return std::hypot(a, b);
}

Radius BigComplex::abs_lower() const {
  Radius m = mid_abs() - err_;
  return m > 0 ? m : 0;
}

Real BigComplex::abs() const { return hypot(re_, im_); }

Real BigComplex::arg() const { return atan2(im_, re_); }

std::complex<double> BigComplex::to_cdouble() const { return {re_.to_double(), im_.to_double()}; }

bool BigComplex::overlaps(const BigComplex& other, Radius slack) const {
  BigComplex d = *this - other;
  return d.mid_abs() <= err_ + other.err_ + slack + 8 * d.mid_abs() * ulp_scale(prec());
}

BigComplex BigComplex::conj() const { return BigComplex(re_, -im_, err_); }

BigComplex BigComplex::operator-() const { return BigComplex(-re_, -im_, err_); }

void BigComplex::add_rounding() { err_ += (mag(re_) + mag(im_)) * 4 * ulp_scale(prec()); }

BigComplex& BigComplex::operator+=(const BigComplex& o) {
  re_ += o.re_;
  im_ += o.im_;
  err_ += o.err_;
  add_rounding();
  return *this;
}

BigComplex& BigComplex::operator-=(const BigComplex& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  err_ += o.err_;
  add_rounding();
  return *this;
}

BigComplex& BigComplex::operator*=(const BigComplex& o) {
  Radius a = mid_abs(), b = o.mid_abs();
  Radius prop = a * o.err_ + b * err_ + err_ * o.err_;
  Real rr = re_ * o.re_;
  rr -= im_ * o.im_;
  Real ii = re_ * o.im_;
  ii += im_ * o.re_;
  re_ = std::move(rr);
  im_ = std::move(ii);
  err_ = prop + a * b * 8 * ulp_scale(prec());
  add_rounding();
  return *this;
}

BigComplex& BigComplex::operator/=(const BigComplex& o) {
  Radius a = mid_abs(), b = o.mid_abs();
  Radius prop;
  if (!(o.err_ < b)) {
    prop = kInf;
  } else {
    prop = (err_ + (a / b) * o.err_) / (b - o.err_);
  }
  Real den = o.re_ * o.re_;
  den += o.im_ * o.im_;
  Real rr = re_ * o.re_;
  rr += im_ * o.im_;
  Real ii = im_ * o.re_;
  ii -= re_ * o.im_;
  rr /= den;
  ii /= den;
  re_ = std::move(rr);
  im_ = std::move(ii);
  err_ = prop + (b > 0 ? a / b : kInf) * 8 * ulp_scale(prec());
  add_rounding();
  return *this;
}

BigComplex& BigComplex::operator*=(const Real& o) {
  Radius b = mag(o);
  re_ *= o;
  im_ *= o;
  err_ *= b;
  add_rounding();
  return *this;
}

BigComplex& BigComplex::operator/=(const Real& o) {
  Radius b = mag(o);
  re_ /= o;
  im_ /= o;
  err_ /= b;
  add_rounding();
  return *this;
}

BigComplex& BigComplex::operator+=(long o) {
  re_ += o;
  add_rounding();
  return *this;
}

BigComplex& BigComplex::operator*=(long o) {
  re_ *= o;
  im_ *= o;
  err_ *= std::fabs(static_cast<Radius>(o));
  add_rounding();
  return *this;
}

BigComplex& BigComplex::operator/=(long o) {
  re_ /= o;
  im_ /= o;
  err_ /= std::fabs(static_cast<Radius>(o));
  add_rounding();
  return *this;
}

BigComplex exp(const BigComplex& z) {
  Real m = exp(z.re());
  BigComplex r(m * cos(z.im()), m * sin(z.im()));
  Radius a = r.mid_abs();
  Radius e = z.err();
  Radius prop = e > 0 ? a * std::expm1(e) : 0;
  // exp amplifies the absolute error of the argument by up to |Re z| ulps.
  Radius cond = (std::fabs(z.re().to_long_double()) + std::fabs(z.im().to_long_double()) + 4) *
                a * ulp_scale(z.prec());
  r.set_error(prop + cond);
  return r;
}

BigComplex sqrt(const BigComplex& z) {
  mpfr_prec_t prec = z.prec();
  Real modulus = z.abs();
  Real re(prec), im(prec);
  if (modulus.is_zero()) {
    BigComplex r(prec);
    r.set_error(std::sqrt(z.err()));
    return r;
  }
  if (z.re().sign() >= 0) {
    Real t = sqrt((modulus + z.re()) / 2);
    re = t;
    im = z.im() / (2 * t);
  } else {
    Real t = sqrt((modulus - z.re()) / 2);
    re = abs(z.im()) / (2 * t);
    im = z.im().sign() < 0 ? -t : t;
  }
  BigComplex r(std::move(re), std::move(im));
  Radius m = z.mid_abs();
  Radius prop;
  if (z.err() == 0) {
    prop = 0;
  } else if (z.err() < m) {
    prop = z.err() / std::sqrt(m - z.err());
  } else {
    prop = std::sqrt(2 * z.err());
  }
  r.set_error(prop + 8 * std::sqrt(m) * ulp_scale(prec));
  return r;
}

BigComplex pow(const BigComplex& z, long n) {
  if (n < 0) return inv(pow(z, -n));
  BigComplex result(1, z.prec());
  BigComplex base = z;
  while (n > 0) {
    if (n & 1) result *= base;
    n >>= 1;
    if (n) base *= base;
  }
  return result;
}

BigComplex inv(const BigComplex& z) {
  BigComplex one(1, z.prec());
  return one / z;
}

BigComplex ldexp(const BigComplex& z, long k) {
  Real re = z.re(), im = z.im();
  mpfr_mul_2si(re.get(), re.get(), k, MPFR_RNDN);
  mpfr_mul_2si(im.get(), im.get(), k, MPFR_RNDN);
  return BigComplex(std::move(re), std::move(im), std::ldexp(z.err(), static_cast<int>(k)));
}

std::ostream& operator<<(std::ostream& os, const BigComplex& z) {
  return os << "(" << z.re().to_string(25) << " + " << z.im().to_string(25) << "i +/- "
            << static_cast<double>(z.err()) << ")";
}

}  // namespace partrace
