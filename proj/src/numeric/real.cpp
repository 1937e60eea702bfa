#include "partrace/numeric/real.hpp"

#include <stdexcept>
#include <vector>

namespace partrace {

namespace {

void widen(mpfr_ptr x, mpfr_prec_t prec) {
  if (prec > mpfr_get_prec(x)) mpfr_prec_round(x, prec, MPFR_RNDN);
}

}  // namespace

Real::Real(mpfr_prec_t prec) {
  mpfr_init2(v_, prec < MPFR_PREC_MIN ? MPFR_PREC_MIN : prec);
  mpfr_set_zero(v_, 1);
}

Real::Real(long value, mpfr_prec_t prec) : Real(prec) { mpfr_set_si(v_, value, MPFR_RNDN); }

Real::Real(const mpz_class& value, mpfr_prec_t prec) : Real(prec) {
  mpfr_set_z(v_, value.get_mpz_t(), MPFR_RNDN);
}

Real::Real(const mpq_class& value, mpfr_prec_t prec) : Real(prec) {
  mpfr_set_q(v_, value.get_mpq_t(), MPFR_RNDN);
}

Real Real::from_double(double value, mpfr_prec_t prec) {
  Real r(prec);
  mpfr_set_d(r.v_, value, MPFR_RNDN);
  return r;
}

Real Real::from_string(const std::string& text, mpfr_prec_t prec) {
  Real r(prec);
  if (mpfr_set_str(r.v_, text.c_str(), 10, MPFR_RNDN) != 0)
    throw std::invalid_argument("not a decimal number: " + text);
  return r;
}

Real Real::pi(mpfr_prec_t prec) {
  Real r(prec);
  mpfr_const_pi(r.v_, MPFR_RNDN);
  return r;
}

Real Real::log2(mpfr_prec_t prec) {
  Real r(prec);
  mpfr_const_log2(r.v_, MPFR_RNDN);
  return r;
}

Real::Real(const Real& other) {
  mpfr_init2(v_, other.prec());
  mpfr_set(v_, other.v_, MPFR_RNDN);
}

Real::Real(Real&& other) noexcept {
  mpfr_init2(v_, MPFR_PREC_MIN);
  mpfr_swap(v_, other.v_);
}

Real& Real::operator=(const Real& other) {
  if (this != &other) {
    mpfr_set_prec(v_, other.prec());
    mpfr_set(v_, other.v_, MPFR_RNDN);
  }
  return *this;
}

Real& Real::operator=(Real&& other) noexcept {
  mpfr_swap(v_, other.v_);
  return *this;
}

Real::~Real() { mpfr_clear(v_); }

void Real::set_prec(mpfr_prec_t prec) { mpfr_prec_round(v_, prec, MPFR_RNDN); }

Real Real::with_prec(mpfr_prec_t prec) const {
  Real r(prec);
  mpfr_set(r.v_, v_, MPFR_RNDN);
  return r;
}

mpz_class Real::round() const {
  mpz_class z;
  Real tmp(prec());
  mpfr_round(tmp.v_, v_);
  mpfr_get_z(z.get_mpz_t(), tmp.v_, MPFR_RNDN);
  return z;
}

mpz_class Real::floor() const {
  mpz_class z;
  mpfr_get_z(z.get_mpz_t(), v_, MPFR_RNDD);
  return z;
}

std::string Real::to_string(int digits) const {
  if (mpfr_zero_p(v_)) return "0";
  std::vector<char> buf(static_cast<std::size_t>(digits) + 64);
  mpfr_snprintf(buf.data(), buf.size(), "%.*Rg", digits, v_);
  return buf.data();
}

long Real::exponent() const {
  if (mpfr_zero_p(v_)) return -(1L << 40);
  return mpfr_get_exp(v_);
}

Real& Real::operator+=(const Real& o) {
  widen(v_, o.prec());
  mpfr_add(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

Real& Real::operator-=(const Real& o) {
  widen(v_, o.prec());
  mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

Real& Real::operator*=(const Real& o) {
  widen(v_, o.prec());
  mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

Real& Real::operator/=(const Real& o) {
  widen(v_, o.prec());
  mpfr_div(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

Real& Real::operator+=(long o) {
  mpfr_add_si(v_, v_, o, MPFR_RNDN);
  return *this;
}

Real& Real::operator-=(long o) {
  mpfr_sub_si(v_, v_, o, MPFR_RNDN);
  return *this;
}

Real& Real::operator*=(long o) {
  mpfr_mul_si(v_, v_, o, MPFR_RNDN);
  return *this;
}

Real& Real::operator/=(long o) {
  mpfr_div_si(v_, v_, o, MPFR_RNDN);
  return *this;
}

Real Real::operator-() const {
  Real r(*this);
  mpfr_neg(r.v_, r.v_, MPFR_RNDN);
  return r;
}

std::partial_ordering operator<=>(const Real& a, const Real& b) {
  if (mpfr_unordered_p(a.v_, b.v_)) return std::partial_ordering::unordered;
  int c = mpfr_cmp(a.v_, b.v_);
  if (c < 0) return std::partial_ordering::less;
  if (c > 0) return std::partial_ordering::greater;
  return std::partial_ordering::equivalent;
}

#define PARTRACE_UNARY(name, fn)          \
  Real name(const Real& x) {              \
    Real r(x.prec());                     \
    fn(r.get(), x.get(), MPFR_RNDN);      \
    return r;                             \
  }

PARTRACE_UNARY(abs, mpfr_abs)
PARTRACE_UNARY(sqrt, mpfr_sqrt)
PARTRACE_UNARY(exp, mpfr_exp)
PARTRACE_UNARY(log, mpfr_log)
PARTRACE_UNARY(sin, mpfr_sin)
PARTRACE_UNARY(cos, mpfr_cos)
PARTRACE_UNARY(sinh, mpfr_sinh)
PARTRACE_UNARY(cosh, mpfr_cosh)
PARTRACE_UNARY(atan, mpfr_atan)

#undef PARTRACE_UNARY

Real atan2(const Real& y, const Real& x) {
  Real r(std::max(x.prec(), y.prec()));
  mpfr_atan2(r.get(), y.get(), x.get(), MPFR_RNDN);
  return r;
}

Real pow(const Real& x, const Real& y) {
  Real r(std::max(x.prec(), y.prec()));
  mpfr_pow(r.get(), x.get(), y.get(), MPFR_RNDN);
  return r;
}

Real pow(const Real& x, long n) {
  Real r(x.prec());
  mpfr_pow_si(r.get(), x.get(), n, MPFR_RNDN);
  return r;
}

Real hypot(const Real& x, const Real& y) {
  Real r(std::max(x.prec(), y.prec()));
  mpfr_hypot(r.get(), x.get(), y.get(), MPFR_RNDN);
  return r;
}

Real max(const Real& a, const Real& b) { return a < b ? b : a; }

}  // namespace partrace
