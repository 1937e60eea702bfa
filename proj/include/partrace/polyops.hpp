#pragma once

// Exact polynomials over Z and Q, recognition of integer coefficients from
// numerical approximations, and irreducibility certificates over Q.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "partrace/numeric/complex.hpp"

namespace partrace {

// Dense polynomial with integer coefficients, stored from the constant term up.
class IntPoly {
 public:
  IntPoly() = default;
  explicit IntPoly(std::vector<mpz_class> ascending);
  static IntPoly from_descending(std::vector<mpz_class> descending);
  static IntPoly monomial(const mpz_class& c, std::size_t degree);
  static IntPoly constant(const mpz_class& c) { return monomial(c, 0); }

  // -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  // Coefficient of x^i; zero past the degree.
  mpz_class operator[](std::size_t i) const { return i < c_.size() ? c_[i] : mpz_class(0); }
  const std::vector<mpz_class>& ascending() const { return c_; }
  std::vector<mpz_class> descending() const;
  const mpz_class& leading() const;

  mpz_class content() const;
  // Content removed, leading coefficient positive.
  IntPoly primitive_part() const;
  IntPoly derivative() const;
  // f(c x).
  IntPoly scale_variable(const mpz_class& c) const;
  mpz_class operator()(const mpz_class& x) const;
  // Largest |coefficient|.
  mpz_class height() const;
  std::string to_string(char var = 'x') const;

  friend IntPoly operator+(const IntPoly& a, const IntPoly& b);
  friend IntPoly operator-(const IntPoly& a, const IntPoly& b);
  friend IntPoly operator*(const IntPoly& a, const IntPoly& b);
  friend IntPoly operator*(const mpz_class& k, const IntPoly& a);
  IntPoly operator-() const;
  friend bool operator==(const IntPoly&, const IntPoly&) = default;

 private:
  void trim();
  std::vector<mpz_class> c_;
};

std::ostream& operator<<(std::ostream& os, const IntPoly& f);

IntPoly pow(const IntPoly& f, unsigned e);
// True when g divides f in Z[x]; the quotient is stored if requested.
bool divides(const IntPoly& g, const IntPoly& f, IntPoly* quotient = nullptr);
// Primitive gcd with positive leading coefficient.
IntPoly gcd(const IntPoly& a, const IntPoly& b);

// Dense polynomial with rational coefficients.
class RatPoly {
 public:
  RatPoly() = default;
  explicit RatPoly(std::vector<mpq_class> ascending);
  explicit RatPoly(const IntPoly& f);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  mpq_class operator[](std::size_t i) const { return i < c_.size() ? c_[i] : mpq_class(0); }
  const std::vector<mpq_class>& ascending() const { return c_; }
  const mpq_class& leading() const;
  RatPoly monic() const;
  RatPoly derivative() const;
  // f(c x).
  RatPoly scale_variable(const mpq_class& c) const;
  // Least common denominator times f, as an integer polynomial.
  IntPoly clear_denominators() const;
  std::string to_string(char var = 'x') const;

  friend RatPoly operator+(const RatPoly& a, const RatPoly& b);
  friend RatPoly operator-(const RatPoly& a, const RatPoly& b);
  friend RatPoly operator*(const RatPoly& a, const RatPoly& b);
  friend RatPoly operator*(const mpq_class& k, const RatPoly& a);
  friend bool operator==(const RatPoly&, const RatPoly&) = default;

 private:
  void trim();
  std::vector<mpq_class> c_;
};

std::ostream& operator<<(std::ostream& os, const RatPoly& f);

// Division with remainder over Q.
void divmod(const RatPoly& f, const RatPoly& g, RatPoly& quotient, RatPoly& remainder);
// Monic gcd over Q.
RatPoly gcd(const RatPoly& a, const RatPoly& b);

// approx lists coefficients from the leading one down; approx[k] * scales[k]
// must lie within 2^(-32) of an integer (and have imaginary part below that).
// Throws RecognitionFailure carrying the worst index otherwise.
IntPoly recognize_integer_polynomial(const std::vector<BigComplex>& approx, const std::vector<mpz_class>& scales);
// Largest distance to an integer over all scaled coefficients.
double recognition_distance(const std::vector<BigComplex>& approx, const std::vector<mpz_class>& scales);

enum class Verdict { Irreducible, Reducible, Inconclusive };
std::string to_string(Verdict v);

// Degrees of the irreducible factors of f modulo prime.
struct FactorPattern {
  std::uint64_t prime = 0;
  std::vector<int> degrees;
};

struct IrreducibilityCertificate {
  Verdict verdict = Verdict::Inconclusive;
  // "degree", "prime", "degree-intersection", "lifting", "squarefree", "divisor".
  std::string method;
  // Prime with an irreducible reduction, when method == "prime".
  std::uint64_t witness = 0;
  std::vector<FactorPattern> patterns;
  // Proper factor degrees still possible after intersecting all patterns.
  std::vector<int> possible_degrees;
  // Proper factor dividing f exactly, when reducible.
  IntPoly factor;
};

struct IrreducibilityOptions {
  // Number of good primes whose factorization pattern is examined.
  int budget = 12;
  // Primes are taken above this value.
  std::uint64_t prime_start = 60;
  // Cap on recombination subsets tried in the lifting fallback.
  std::uint64_t max_subsets = 1u << 22;
};

IrreducibilityCertificate irreducible_over_Q(const IntPoly& f, const IrreducibilityOptions& opts = {});
// Checks the certificate against f: divides exactly, witness prime really irreducible, and so on.
bool verify_certificate(const IntPoly& f, const IrreducibilityCertificate& cert);

// Distinct-degree factorization pattern of f modulo p; empty if p is bad for f.
FactorPattern factor_pattern_mod(const IntPoly& f, std::uint64_t p);

struct PerfectPower {
  IntPoly base;
  unsigned exponent = 1;
  mpq_class scale;  // f = scale * base^exponent
};

// Square-free decomposition f = c * prod_i a_i^i over Q; entry i-1 holds a_i (primitive, possibly 1).
std::vector<IntPoly> squarefree_decomposition(const IntPoly& f);
PerfectPower perfect_power_structure(const IntPoly& f);

}  // namespace partrace
