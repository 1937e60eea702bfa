#pragma once

// Positive definite binary quadratic forms [a, b, c] = a x^2 + b x y + c y^2,
// their reduction theory, and the Gamma_0(6) bookkeeping used by the trace
// formula: the twelve coset representatives of SL2(Z)/Gamma_0(6), the
// assignment of a reduced form to its representative, and the cusp data
// (width, leading root of unity, argument of the main term).

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "partrace/numeric/complex.hpp"

namespace partrace {

struct UnimodularMatrix {
  std::int64_t p = 1, q = 0, r = 0, s = 1;

  UnimodularMatrix() = default;
  // Throws InvalidArgument unless p*s - q*r == 1.
  UnimodularMatrix(std::int64_t p, std::int64_t q, std::int64_t r, std::int64_t s);

  static UnimodularMatrix identity() { return {}; }
  static UnimodularMatrix T(std::int64_t k = 1) { return {1, k, 0, 1}; }
  static UnimodularMatrix S() { return {0, -1, 1, 0}; }

  UnimodularMatrix inverse() const { return {s, -q, -r, p}; }
  // Mobius action tau -> (p tau + q) / (r tau + s).
  BigComplex apply(const BigComplex& tau) const;
  // r * tau + s.
  BigComplex automorphy(const BigComplex& tau) const;

  friend UnimodularMatrix operator*(const UnimodularMatrix& x, const UnimodularMatrix& y);
  friend bool operator==(const UnimodularMatrix&, const UnimodularMatrix&) = default;
  // Equal as elements of PSL2(Z).
  bool projectively_equal(const UnimodularMatrix& o) const;
};

std::ostream& operator<<(std::ostream& os, const UnimodularMatrix& m);

struct QuadForm {
  std::int64_t a = 1, b = 0, c = 1;

  std::int64_t discriminant() const { return b * b - 4 * a * c; }
  std::int64_t content() const;
  bool is_primitive() const { return content() == 1; }
  bool is_reduced() const;
  // Q o M, i.e. (x, y) -> Q(p x + q y, r x + s y).
  QuadForm compose(const UnimodularMatrix& m) const;
  QuadForm scaled(std::int64_t f) const { return {f * a, f * b, f * c}; }
  // Q(x, y) at integers.
  std::int64_t operator()(std::int64_t x, std::int64_t y) const { return a * x * x + b * x * y + c * y * y; }
  std::string to_string() const;

  friend auto operator<=>(const QuadForm&, const QuadForm&) = default;
};

std::ostream& operator<<(std::ostream& os, const QuadForm& q);

// D = t^2 d with d fundamental; the partition case has D = 1 - 24 n.
struct Discriminant {
  std::int64_t D = -3;
  std::int64_t t = 1;
  std::int64_t d = -3;

  // Throws InvalidArgument unless D < 0 and D = 0, 1 mod 4.
  static Discriminant of(std::int64_t D);
  static Discriminant for_partition(std::int64_t n);
  bool is_partition() const { return D < 0 && (1 - D) % 24 == 0; }
  std::int64_t partition_index() const { return (1 - D) / 24; }
};

std::int64_t discriminant(const QuadForm& q);

struct Reduction {
  QuadForm form;
  // Q o M^{-1} = form, hence M tau_Q = tau_form lies in the fundamental domain.
  UnimodularMatrix matrix;
};

// Gauss reduction to |b| <= a <= c with b >= 0 whenever |b| == a or a == c.
Reduction reduce(const QuadForm& q);

// Reduced primitive forms of discriminant D, sorted by (a, b).
std::vector<QuadForm> enumerate_primitive_reduced(const Discriminant& disc);
std::int64_t class_number(const Discriminant& disc);
std::int64_t class_number(std::int64_t D);

enum class Cusp { Infinity, OneThird, OneHalf, Zero };

// One of the twelve right coset representatives of SL2(Z)/Gamma_0(6):
//   gamma_inf = I, gamma_{1/3,r} = [1 0; 3 1] T^r (r < 2),
//   gamma_{1/2,s} = [1 1; 2 3] T^s (s < 3), gamma_{0,t} = S T^t (t < 6).
struct CosetRep {
  Cusp cusp = Cusp::Infinity;
  int index = 0;

  UnimodularMatrix matrix() const;
  // Width of the cusp gamma(infinity): 1, 2, 3 or 6.
  int width() const;
  // Exponent e with F|_{-2} gamma = width * zeta_6^e q^{-1/width} + O(1).
  int zeta_exponent() const;
  std::string label() const;

  static const std::array<CosetRep, 12>& all();
  friend bool operator==(const CosetRep&, const CosetRep&) = default;
};

struct CosetAssignment {
  CosetRep rep;
  // Q o rep^{-1}: 6 | a and b = beta mod 12.
  QuadForm form;
};

// The unique representative gamma with Q o gamma^{-1} having 6 | a and
// b = beta (mod 12). Requires gcd(disc, 6) == 1 and beta in {1, 5, 7, 11}.
CosetAssignment coset_assign(const QuadForm& q, int beta = 1);

struct HeegnerRep {
  QuadForm reduced;
  CosetRep rep;
  QuadForm form;
};

// One entry per SL2(Z) class of primitive forms of discriminant D, each
// carried to a Gamma_0(6) representative with 6 | a, b = beta (mod 12) and
// gcd(c, 6) = 1; `form` is Q o rep^{-1} o T^k for a small translation k.
std::vector<HeegnerRep> gamma06_representatives(const Discriminant& disc, int beta = 1);

// Class representatives with gcd(c_j, N) = 1 and all b_j congruent mod N.
std::vector<QuadForm> n_system(const Discriminant& disc, std::int64_t N);
// True when `forms` is an N-system mod t for `disc`.
bool is_n_system(const std::vector<QuadForm>& forms, const Discriminant& disc, std::int64_t N);

// Root of Q(tau, 1) = 0 in the upper half-plane.
BigComplex cm_point(const QuadForm& q, mpfr_prec_t prec);

struct CuspData {
  CosetRep rep;
  int width = 1;
  int zeta_exponent = 0;
  // phi_Q = arg(zeta_Q) + b pi / 12 as an integer multiple of pi/12 in (-12, 12].
  int phi_twelfths = 0;

  mpq_class phi_over_pi() const;
};

CuspData cusp_invariants(const QuadForm& q, std::int64_t n);

}  // namespace partrace
