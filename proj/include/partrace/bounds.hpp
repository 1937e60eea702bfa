#pragma once

// Explicit bounds for the Fourier coefficients of the weight -2 Poincare
// series of level 6, the uniform constant kappa bounding |P|_0 gamma - main term|
// on the fundamental domain, the main-term magnitudes M(n; a, h), and the
// separation argument showing that the a h = 12 singular moduli are simple.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "partrace/numeric/complex.hpp"
#include "partrace/numeric/context.hpp"
#include "partrace/qforms.hpp"

namespace partrace {

// The published value of the uniform constant.
inline constexpr double kKappa = 1334.42;

// Upper bound for |b(l, v)|, the l-th coefficient of the level 6 Poincare series
// of index 1 and weight -2, valid for every v > 0:
//   l = 0:  (2/27) pi^4 zeta(3)
//   l >= 1: 12 pi l^(-3/2) [l^(1/4) / sqrt 3 exp(2 pi sqrt l / 3) + (pi^3 / 81) l^(3/2) zeta(3)]
Real poincare_coeff_bound(std::int64_t l, const EvalContext& ctx);

// b(l, v) from its Kloosterman-Bessel expansion, summing c = 6, 12, ... up to
// max(cmax, 4 pi sqrt|l|). The remaining tail is bounded with |K| <= c and the
// small-argument Bessel bounds and added to the error radius. Requires cmax >= 6, v > 0.
BigComplex exact_poincare_coeff(std::int64_t l, const Real& v, std::int64_t cmax, const EvalContext& ctx);

enum class KappaMethod { SeriesSummed, GeometricMajorized };
std::string to_string(KappaMethod m);

struct KappaComponents {
  Real b0_bound;
  // (2h/3) sum_l l B(l) e^{-pi sqrt3 l / h}
  Real first_series;
  // (2h / (3 pi sqrt 3)) sum_l B(l) e^{-pi sqrt3 l / h}, l >= 1
  Real second_series;
  // (2h / (3 pi sqrt 3)) B(0)
  Real constant_part;
  int h = 6;
};

struct BoundCertificate {
  Real kappa;
  KappaComponents components;
  KappaMethod method = KappaMethod::SeriesSummed;
  // Number of l summed and the size of the last term (series method).
  std::int64_t terms = 0;
  double last_term = 0;
  bool within_published = false;  // kappa <= kKappa
};

// Right-hand side of the E_gamma estimate with v >= sqrt(3)/2 and cusp width h.
// For h = 6 with the series method, throws InvariantViolation if the result exceeds kKappa.
BoundCertificate kappa_certificate(const EvalContext& ctx, int h = 6, KappaMethod method = KappaMethod::SeriesSummed);

// (1 - 2 s / (2 pi sqrt(24n - 1))) exp(2 pi sqrt(24n - 1) / (2 s)) with s = a hQ.
// Throws InvalidArgument unless n >= 1 and 6 | s.
Real main_term(std::int64_t n, std::int64_t a, std::int64_t hQ, const EvalContext& ctx);

// One row of the published tables of a h = 12 forms: Q = [a, b, (c_mul n + c_add) / c_div].
struct CuspTableRow {
  int parity = 0;  // 0 for even n, 1 for odd n
  std::int64_t a = 0, b = 0, c_mul = 0, c_add = 0, c_div = 1;
  CosetRep rep;
  int width = 1;
  int zeta_exponent = 0;
  int phi_twelfths = 0;

  QuadForm form_for(std::int64_t n) const;
};

// The seven published rows (four for even n, three for odd n).
const std::vector<CuspTableRow>& published_cusp_tables();

struct SeparationRow {
  QuadForm form;
  CuspData cusp;
  std::int64_t a_times_h = 0;
  Real M;
  Real lower, upper;  // M -+ kappa
  Real half_width;    // arctan(kappa / M)
  // Argument of the main term: arg(zeta) + pi b / (a h).
  double phi = 0;
  bool tabulated = false;
  // |P(gamma_Q tau_Q) - zeta (1 - h / (2 pi v)) e^{-2 pi i tau_Q / h}|, when checked.
  std::optional<double> deviation;
};

struct SeparationOptions {
  bool numeric_check = true;
  double kappa = kKappa;
};

struct SeparationReport {
  std::int64_t n = 0;
  std::int64_t D = 0;
  double kappa = kKappa;
  std::vector<SeparationRow> rows;
  // Smallest |M1 - M2| between an a h = 12 row and any other row.
  double min_gap = 0;
  double max_half_width = 0;
  // pi / 24 - max_half_width.
  double argument_margin = 0;
  bool magnitude_pass = false;
  bool argument_pass = false;
  bool table_pass = false;
  bool numeric_checked = false;
  bool numeric_pass = false;
  // a h = 12 rows absent from the published tables.
  std::vector<QuadForm> untabulated;

  bool passed() const { return magnitude_pass && argument_pass && table_pass && (!numeric_checked || numeric_pass); }
};

// Failing verdicts are reported, not thrown. Requires n >= 1.
SeparationReport separation_report(std::int64_t n, const EvalContext& ctx, const SeparationOptions& opts = {});

struct ErrorSample {
  CosetRep rep;
  BigComplex tau;
  // |P(gamma tau) - zeta (1 - h / (2 pi v)) e^{-2 pi i tau / h}|
  double error = 0;
  double error_bound = 0;  // propagated numerical error of the above
};

// The ten sample points in the fundamental domain: the corner (1 + i sqrt3)/2,
// points on the unit arc, interior points and i v up to v = 10.
std::vector<BigComplex> error_grid(mpfr_prec_t prec);
// The error term at every grid point for all twelve coset representatives.
std::vector<ErrorSample> empirical_error_grid(const EvalContext& ctx);

}  // namespace partrace
