#include "partrace/qforms.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>

#include "partrace/errors.hpp"

namespace partrace {

namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

std::int64_t mod(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

bool squarefree(std::int64_t m) {
  m = m < 0 ? -m : m;
  for (std::int64_t p = 2; p * p <= m; ++p)
    if (m % (p * p) == 0) return false;
  return true;
}

bool is_fundamental(std::int64_t d) {
  if (mod(d, 4) == 1) return squarefree(d);
  if (mod(d, 4) != 0) return false;
  std::int64_t m = d / 4;
  return (mod(m, 4) == 2 || mod(m, 4) == 3) && squarefree(m);
}

std::int64_t isqrt(std::int64_t x) {
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(x)));
  while (r * r > x) --r;
  while ((r + 1) * (r + 1) <= x) ++r;
  return r;
}

}  // namespace

// --- UnimodularMatrix -----------------------------------------------------

UnimodularMatrix::UnimodularMatrix(std::int64_t p_, std::int64_t q_, std::int64_t r_, std::int64_t s_)
    : p(p_), q(q_), r(r_), s(s_) {
  if (p * s - q * r != 1) throw InvalidArgument("matrix determinant is not 1");
}

BigComplex UnimodularMatrix::apply(const BigComplex& tau) const {
  mpfr_prec_t prec = tau.prec();
  BigComplex num = tau * p + BigComplex(static_cast<long>(q), prec);
  return num / automorphy(tau);
}

BigComplex UnimodularMatrix::automorphy(const BigComplex& tau) const {
  return tau * static_cast<long>(r) + BigComplex(static_cast<long>(s), tau.prec());
}

UnimodularMatrix operator*(const UnimodularMatrix& x, const UnimodularMatrix& y) {
  return {x.p * y.p + x.q * y.r, x.p * y.q + x.q * y.s, x.r * y.p + x.s * y.r, x.r * y.q + x.s * y.s};
}

bool UnimodularMatrix::projectively_equal(const UnimodularMatrix& o) const {
  return *this == o || (p == -o.p && q == -o.q && r == -o.r && s == -o.s);
}

std::ostream& operator<<(std::ostream& os, const UnimodularMatrix& m) {
  return os << "[" << m.p << " " << m.q << "; " << m.r << " " << m.s << "]";
}

// --- QuadForm ---------------------------------------------------------------

std::int64_t QuadForm::content() const { return std::gcd(std::gcd(a, b), c); }

bool QuadForm::is_reduced() const {
  if (a <= 0 || discriminant() >= 0) return false;
  if (std::abs(b) > a || a > c) return false;
  if ((std::abs(b) == a || a == c) && b < 0) return false;
  return true;
}

QuadForm QuadForm::compose(const UnimodularMatrix& m) const {
  return {a * m.p * m.p + b * m.p * m.r + c * m.r * m.r,
          2 * a * m.p * m.q + b * (m.p * m.s + m.q * m.r) + 2 * c * m.r * m.s,
          a * m.q * m.q + b * m.q * m.s + c * m.s * m.s};
}

std::string QuadForm::to_string() const {
  std::ostringstream os;
  os << *this;
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const QuadForm& q) {
  return os << "[" << q.a << "," << q.b << "," << q.c << "]";
}

std::int64_t discriminant(const QuadForm& q) { return q.discriminant(); }

// --- Discriminant -----------------------------------------------------------

Discriminant Discriminant::of(std::int64_t D) {
  if (D >= 0 || (mod(D, 4) != 0 && mod(D, 4) != 1))
    throw InvalidArgument("not a negative discriminant: " + std::to_string(D));
  for (std::int64_t t = isqrt(-D); t >= 1; --t) {
    if (D % (t * t) != 0) continue;
    std::int64_t d = D / (t * t);
    if (is_fundamental(d)) return {D, t, d};
  }
  throw InternalError("no fundamental part for " + std::to_string(D));
}

Discriminant Discriminant::for_partition(std::int64_t n) {
  if (n < 1) throw InvalidArgument("partition index must be >= 1");
  return of(1 - 24 * n);
}

// --- reduction and enumeration ---------------------------------------------

Reduction reduce(const QuadForm& q) {
  if (q.a <= 0 || q.discriminant() >= 0) throw InvalidArgument("form is not positive definite: " + q.to_string());
  QuadForm f = q;
  // Accumulates N with q o N = f; the reported matrix is N^{-1}.
  UnimodularMatrix n = UnimodularMatrix::identity();
  auto step = [&](const UnimodularMatrix& m) {
    f = f.compose(m);
    n = n * m;
  };
  for (int guard = 0; guard < 10000; ++guard) {
    // b -> b + 2 a k lands in (-a, a].
    std::int64_t k = floor_div(f.a - f.b, 2 * f.a);
    if (k != 0) step(UnimodularMatrix::T(k));
    if (f.a > f.c) {
      step(UnimodularMatrix::S());
      continue;
    }
    if (f.a == f.c && f.b < 0) step(UnimodularMatrix::S());
    return {f, n.inverse()};
  }
  throw InternalError("reduction did not terminate for " + q.to_string());
}

std::vector<QuadForm> enumerate_primitive_reduced(const Discriminant& disc) {
  const std::int64_t D = disc.D;
  if (D >= 0 || (mod(D, 4) != 0 && mod(D, 4) != 1)) throw InvalidArgument("invalid discriminant");
  std::vector<QuadForm> out;
  const std::int64_t amax = isqrt(-D / 3);
  for (std::int64_t a = 1; a <= amax; ++a) {
    for (std::int64_t b = -a + 1; b <= a; ++b) {
      std::int64_t num = b * b - D;
      if (num % (4 * a) != 0) continue;
      std::int64_t c = num / (4 * a);
      QuadForm f{a, b, c};
      if (f.is_reduced() && f.is_primitive()) out.push_back(f);
    }
  }
  return out;
}

std::int64_t class_number(const Discriminant& disc) {
  return static_cast<std::int64_t>(enumerate_primitive_reduced(disc).size());
}

std::int64_t class_number(std::int64_t D) { return class_number(Discriminant::of(D)); }

// --- Gamma_0(6) cosets -------------------------------------------------------

UnimodularMatrix CosetRep::matrix() const {
  const std::int64_t k = index;
  switch (cusp) {
    case Cusp::Infinity: return UnimodularMatrix::identity();
    case Cusp::OneThird: return {1, k, 3, 3 * k + 1};
    case Cusp::OneHalf: return {1, k + 1, 2, 2 * k + 3};
    case Cusp::Zero: return {0, -1, 1, k};
  }
  throw InternalError("bad cusp");
}

int CosetRep::width() const {
  switch (cusp) {
    case Cusp::Infinity: return 1;
    case Cusp::OneThird: return 2;
    case Cusp::OneHalf: return 3;
    case Cusp::Zero: return 6;
  }
  return 0;
}

int CosetRep::zeta_exponent() const {
  switch (cusp) {
    case Cusp::Infinity: return 0;
    case Cusp::OneThird: return static_cast<int>(mod(3 * index, 6));
    case Cusp::OneHalf: return static_cast<int>(mod(3 - 2 * index, 6));
    case Cusp::Zero: return static_cast<int>(mod(-index, 6));
  }
  return 0;
}

std::string CosetRep::label() const {
  switch (cusp) {
    case Cusp::Infinity: return "inf";
    case Cusp::OneThird: return "1/3," + std::to_string(index);
    case Cusp::OneHalf: return "1/2," + std::to_string(index);
    case Cusp::Zero: return "0," + std::to_string(index);
  }
  return "?";
}

const std::array<CosetRep, 12>& CosetRep::all() {
  static const std::array<CosetRep, 12> reps = [] {
    std::array<CosetRep, 12> r{};
    std::size_t i = 0;
    r[i++] = {Cusp::Infinity, 0};
    for (int k = 0; k < 2; ++k) r[i++] = {Cusp::OneThird, k};
    for (int k = 0; k < 3; ++k) r[i++] = {Cusp::OneHalf, k};
    for (int k = 0; k < 6; ++k) r[i++] = {Cusp::Zero, k};
    return r;
  }();
  return reps;
}

CosetAssignment coset_assign(const QuadForm& q, int beta) {
  if (std::gcd(q.discriminant(), std::int64_t{6}) != 1)
    throw InvalidArgument("discriminant must be prime to 6: " + q.to_string());
  std::vector<CosetAssignment> hits;
  for (const auto& rep : CosetRep::all()) {
    QuadForm g = q.compose(rep.matrix().inverse());
    if (g.a % 6 == 0 && mod(g.b, 12) == mod(beta, 12)) hits.push_back({rep, g});
  }
  if (hits.size() != 1)
    throw InternalError("expected a unique Gamma_0(6) coset for " + q.to_string() + ", found " +
                        std::to_string(hits.size()));
  return hits.front();
}

std::vector<HeegnerRep> gamma06_representatives(const Discriminant& disc, int beta) {
  std::vector<HeegnerRep> out;
  for (const auto& q : enumerate_primitive_reduced(disc)) {
    auto [rep, form] = coset_assign(q, beta);
    // b is a unit mod 6, so some T^k (|k| <= 3) makes c prime to 6.
    for (std::int64_t k : {0, 1, -1, 2, -2, 3}) {
      QuadForm t = form.compose(UnimodularMatrix::T(k));
      if (std::gcd(t.c, std::int64_t{6}) == 1) {
        form = t;
        break;
      }
    }
    out.push_back({q, rep, form});
  }
  return out;
}

// --- N-systems ----------------------------------------------------------------

bool is_n_system(const std::vector<QuadForm>& forms, const Discriminant& disc, std::int64_t N) {
  auto reduced = enumerate_primitive_reduced(disc);
  if (forms.size() != reduced.size()) return false;
  std::set<QuadForm> classes;
  for (const auto& f : forms) {
    if (f.discriminant() != disc.D || !f.is_primitive() || f.a <= 0) return false;
    if (std::gcd(f.c, N) != 1) return false;
    if (mod(f.b - forms.front().b, N) != 0) return false;
    classes.insert(reduce(f).form);
  }
  return classes == std::set<QuadForm>(reduced.begin(), reduced.end());
}

std::vector<QuadForm> n_system(const Discriminant& disc, std::int64_t N) {
  if (N < 1) throw InvalidArgument("N must be >= 1");
  std::vector<QuadForm> base;
  if (disc.is_partition()) {
    for (const auto& h : gamma06_representatives(disc)) base.push_back(h.form);
  } else {
    base = enumerate_primitive_reduced(disc);
  }

  // Candidates per class: translates Q o T^k, |k| <= 4N, then the same for the neighbor [c, -b, a].
  auto candidates = [N](const QuadForm& q) {
    std::vector<QuadForm> out;
    for (const QuadForm& start : {q, q.compose(UnimodularMatrix::S())}) {
      for (std::int64_t k = 0; k <= 4 * N; ++k) {
        out.push_back(start.compose(UnimodularMatrix::T(k)));
        if (k) out.push_back(start.compose(UnimodularMatrix::T(-k)));
      }
    }
    return out;
  };

  std::vector<std::vector<QuadForm>> pools;
  for (const auto& q : base) {
    std::vector<QuadForm> good;
    for (const auto& f : candidates(q))
      if (std::gcd(f.c, N) == 1) good.push_back(f);
    pools.push_back(std::move(good));
  }
  if (pools.empty()) throw InternalError("empty class set");

  for (const auto& first : pools.front()) {
    std::vector<QuadForm> chosen{first};
    bool ok = true;
    for (std::size_t i = 1; i < pools.size() && ok; ++i) {
      auto it = std::find_if(pools[i].begin(), pools[i].end(),
                             [&](const QuadForm& f) { return mod(f.b - first.b, N) == 0; });
      if (it == pools[i].end()) ok = false;
      else chosen.push_back(*it);
    }
    if (ok && is_n_system(chosen, disc, N)) return chosen;
  }
  throw InternalError("no " + std::to_string(N) + "-system found for D = " + std::to_string(disc.D));
}

// --- CM points and cusp data ------------------------------------------------------

BigComplex cm_point(const QuadForm& q, mpfr_prec_t prec) {
  const std::int64_t D = q.discriminant();
  if (D >= 0 || q.a <= 0) throw InvalidArgument("form is not positive definite: " + q.to_string());
  Real re(-q.b, prec + 8);
  re /= 2 * q.a;
  Real im = sqrt(Real(-D, prec + 8));
  im /= 2 * q.a;
  re.set_prec(prec);
  im.set_prec(prec);
  BigComplex tau(std::move(re), std::move(im));
  tau.set_error(2 * tau.mid_abs() * ulp_scale(prec));
  return tau;
}

mpq_class CuspData::phi_over_pi() const {
  mpq_class r(phi_twelfths, 12);
  r.canonicalize();
  return r;
}

CuspData cusp_invariants(const QuadForm& q, std::int64_t n) {
  if (q.discriminant() != 1 - 24 * n) throw InvalidArgument("form discriminant is not 1 - 24n");
  auto [rep, form] = coset_assign(q);
  CuspData out;
  out.rep = rep;
  out.width = rep.width();
  out.zeta_exponent = rep.zeta_exponent();
  // arg(zeta_6^e) = 4e pi / 12.
  std::int64_t phi = mod(4 * out.zeta_exponent + q.b, 24);
  if (phi > 12) phi -= 24;
  out.phi_twelfths = static_cast<int>(phi);
  return out;
}

}  // namespace partrace
