#include "partrace/polyops.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <random>
#include <set>
#include <sstream>

#include "partrace/errors.hpp"

namespace partrace {

// ---------------------------------------------------------------- IntPoly

IntPoly::IntPoly(std::vector<mpz_class> ascending) : c_(std::move(ascending)) { trim(); }

IntPoly IntPoly::from_descending(std::vector<mpz_class> descending) {
  std::reverse(descending.begin(), descending.end());
  return IntPoly(std::move(descending));
}

IntPoly IntPoly::monomial(const mpz_class& c, std::size_t degree) {
  std::vector<mpz_class> v(degree + 1, 0);
  v[degree] = c;
  return IntPoly(std::move(v));
}

void IntPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

std::vector<mpz_class> IntPoly::descending() const { return {c_.rbegin(), c_.rend()}; }

const mpz_class& IntPoly::leading() const {
  if (c_.empty()) throw InvalidArgument("IntPoly::leading: zero polynomial");
  return c_.back();
}

mpz_class IntPoly::content() const {
  mpz_class g = 0;
  for (const auto& x : c_) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  return g;
}

IntPoly IntPoly::primitive_part() const {
  if (c_.empty()) return {};
  mpz_class g = content();
  if (leading() < 0) g = -g;
  std::vector<mpz_class> v(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) mpz_divexact(v[i].get_mpz_t(), c_[i].get_mpz_t(), g.get_mpz_t());
  return IntPoly(std::move(v));
}

IntPoly IntPoly::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<mpz_class> v(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) v[i - 1] = c_[i] * static_cast<unsigned long>(i);
  return IntPoly(std::move(v));
}

IntPoly IntPoly::scale_variable(const mpz_class& c) const {
  std::vector<mpz_class> v(c_.size());
  mpz_class pw = 1;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    v[i] = c_[i] * pw;
    pw *= c;
  }
  return IntPoly(std::move(v));
}

mpz_class IntPoly::operator()(const mpz_class& x) const {
  mpz_class s = 0;
  for (std::size_t i = c_.size(); i-- > 0;) s = s * x + c_[i];
  return s;
}

mpz_class IntPoly::height() const {
  mpz_class h = 0;
  for (const auto& x : c_) h = std::max<mpz_class>(h, abs(x));
  return h;
}

std::string IntPoly::to_string(char var) const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = c_.size(); i-- > 0;) {
    const mpz_class& a = c_[i];
    if (a == 0) continue;
    mpz_class m = abs(a);
    if (first) os << (a < 0 ? "-" : "");
    else os << (a < 0 ? " - " : " + ");
    first = false;
    if (m != 1 || i == 0) os << m;
    if (i >= 1) os << var;
    if (i >= 2) os << '^' << i;
  }
  return os.str();
}

IntPoly operator+(const IntPoly& a, const IntPoly& b) {
  std::vector<mpz_class> v(std::max(a.c_.size(), b.c_.size()), 0);
  for (std::size_t i = 0; i < a.c_.size(); ++i) v[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) v[i] += b.c_[i];
  return IntPoly(std::move(v));
}

IntPoly IntPoly::operator-() const {
  std::vector<mpz_class> v(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) v[i] = -c_[i];
  return IntPoly(std::move(v));
}

IntPoly operator-(const IntPoly& a, const IntPoly& b) { return a + (-b); }

IntPoly operator*(const IntPoly& a, const IntPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<mpz_class> v(a.c_.size() + b.c_.size() - 1, 0);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j)
      mpz_addmul(v[i + j].get_mpz_t(), a.c_[i].get_mpz_t(), b.c_[j].get_mpz_t());
  }
  return IntPoly(std::move(v));
}

IntPoly operator*(const mpz_class& k, const IntPoly& a) {
  std::vector<mpz_class> v(a.c_.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = k * a.c_[i];
  return IntPoly(std::move(v));
}

std::ostream& operator<<(std::ostream& os, const IntPoly& f) { return os << f.to_string(); }

IntPoly pow(const IntPoly& f, unsigned e) {
  IntPoly r = IntPoly::constant(1), b = f;
  while (e) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

bool divides(const IntPoly& g, const IntPoly& f, IntPoly* quotient) {
  if (g.is_zero()) throw InvalidArgument("divides: division by the zero polynomial");
  std::vector<mpz_class> r = f.ascending();
  const int dg = g.degree();
  std::vector<mpz_class> q(f.degree() >= dg ? static_cast<std::size_t>(f.degree() - dg + 1) : 0, 0);
  const mpz_class& lg = g.leading();
  for (int k = f.degree(); k >= dg; --k) {
    mpz_class& top = r[static_cast<std::size_t>(k)];
    if (top == 0) continue;
    if (!mpz_divisible_p(top.get_mpz_t(), lg.get_mpz_t())) return false;
    mpz_class t;
    mpz_divexact(t.get_mpz_t(), top.get_mpz_t(), lg.get_mpz_t());
    const std::size_t shift = static_cast<std::size_t>(k - dg);
    q[shift] = t;
    for (int i = 0; i <= dg; ++i) mpz_submul(r[shift + i].get_mpz_t(), t.get_mpz_t(), g[i].get_mpz_t());
  }
  for (const auto& x : r)
    if (x != 0) return false;
  if (quotient) *quotient = IntPoly(std::move(q));
  return true;
}

namespace {
// lc(b)^(deg a - deg b + 1) a mod b.
IntPoly pseudo_remainder(const IntPoly& a, const IntPoly& b) {
  std::vector<mpz_class> r = a.ascending();
  const int db = b.degree();
  const mpz_class& lb = b.leading();
  for (int k = a.degree(); k >= db; --k) {
    mpz_class top = r[static_cast<std::size_t>(k)];
    for (auto& x : r) x *= lb;
    if (top == 0) continue;
    const std::size_t shift = static_cast<std::size_t>(k - db);
    for (int i = 0; i <= db; ++i) mpz_submul(r[shift + i].get_mpz_t(), top.get_mpz_t(), b[i].get_mpz_t());
  }
  return IntPoly(std::move(r));
}
}  // namespace

IntPoly gcd(const IntPoly& a, const IntPoly& b) {
  if (a.is_zero()) return b.primitive_part();
  if (b.is_zero()) return a.primitive_part();
  IntPoly A = a.primitive_part(), B = b.primitive_part();
  if (A.degree() < B.degree()) std::swap(A, B);
  while (!B.is_zero()) {
    if (B.degree() == 0) return IntPoly::constant(1);
    IntPoly R = pseudo_remainder(A, B);
    A = std::move(B);
    B = R.primitive_part();
  }
  return A.primitive_part();
}

// ---------------------------------------------------------------- RatPoly

RatPoly::RatPoly(std::vector<mpq_class> ascending) : c_(std::move(ascending)) {
  for (auto& x : c_) x.canonicalize();
  trim();
}

RatPoly::RatPoly(const IntPoly& f) {
  for (const auto& x : f.ascending()) c_.emplace_back(x);
}

void RatPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

const mpq_class& RatPoly::leading() const {
  if (c_.empty()) throw InvalidArgument("RatPoly::leading: zero polynomial");
  return c_.back();
}

RatPoly RatPoly::monic() const {
  if (c_.empty()) return {};
  mpq_class l = leading();
  std::vector<mpq_class> v(c_.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = c_[i] / l;
  return RatPoly(std::move(v));
}

RatPoly RatPoly::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<mpq_class> v(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) v[i - 1] = c_[i] * static_cast<unsigned long>(i);
  return RatPoly(std::move(v));
}

RatPoly RatPoly::scale_variable(const mpq_class& c) const {
  std::vector<mpq_class> v(c_.size());
  mpq_class pw = 1;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    v[i] = c_[i] * pw;
    pw *= c;
  }
  return RatPoly(std::move(v));
}

IntPoly RatPoly::clear_denominators() const {
  mpz_class l = 1;
  for (const auto& x : c_) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  std::vector<mpz_class> v(c_.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    mpq_class t = c_[i] * l;
    v[i] = t.get_num();
  }
  return IntPoly(std::move(v));
}

std::string RatPoly::to_string(char var) const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = c_.size(); i-- > 0;) {
    const mpq_class& a = c_[i];
    if (a == 0) continue;
    mpq_class m = abs(a);
    if (first) os << (a < 0 ? "-" : "");
    else os << (a < 0 ? " - " : " + ");
    first = false;
    if (m != 1 || i == 0) os << m;
    if (i >= 1) os << var;
    if (i >= 2) os << '^' << i;
  }
  return os.str();
}

RatPoly operator+(const RatPoly& a, const RatPoly& b) {
  std::vector<mpq_class> v(std::max(a.c_.size(), b.c_.size()), 0);
  for (std::size_t i = 0; i < a.c_.size(); ++i) v[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) v[i] += b.c_[i];
  return RatPoly(std::move(v));
}

RatPoly operator-(const RatPoly& a, const RatPoly& b) { return a + mpq_class(-1) * b; }

RatPoly operator*(const RatPoly& a, const RatPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<mpq_class> v(a.c_.size() + b.c_.size() - 1, 0);
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
  return RatPoly(std::move(v));
}

RatPoly operator*(const mpq_class& k, const RatPoly& a) {
  std::vector<mpq_class> v(a.c_.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = k * a.c_[i];
  return RatPoly(std::move(v));
}

std::ostream& operator<<(std::ostream& os, const RatPoly& f) { return os << f.to_string(); }

void divmod(const RatPoly& f, const RatPoly& g, RatPoly& quotient, RatPoly& remainder) {
  if (g.is_zero()) throw InvalidArgument("divmod: division by the zero polynomial");
  std::vector<mpq_class> r = f.ascending();
  const int dg = g.degree();
  std::vector<mpq_class> q(f.degree() >= dg ? static_cast<std::size_t>(f.degree() - dg + 1) : 0, 0);
  for (int k = f.degree(); k >= dg; --k) {
    mpq_class t = r[static_cast<std::size_t>(k)] / g.leading();
    if (t == 0) continue;
    const std::size_t shift = static_cast<std::size_t>(k - dg);
    q[shift] = t;
    for (int i = 0; i <= dg; ++i) r[shift + i] -= t * g[i];
  }
  quotient = RatPoly(std::move(q));
  remainder = RatPoly(std::move(r));
}

RatPoly gcd(const RatPoly& a, const RatPoly& b) {
  RatPoly A = a, B = b;
  while (!B.is_zero()) {
    RatPoly q, r;
    divmod(A, B, q, r);
    A = std::move(B);
    B = std::move(r);
  }
  return A.monic();
}

// ---------------------------------------------------------------- recognition

namespace {
struct Rounded {
  mpz_class value;
  double distance;
  Radius err;
};

Rounded round_scaled(const BigComplex& z, const mpz_class& scale) {
  mpfr_prec_t prec = z.prec();
  Real s(scale, prec);
  Real re = z.re() * s, im = z.im() * s;
  Rounded r;
  r.value = re.round();
  Real d = abs(re - Real(r.value, prec)) + abs(im);
  r.distance = d.to_double();
  r.err = z.err() * std::fabs(s.to_long_double());
  return r;
}
}  // namespace

double recognition_distance(const std::vector<BigComplex>& approx, const std::vector<mpz_class>& scales) {
  if (approx.size() != scales.size()) throw InvalidArgument("recognition_distance: length mismatch");
  double worst = 0;
  for (std::size_t k = 0; k < approx.size(); ++k) worst = std::max(worst, round_scaled(approx[k], scales[k]).distance);
  return worst;
}

IntPoly recognize_integer_polynomial(const std::vector<BigComplex>& approx, const std::vector<mpz_class>& scales) {
  if (approx.size() != scales.size()) throw InvalidArgument("recognize_integer_polynomial: length mismatch");
  const double threshold = std::ldexp(1.0, -32);
  std::vector<mpz_class> out(approx.size());
  double worst = -1;
  std::size_t worst_index = 0;
  bool ok = true;
  for (std::size_t k = 0; k < approx.size(); ++k) {
    Rounded r = round_scaled(approx[k], scales[k]);
    double bad = r.distance + static_cast<double>(r.err);
    if (!(bad < threshold)) ok = false;
    if (!(bad <= worst)) {
      worst = bad;
      worst_index = k;
    }
    out[k] = r.value;
  }
  if (!ok) {
    std::ostringstream os;
    os << "recognize_integer_polynomial: coefficient " << worst_index << " is " << worst
       << " from an integer (threshold 2^-32)";
    throw RecognitionFailure(os.str(), worst_index);
  }
  return IntPoly::from_descending(std::move(out));
}

// ---------------------------------------------------------------- arithmetic mod p

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;
using PolyP = std::vector<u64>;

struct Fp {
  u64 p;
  u64 add(u64 a, u64 b) const { u64 s = a + b; return s >= p ? s - p : s; }
  u64 sub(u64 a, u64 b) const { return a >= b ? a - b : a + p - b; }
  u64 mul(u64 a, u64 b) const { return static_cast<u64>(static_cast<u128>(a) * b % p); }
  u64 pow(u64 a, u64 e) const {
    u64 r = 1;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  u64 inv(u64 a) const {
    if (a == 0) throw InternalError("Fp::inv: zero");
    return pow(a, p - 2);
  }
};

void trimp(PolyP& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

int degp(const PolyP& a) { return static_cast<int>(a.size()) - 1; }

PolyP reduce_mod(const IntPoly& f, u64 p) {
  PolyP v(f.ascending().size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = mpz_fdiv_ui(f.ascending()[i].get_mpz_t(), p);
  trimp(v);
  return v;
}

PolyP mulp(const PolyP& a, const PolyP& b, const Fp& F) {
  if (a.empty() || b.empty()) return {};
  std::vector<u128> acc(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      acc[i + j] += static_cast<u128>(a[i]) * b[j];
      if (acc[i + j] >> 120) acc[i + j] %= F.p;
    }
  }
  PolyP r(acc.size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = static_cast<u64>(acc[i] % F.p);
  trimp(r);
  return r;
}

void divmodp(const PolyP& a, const PolyP& b, const Fp& F, PolyP* q, PolyP& r) {
  if (b.empty()) throw InternalError("divmodp: division by zero");
  r = a;
  const int db = degp(b);
  const u64 il = F.inv(b.back());
  PolyP qq(degp(a) >= db ? static_cast<std::size_t>(degp(a) - db + 1) : 0, 0);
  for (int k = degp(r); k >= db; --k) {
    u64 t = F.mul(r[static_cast<std::size_t>(k)], il);
    if (!t) continue;
    std::size_t shift = static_cast<std::size_t>(k - db);
    qq[shift] = t;
    for (int i = 0; i <= db; ++i) r[shift + i] = F.sub(r[shift + i], F.mul(t, b[static_cast<std::size_t>(i)]));
  }
  trimp(r);
  if (q) {
    trimp(qq);
    *q = std::move(qq);
  }
}

PolyP modp(const PolyP& a, const PolyP& b, const Fp& F) {
  PolyP r;
  divmodp(a, b, F, nullptr, r);
  return r;
}

PolyP monicp(PolyP a, const Fp& F) {
  if (a.empty()) return a;
  u64 il = F.inv(a.back());
  for (auto& x : a) x = F.mul(x, il);
  return a;
}

PolyP gcdp(PolyP a, PolyP b, const Fp& F) {
  while (!b.empty()) {
    PolyP r = modp(a, b, F);
    a = std::move(b);
    b = std::move(r);
  }
  return monicp(std::move(a), F);
}

PolyP subp(PolyP a, const PolyP& b, const Fp& F) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = F.sub(a[i], b[i]);
  trimp(a);
  return a;
}

PolyP derivp(const PolyP& a, const Fp& F) {
  if (a.size() <= 1) return {};
  PolyP d(a.size() - 1);
  for (std::size_t i = 1; i < a.size(); ++i) d[i - 1] = F.mul(a[i], i % F.p);
  trimp(d);
  return d;
}

PolyP powmodp(PolyP base, const mpz_class& e, const PolyP& m, const Fp& F) {
  PolyP r = {1};
  base = modp(base, m, F);
  const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    r = modp(mulp(r, r, F), m, F);
    if (mpz_tstbit(e.get_mpz_t(), i)) r = modp(mulp(r, base, F), m, F);
  }
  return r;
}

// f monic and squarefree mod p; returns (d, product of the degree-d factors).
std::vector<std::pair<int, PolyP>> distinct_degree(PolyP f, const Fp& F) {
  std::vector<std::pair<int, PolyP>> out;
  PolyP xp = {0, 1};
  PolyP h = xp;
  mpz_class p = static_cast<unsigned long>(F.p);
  for (int d = 1; 2 * d <= degp(f); ++d) {
    h = powmodp(h, p, f, F);
    PolyP g = gcdp(f, subp(h, xp, F), F);
    if (degp(g) > 0) {
      out.emplace_back(d, g);
      PolyP q, r;
      divmodp(f, g, F, &q, r);
      f = std::move(q);
      h = modp(h, f, F);
    }
  }
  if (degp(f) > 0) out.emplace_back(degp(f), f);
  return out;
}

// Splits g, a product of distinct monic irreducibles of degree d, for odd p.
void equal_degree(const PolyP& g, int d, const Fp& F, std::mt19937_64& rng, std::vector<PolyP>& out) {
  if (degp(g) == d) {
    out.push_back(g);
    return;
  }
  mpz_class e;
  mpz_ui_pow_ui(e.get_mpz_t(), F.p, static_cast<unsigned long>(d));
  e = (e - 1) / 2;
  std::uniform_int_distribution<u64> dist(0, F.p - 1);
  for (;;) {
    PolyP a(static_cast<std::size_t>(degp(g)));
    for (auto& x : a) x = dist(rng);
    trimp(a);
    if (degp(a) < 1) continue;
    PolyP b = subp(powmodp(a, e, g, F), PolyP{1}, F);
    PolyP h = gcdp(g, b, F);
    if (degp(h) > 0 && degp(h) < degp(g)) {
      PolyP q, r;
      divmodp(g, h, F, &q, r);
      equal_degree(h, d, F, rng, out);
      equal_degree(monicp(q, F), d, F, rng, out);
      return;
    }
  }
}

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

u64 next_prime(u64 n) {
  do {
    ++n;
  } while (!is_prime(n));
  return n;
}

// Good reduction: p does not divide lc(f) and f stays square-free mod p.
bool good_prime(const IntPoly& f, u64 p, PolyP* reduced) {
  if (mpz_divisible_ui_p(f.leading().get_mpz_t(), p)) return false;
  Fp F{p};
  PolyP fp = reduce_mod(f, p);
  if (degp(gcdp(fp, derivp(fp, F), F)) > 0) return false;
  if (reduced) *reduced = monicp(std::move(fp), F);
  return true;
}

std::vector<int> pattern_of(const std::vector<std::pair<int, PolyP>>& ddf) {
  std::vector<int> deg;
  for (const auto& [d, g] : ddf)
    for (int k = 0; k < degp(g) / d; ++k) deg.push_back(d);
  std::sort(deg.begin(), deg.end());
  return deg;
}

std::set<int> subset_sums(const std::vector<int>& parts, int n) {
  std::vector<char> can(static_cast<std::size_t>(n) + 1, 0);
  can[0] = 1;
  for (int d : parts)
    for (int s = n; s >= d; --s)
      if (can[static_cast<std::size_t>(s - d)]) can[static_cast<std::size_t>(s)] = 1;
  std::set<int> out;
  for (int s = 1; s < n; ++s)
    if (can[static_cast<std::size_t>(s)]) out.insert(s);
  return out;
}

// ---------------------------------------------------------------- Hensel lifting

using PolyZ = std::vector<mpz_class>;

void trimz(PolyZ& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

PolyZ modz(PolyZ a, const mpz_class& M) {
  for (auto& x : a) mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), M.get_mpz_t());
  trimz(a);
  return a;
}

PolyZ mulz(const PolyZ& a, const PolyZ& b, const mpz_class& M) {
  if (a.empty() || b.empty()) return {};
  PolyZ v(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) mpz_addmul(v[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
  return modz(std::move(v), M);
}

PolyZ addz(PolyZ a, const PolyZ& b, const mpz_class& M, int sign = 1) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (sign > 0) a[i] += b[i];
    else a[i] -= b[i];
  }
  return modz(std::move(a), M);
}

// Division by a monic polynomial modulo M.
void divmodz(const PolyZ& a, const PolyZ& b, const mpz_class& M, PolyZ& q, PolyZ& r) {
  r = a;
  const int db = static_cast<int>(b.size()) - 1;
  const int da = static_cast<int>(a.size()) - 1;
  q.assign(da >= db ? static_cast<std::size_t>(da - db + 1) : 0, 0);
  for (int k = da; k >= db; --k) {
    mpz_class t = r[static_cast<std::size_t>(k)];
    mpz_fdiv_r(t.get_mpz_t(), t.get_mpz_t(), M.get_mpz_t());
    if (t == 0) continue;
    std::size_t shift = static_cast<std::size_t>(k - db);
    q[shift] = t;
    for (int i = 0; i <= db; ++i) mpz_submul(r[shift + i].get_mpz_t(), t.get_mpz_t(), b[static_cast<std::size_t>(i)].get_mpz_t());
  }
  r = modz(std::move(r), M);
  q = modz(std::move(q), M);
}

PolyZ lift_from(const PolyP& a) {
  PolyZ v(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) v[i] = static_cast<unsigned long>(a[i]);
  return v;
}

// s g + t h = 1 mod p with deg s < deg h, deg t < deg g.
void bezout_p(const PolyP& g, const PolyP& h, const Fp& F, PolyP& s, PolyP& t) {
  PolyP r0 = g, r1 = h, s0 = {1}, s1 = {}, t0 = {}, t1 = {1};
  while (!r1.empty()) {
    PolyP q, r;
    divmodp(r0, r1, F, &q, r);
    PolyP s2 = subp(s0, mulp(q, s1, F), F);
    PolyP t2 = subp(t0, mulp(q, t1, F), F);
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (degp(r0) != 0) throw InternalError("bezout_p: factors are not coprime");
  u64 ic = F.inv(r0[0]);
  s = s0;
  t = t0;
  for (auto& x : s) x = F.mul(x, ic);
  for (auto& x : t) x = F.mul(x, ic);
}

// f = g h mod p with h monic; returns (g, h) lifted modulo p^(2^k) >= target.
std::pair<PolyZ, PolyZ> hensel_pair(const PolyZ& f, const PolyP& g0, const PolyP& h0, const Fp& F,
                                    const mpz_class& target, mpz_class& modulus) {
  PolyP s0, t0;
  bezout_p(g0, h0, F, s0, t0);
  PolyZ g = lift_from(g0), h = lift_from(h0), s = lift_from(s0), t = lift_from(t0);
  mpz_class m = static_cast<unsigned long>(F.p);
  while (m < target) {
    mpz_class m2 = m * m;
    PolyZ e = addz(modz(f, m2), mulz(g, h, m2), m2, -1);
    PolyZ q, r;
    divmodz(mulz(s, e, m2), h, m2, q, r);
    PolyZ gs = addz(addz(g, mulz(t, e, m2), m2), mulz(q, g, m2), m2);
    PolyZ hs = addz(h, r, m2);
    PolyZ b = addz(addz(mulz(s, gs, m2), mulz(t, hs, m2), m2), PolyZ{1}, m2, -1);
    PolyZ c, d;
    divmodz(mulz(s, b, m2), hs, m2, c, d);
    s = addz(s, d, m2, -1);
    t = addz(addz(t, mulz(t, b, m2), m2, -1), mulz(c, gs, m2), m2, -1);
    g = std::move(gs);
    h = std::move(hs);
    m = std::move(m2);
  }
  modulus = m;
  return {g, h};
}

IntPoly symmetric(const PolyZ& a, const mpz_class& M) {
  mpz_class half = M / 2;
  std::vector<mpz_class> v(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    mpz_class x;
    mpz_fdiv_r(x.get_mpz_t(), a[i].get_mpz_t(), M.get_mpz_t());
    if (x > half) x -= M;
    v[i] = x;
  }
  return IntPoly(std::move(v));
}

mpz_class two_norm_ceiling(const IntPoly& f) {
  mpz_class s = 0;
  for (const auto& x : f.ascending()) s += x * x;
  mpz_class r;
  mpz_sqrt(r.get_mpz_t(), s.get_mpz_t());
  return r + 1;
}

struct LiftOutcome {
  Verdict verdict = Verdict::Inconclusive;
  IntPoly factor;
};

// Lifting and recombination over the factorization of f modulo p.
LiftOutcome lift_and_recombine(const IntPoly& f, u64 p, const std::set<int>& allowed, std::uint64_t max_subsets) {
  Fp F{p};
  PolyP fp = monicp(reduce_mod(f, p), F);
  std::mt19937_64 rng(0x5eed0000u + p);
  std::vector<PolyP> factors;
  for (const auto& [d, g] : distinct_degree(fp, F)) equal_degree(g, d, F, rng, factors);
  const int n = f.degree();
  const mpz_class& lc = f.leading();
  mpz_class bound = abs(lc) * two_norm_ceiling(f);
  mpz_mul_2exp(bound.get_mpz_t(), bound.get_mpz_t(), static_cast<mp_bitcnt_t>(n + 1));

  // Lift one factor at a time off the remaining cofactor.
  PolyZ rest = f.ascending();
  std::vector<PolyZ> lifted;
  mpz_class M = 0;
  const u64 lcp = mpz_fdiv_ui(lc.get_mpz_t(), p);
  for (std::size_t i = 0; i + 1 < factors.size(); ++i) {
    PolyP cof = {lcp};
    for (std::size_t k = i + 1; k < factors.size(); ++k) cof = mulp(cof, factors[k], F);
    auto [g, h] = hensel_pair(rest, cof, factors[i], F, bound, M);
    lifted.push_back(std::move(h));
    rest = std::move(g);
  }
  {
    if (M == 0) {
      M = p;
      while (M < bound) M *= M;
    }
    mpz_class inv;
    mpz_class lcM = lc;
    mpz_invert(inv.get_mpz_t(), lcM.get_mpz_t(), M.get_mpz_t());
    PolyZ last = modz(rest, M);
    for (auto& x : last) x *= inv;
    lifted.push_back(modz(std::move(last), M));
  }
  std::vector<IntPoly> sym;
  for (const auto& h : lifted) sym.push_back(symmetric(h, M));
  std::sort(sym.begin(), sym.end(), [](const IntPoly& a, const IntPoly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    return a.ascending() < b.ascending();
  });
  const std::size_t r = sym.size();
  std::uint64_t tried = 0;
  std::vector<std::size_t> idx;
  for (std::size_t size = 1; 2 * size <= r; ++size) {
    idx.resize(size);
    std::iota(idx.begin(), idx.end(), 0);
    for (;;) {
      int deg = 0;
      for (std::size_t k : idx) deg += sym[k].degree();
      if (allowed.count(deg)) {
        if (++tried > max_subsets) return {};
        PolyZ prod = {lc};
        for (std::size_t k : idx) prod = mulz(prod, sym[k].ascending(), M);
        IntPoly cand = symmetric(prod, M).primitive_part();
        if (cand.degree() > 0 && cand.degree() < n && divides(cand, f)) return {Verdict::Reducible, cand};
      }
      // next combination
      std::size_t pos = size;
      while (pos > 0 && idx[pos - 1] == r - size + pos - 1) --pos;
      if (pos == 0) break;
      ++idx[pos - 1];
      for (std::size_t k = pos; k < size; ++k) idx[k] = idx[k - 1] + 1;
    }
  }
  return {Verdict::Irreducible, {}};
}

}  // namespace

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Irreducible: return "irreducible";
    case Verdict::Reducible: return "reducible";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

FactorPattern factor_pattern_mod(const IntPoly& f, std::uint64_t p) {
  FactorPattern pat;
  pat.prime = p;
  PolyP fp;
  if (f.degree() < 1 || !is_prime(p) || !good_prime(f, p, &fp)) return pat;
  pat.degrees = pattern_of(distinct_degree(fp, Fp{p}));
  return pat;
}

IrreducibilityCertificate irreducible_over_Q(const IntPoly& f_in, const IrreducibilityOptions& opts) {
  if (f_in.degree() < 1) throw InvalidArgument("irreducible_over_Q: degree must be at least 1");
  const IntPoly f = f_in.primitive_part();
  const int n = f.degree();
  IrreducibilityCertificate cert;
  if (n == 1) {
    cert.verdict = Verdict::Irreducible;
    cert.method = "degree";
    return cert;
  }
  std::set<int> possible;
  for (int d = 1; d < n; ++d) possible.insert(d);
  u64 p = opts.prime_start;
  int good = 0, bad_run = 0;
  u64 best_prime = 0;
  std::size_t best_count = 0;
  while (good < opts.budget) {
    p = next_prime(p);
    PolyP fp;
    if (!good_prime(f, p, &fp)) {
      if (!mpz_divisible_ui_p(f.leading().get_mpz_t(), p) && ++bad_run == 24) {
        IntPoly g = gcd(f, f.derivative());
        if (g.degree() > 0) {
          cert.verdict = Verdict::Reducible;
          cert.method = "squarefree";
          cert.factor = g;
          return cert;
        }
      }
      continue;
    }
    ++good;
    FactorPattern pat{p, pattern_of(distinct_degree(fp, Fp{p}))};
    cert.patterns.push_back(pat);
    if (pat.degrees.size() == 1) {
      cert.verdict = Verdict::Irreducible;
      cert.method = "prime";
      cert.witness = p;
      return cert;
    }
    std::set<int> sums = subset_sums(pat.degrees, n);
    std::set<int> meet;
    std::set_intersection(possible.begin(), possible.end(), sums.begin(), sums.end(), std::inserter(meet, meet.end()));
    possible = std::move(meet);
    if (p > 2 && (best_prime == 0 || pat.degrees.size() < best_count)) {
      best_prime = p;
      best_count = pat.degrees.size();
    }
    if (possible.empty()) break;
  }
  cert.possible_degrees.assign(possible.begin(), possible.end());
  if (possible.empty()) {
    cert.verdict = Verdict::Irreducible;
    cert.method = "degree-intersection";
    return cert;
  }
  LiftOutcome out = lift_and_recombine(f, best_prime, possible, opts.max_subsets);
  cert.verdict = out.verdict;
  cert.method = "lifting";
  cert.witness = best_prime;
  cert.factor = out.factor;
  return cert;
}

bool verify_certificate(const IntPoly& f_in, const IrreducibilityCertificate& cert) {
  const IntPoly f = f_in.primitive_part();
  const int n = f.degree();
  switch (cert.verdict) {
    case Verdict::Reducible:
      return cert.factor.degree() >= 1 && cert.factor.degree() < n && divides(cert.factor, f);
    case Verdict::Inconclusive:
      return true;
    case Verdict::Irreducible:
      break;
  }
  if (cert.method == "degree") return n == 1;
  if (cert.method == "prime") {
    FactorPattern pat = factor_pattern_mod(f, cert.witness);
    return pat.degrees.size() == 1 && pat.degrees[0] == n;
  }
  if (cert.method == "degree-intersection" || cert.method == "lifting") {
    std::set<int> possible;
    for (int d = 1; d < n; ++d) possible.insert(d);
    for (const auto& pat : cert.patterns) {
      FactorPattern again = factor_pattern_mod(f, pat.prime);
      if (again.degrees != pat.degrees || again.degrees.empty()) return false;
      std::set<int> sums = subset_sums(again.degrees, n), meet;
      std::set_intersection(possible.begin(), possible.end(), sums.begin(), sums.end(), std::inserter(meet, meet.end()));
      possible = std::move(meet);
    }
    if (cert.method == "degree-intersection") return possible.empty();
    std::vector<int> listed(possible.begin(), possible.end());
    if (listed != cert.possible_degrees) return false;
    return lift_and_recombine(f, cert.witness, possible, ~std::uint64_t{0}).verdict == Verdict::Irreducible;
  }
  return false;
}

// ---------------------------------------------------------------- square-free structure

std::vector<IntPoly> squarefree_decomposition(const IntPoly& f_in) {
  if (f_in.degree() < 1) throw InvalidArgument("squarefree_decomposition: degree must be at least 1");
  const IntPoly f = f_in.primitive_part();
  // A single good prime of full degree proves f square-free.
  u64 p = 1000;
  for (int tries = 0; tries < 8; ++tries) {
    p = next_prime(p);
    if (good_prime(f, p, nullptr)) return {f};
  }
  // Yun's algorithm over Q.
  RatPoly F(f);
  RatPoly Fd = F.derivative();
  RatPoly a0 = gcd(F, Fd);
  RatPoly b, c, rem;
  divmod(F, a0, b, rem);
  divmod(Fd, a0, c, rem);
  RatPoly d = c - b.derivative();
  std::vector<IntPoly> out;
  while (b.degree() > 0) {
    RatPoly a = gcd(b, d);
    out.push_back(a.clear_denominators().primitive_part());
    RatPoly nb, nc;
    divmod(b, a, nb, rem);
    divmod(d, a, nc, rem);
    b = std::move(nb);
    d = nc - b.derivative();
  }
  return out;
}

PerfectPower perfect_power_structure(const IntPoly& f) {
  if (f.degree() < 1) throw InvalidArgument("perfect_power_structure: degree must be at least 1");
  std::vector<IntPoly> parts = squarefree_decomposition(f);
  unsigned e = 0;
  for (std::size_t i = 0; i < parts.size(); ++i)
    if (parts[i].degree() > 0) e = std::gcd(e, static_cast<unsigned>(i + 1));
  PerfectPower out;
  out.exponent = e;
  IntPoly base = IntPoly::constant(1);
  for (std::size_t i = 0; i < parts.size(); ++i)
    if (parts[i].degree() > 0) base = base * pow(parts[i], static_cast<unsigned>(i + 1) / e);
  out.base = base.primitive_part();
  IntPoly be = pow(out.base, e);
  out.scale = mpq_class(f.leading(), be.leading());
  out.scale.canonicalize();
  if (mpz_class(out.scale.get_den()) * f != mpz_class(out.scale.get_num()) * be)
    throw InternalError("perfect_power_structure: reconstruction mismatch");
  return out;
}

}  // namespace partrace
