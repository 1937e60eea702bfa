#include "partrace/masser.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <numeric>
#include <regex>
#include <sstream>

#include "partrace/errors.hpp"
#include "partrace/modeval.hpp"
#include "partrace/parallel.hpp"

namespace partrace {

std::int64_t psi(std::int64_t m) {
  if (m < 1) throw InvalidArgument("psi: m must be positive");
  std::int64_t r = m, x = m;
  for (std::int64_t p = 2; p * p <= x; ++p) {
    if (x % p) continue;
    r = r / p * (p + 1);
    while (x % p == 0) x /= p;
  }
  if (x > 1) r = r / x * (x + 1);
  return r;
}

mpz_class ModPoly::at(int i, int j) const {
  auto it = coeffs.find({i, j});
  return it == coeffs.end() ? mpz_class(0) : it->second;
}

int ModPoly::degree_x() const {
  int d = -1;
  for (const auto& [k, v] : coeffs) d = std::max(d, k.first);
  return d;
}

int ModPoly::degree_y() const {
  int d = -1;
  for (const auto& [k, v] : coeffs) d = std::max(d, k.second);
  return d;
}

bool ModPoly::is_symmetric() const {
  for (const auto& [k, v] : coeffs)
    if (at(k.second, k.first) != v) return false;
  return true;
}

void ModPoly::validate() const {
  const int n = static_cast<int>(psi(m));
  if (m > 1 && !is_symmetric()) throw InvariantViolation("modular polynomial is not symmetric");
  if (degree_x() != n || degree_y() != n) throw InvariantViolation("modular polynomial has the wrong degree");
  if (m > 1 && at(n, 0) != 1) throw InvariantViolation("modular polynomial is not monic");
}

BigComplex ModPoly::eval(const BigComplex& x, const BigComplex& y) const {
  const mpfr_prec_t prec = x.prec();
  const int dx = degree_x(), dy = degree_y();
  BigComplex total(prec);
  for (int i = dx; i >= 0; --i) {
    BigComplex row(prec);
    for (int j = dy; j >= 0; --j) {
      row *= y;
      mpz_class c = at(i, j);
      if (c != 0) row += BigComplex(c, prec);
    }
    total *= x;
    total += row;
  }
  return total;
}

// ---------------------------------------------------------------- construction mod p

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

struct Zp {
  u64 p;
  u64 mul(u64 a, u64 b) const { return a * b % p; }
  u64 add(u64 a, u64 b) const { u64 s = a + b; return s >= p ? s - p : s; }
  u64 sub(u64 a, u64 b) const { return a >= b ? a - b : a + p - b; }
  u64 neg(u64 a) const { return a ? p - a : 0; }
  u64 inv(u64 a) const {
    mpz_class x = static_cast<unsigned long>(a), m = static_cast<unsigned long>(p), r;
    mpz_invert(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
    return r.get_ui();
  }
  u64 from_long(long v) const {
    long r = v % static_cast<long>(p);
    return static_cast<u64>(r < 0 ? r + static_cast<long>(p) : r);
  }
};

using Series = std::vector<u64>;

// Truncated product of power series, length `len`.
Series mul_trunc(const Series& a, const Series& b, std::size_t len, const Zp& Z) {
  std::vector<u128> acc(len, 0);
  for (std::size_t i = 0; i < a.size() && i < len; ++i) {
    if (!a[i]) continue;
    const std::size_t lim = std::min(b.size(), len - i);
    for (std::size_t j = 0; j < lim; ++j) acc[i + j] += static_cast<u128>(a[i] * b[j]);
  }
  Series r(len);
  for (std::size_t i = 0; i < len; ++i) r[i] = static_cast<u64>(acc[i] % Z.p);
  return r;
}

// q j(tau) as a power series mod p: E4^3 / prod (1 - q^n)^24.
Series q_times_j(std::size_t len, const Zp& Z) {
  Series e4(len, 0);
  e4[0] = 1;
  std::vector<u64> s3(len, 0);
  for (std::size_t d = 1; d < len; ++d) {
    u64 d3 = Z.mul(Z.mul(d % Z.p, d % Z.p), d % Z.p);
    for (std::size_t n = d; n < len; n += d) s3[n] = Z.add(s3[n], d3);
  }
  for (std::size_t n = 1; n < len; ++n) e4[n] = Z.mul(240, s3[n]);
  Series pent(len, 0);
  for (long k = 0;; ++k) {
    bool any = false;
    for (long e : {k * (3 * k - 1) / 2, k * (3 * k + 1) / 2}) {
      if (e < static_cast<long>(len)) {
        pent[static_cast<std::size_t>(e)] = (k & 1) ? Z.p - 1 : 1;
        any = true;
      }
      if (k == 0) break;
    }
    if (!any) break;
  }
  Series p2 = mul_trunc(pent, pent, len, Z);
  Series p4 = mul_trunc(p2, p2, len, Z);
  Series p8 = mul_trunc(p4, p4, len, Z);
  Series p16 = mul_trunc(p8, p8, len, Z);
  Series den = mul_trunc(p16, p8, len, Z);
  Series num = mul_trunc(mul_trunc(e4, e4, len, Z), e4, len, Z);
  // den[0] = 1
  Series out(len, 0);
  for (std::size_t n = 0; n < len; ++n) {
    u128 acc = 0;
    for (std::size_t k = 1; k <= n; ++k) acc += static_cast<u128>(den[k] * out[n - k]);
    out[n] = Z.sub(num[n], static_cast<u64>(acc % Z.p));
  }
  return out;
}

struct CosetGroup {
  std::int64_t a, d, g, size;
};

std::vector<CosetGroup> coset_groups(std::int64_t m) {
  std::vector<CosetGroup> out;
  for (std::int64_t a = 1; a <= m; ++a) {
    if (m % a) continue;
    std::int64_t d = m / a, g = std::gcd(a, d), size = 0;
    for (std::int64_t b = 0; b < d; ++b)
      if (std::gcd(b, g) == 1) ++size;
    out.push_back({a, d, g, size});
  }
  return out;
}

int mobius(std::int64_t n) {
  int mu = 1;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    n /= p;
    if (n % p == 0) return 0;
    mu = -mu;
  }
  if (n > 1) mu = -mu;
  return mu;
}

// Laurent series with exponents -V .. E stored at index exponent + V.
struct Laurent {
  std::int64_t V, E;
  std::size_t width() const { return static_cast<std::size_t>(V + E + 1); }
  Series mul(const Series& a, const Series& b, const Zp& Z) const {
    const std::size_t W = width();
    std::vector<u128> acc(W, 0);
    for (std::size_t i = 0; i < W; ++i) {
      if (!a[i]) continue;
      for (std::size_t j = 0; j < W; ++j) {
        if (!b[j]) continue;
        std::int64_t k = static_cast<std::int64_t>(i + j) - V;
        if (k < 0) throw InternalError("modular_polynomial: pole order exceeds the bound");
        if (k >= static_cast<std::int64_t>(W)) break;
        acc[static_cast<std::size_t>(k)] += static_cast<u128>(a[i] * b[j]);
      }
    }
    Series r(W);
    for (std::size_t i = 0; i < W; ++i) r[i] = static_cast<u64>(acc[i] % Z.p);
    return r;
  }
};

// Dense (psi+1)^2 table of Phi mod p, index i * (n + 1) + r for x^i y^r.
std::vector<u64> modpoly_mod_p(std::int64_t m, const Zp& Z) {
  const std::int64_t n = psi(m);
  const std::vector<CosetGroup> groups = coset_groups(m);
  // Pole bound: sum over cosets of a / d.
  mpq_class pole = 0;
  std::int64_t kmax = 0;
  for (const auto& g : groups) {
    pole += mpq_class(g.size * g.a, g.d);
    kmax = std::max(kmax, g.size);
  }
  pole.canonicalize();
  mpz_class vceil;
  mpz_cdiv_q(vceil.get_mpz_t(), pole.get_num_mpz_t(), pole.get_den_mpz_t());
  const std::int64_t V = vceil.get_si();
  const std::int64_t N = n + 50;
  const std::int64_t E = N + V + 2;
  const Laurent L{V, E};
  kmax = std::max(kmax, V);

  std::int64_t nmax = 0;
  for (const auto& g : groups) nmax = std::max(nmax, E * g.d / g.a);
  const std::size_t len = static_cast<std::size_t>(nmax + kmax + 1);
  // jpow[k][t]: coefficient of q^(t - k) in j^k.
  std::vector<Series> jpow(static_cast<std::size_t>(kmax) + 1);
  Series qj = q_times_j(len, Z);
  jpow[0] = Series(len, 0);
  jpow[0][0] = 1;
  for (std::int64_t k = 1; k <= kmax; ++k) jpow[static_cast<std::size_t>(k)] = mul_trunc(jpow[static_cast<std::size_t>(k - 1)], qj, len, Z);

  // Per group: prod_b (X - j((a tau + b)/d)) with Laurent coefficients, ascending in X.
  std::vector<std::vector<Series>> group_polys(groups.size());
  parallel_for(groups.size(), [&](std::size_t gi) {
    const CosetGroup& G = groups[gi];
    std::vector<std::pair<std::int64_t, int>> divs;  // (d / e, mu(e)) for e | g squarefree
    for (std::int64_t e = 1; e <= G.g; ++e)
      if (G.g % e == 0 && mobius(e) != 0) divs.push_back({G.d / e, mobius(e)});
    std::vector<Series> psum(static_cast<std::size_t>(G.size) + 1, Series(L.width(), 0));
    for (std::int64_t k = 1; k <= G.size; ++k) {
      const Series& jk = jpow[static_cast<std::size_t>(k)];
      Series& out = psum[static_cast<std::size_t>(k)];
      for (std::int64_t nn = -k; nn * G.a <= E * G.d; ++nn) {
        long S = 0;
        for (const auto& [de, mu] : divs)
          if (nn % de == 0) S += mu * de;
        if (S == 0) continue;
        const std::int64_t expo = nn * G.a / G.d;  // exact when S != 0
        if (expo < -V) throw InternalError("modular_polynomial: pole order exceeds the bound");
        u64 c = jk[static_cast<std::size_t>(nn + k)];
        std::size_t idx = static_cast<std::size_t>(expo + V);
        out[idx] = Z.add(out[idx], Z.mul(c, Z.from_long(S)));
      }
    }
    // Newton: k e_k = sum_{i=1}^k (-1)^(i-1) e_{k-i} p_i.
    std::vector<Series> e(static_cast<std::size_t>(G.size) + 1, Series(L.width(), 0));
    e[0][static_cast<std::size_t>(V)] = 1;
    for (std::int64_t k = 1; k <= G.size; ++k) {
      Series acc(L.width(), 0);
      for (std::int64_t i = 1; i <= k; ++i) {
        Series t = L.mul(e[static_cast<std::size_t>(k - i)], psum[static_cast<std::size_t>(i)], Z);
        for (std::size_t x = 0; x < acc.size(); ++x) acc[x] = (i & 1) ? Z.add(acc[x], t[x]) : Z.sub(acc[x], t[x]);
      }
      u64 ik = Z.inv(static_cast<u64>(k) % Z.p);
      for (auto& x : acc) x = Z.mul(x, ik);
      e[static_cast<std::size_t>(k)] = std::move(acc);
    }
    // coefficient of X^(size - k) is (-1)^k e_k
    std::vector<Series> poly(static_cast<std::size_t>(G.size) + 1);
    for (std::int64_t k = 0; k <= G.size; ++k) {
      Series c = e[static_cast<std::size_t>(k)];
      if (k & 1)
        for (auto& x : c) x = Z.neg(x);
      poly[static_cast<std::size_t>(G.size - k)] = std::move(c);
    }
    group_polys[gi] = std::move(poly);
  });

  std::vector<Series> prod{group_polys.front()};
  for (std::size_t gi = 1; gi < groups.size(); ++gi) {
    const auto& b = group_polys[gi];
    std::vector<Series> next(prod.size() + b.size() - 1, Series(L.width(), 0));
    for (std::size_t i = 0; i < prod.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j) {
        Series t = L.mul(prod[i], b[j], Z);
        for (std::size_t x = 0; x < t.size(); ++x) next[i + j][x] = Z.add(next[i + j][x], t[x]);
      }
    prod = std::move(next);
  }
  if (static_cast<std::int64_t>(prod.size()) != n + 1) throw InternalError("modular_polynomial: wrong degree");

  std::vector<u64> table(static_cast<std::size_t>((n + 1) * (n + 1)), 0);
  for (std::int64_t i = 0; i <= n; ++i) {
    Series C = prod[static_cast<std::size_t>(i)];
    for (std::int64_t r = V; r >= 1; --r) {
      u64 c = C[static_cast<std::size_t>(V - r)];
      if (!c) continue;
      if (r > n) throw InternalError("modular_polynomial: coefficient of too high degree in j");
      table[static_cast<std::size_t>(i * (n + 1) + r)] = c;
      const Series& jr = jpow[static_cast<std::size_t>(r)];
      for (std::int64_t expo = -r; expo <= N; ++expo) {
        std::size_t idx = static_cast<std::size_t>(expo + V);
        C[idx] = Z.sub(C[idx], Z.mul(c, jr[static_cast<std::size_t>(expo + r)]));
      }
    }
    table[static_cast<std::size_t>(i * (n + 1))] = C[static_cast<std::size_t>(V)];
    C[static_cast<std::size_t>(V)] = 0;
    for (std::int64_t expo = -V; expo <= N; ++expo)
      if (C[static_cast<std::size_t>(expo + V)] != 0)
        throw InternalError("modular_polynomial: elimination residual does not vanish");
  }
  return table;
}

}  // namespace

ModPoly modular_polynomial(std::int64_t m, std::uint64_t prime_ceiling) {
  if (m < 1 || m > 60) throw InvalidArgument("modular_polynomial: level must be in [1, 60]");
  if (prime_ceiling < 1000 || prime_ceiling > (u64{1} << 31))
    throw InvalidArgument("modular_polynomial: prime ceiling must be in [1000, 2^31]");
  const std::int64_t n = psi(m);
  const std::size_t cells = static_cast<std::size_t>((n + 1) * (n + 1));
  std::vector<mpz_class> residue(cells, 0), previous(cells, 0);
  mpz_class modulus = 1;
  mpz_class cand = static_cast<unsigned long>(prime_ceiling);
  bool have_previous = false;
  for (int round = 0; round < 400; ++round) {
    do {
      cand -= 1;
    } while (mpz_probab_prime_p(cand.get_mpz_t(), 30) == 0);
    const u64 p = cand.get_ui();
    std::vector<u64> t = modpoly_mod_p(m, Zp{p});
    // Garner step: x += M * ((r - x) M^-1 mod p)
    mpz_class minv, pz = static_cast<unsigned long>(p);
    mpz_invert(minv.get_mpz_t(), modulus.get_mpz_t(), pz.get_mpz_t());
    for (std::size_t k = 0; k < cells; ++k) {
      mpz_class x = residue[k];
      mpz_class diff = mpz_class(static_cast<unsigned long>(t[k])) - x;
      mpz_class s = diff * minv;
      mpz_fdiv_r(s.get_mpz_t(), s.get_mpz_t(), pz.get_mpz_t());
      residue[k] = x + modulus * s;
    }
    modulus *= pz;
    mpz_class half = modulus / 2;
    std::vector<mpz_class> sym(cells);
    for (std::size_t k = 0; k < cells; ++k) sym[k] = residue[k] > half ? residue[k] - modulus : residue[k];
    if (have_previous && sym == previous) {
      ModPoly out;
      out.m = m;
      for (std::int64_t i = 0; i <= n; ++i)
        for (std::int64_t r = 0; r <= n; ++r) {
          const mpz_class& c = sym[static_cast<std::size_t>(i * (n + 1) + r)];
          if (c != 0) out.coeffs[{static_cast<int>(i), static_cast<int>(r)}] = c;
        }
      out.validate();
      return out;
    }
    previous = std::move(sym);
    have_previous = true;
  }
  throw PrecisionExhausted("modular_polynomial: CRT did not stabilize");
}

ModPoly modular_polynomial(std::int64_t m) { return modular_polynomial(m, u64{1} << 31); }

// ---------------------------------------------------------------- file format

ModPoly parse_modular_polynomial(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  ModPoly out;
  bool header = false;
  std::map<std::pair<int, int>, mpz_class> raw;
  static const std::regex head(R"(^\s*m\s*=\s*(\d+)\s*$)");
  static const std::regex entry(R"(^\s*\[\s*(\d+)\s*,\s*(\d+)\s*\]\s*([+-]?\d+)\s*$)");
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos || line[line.find_first_not_of(" \t")] == '#') continue;
    std::smatch mm;
    if (!header) {
      if (!std::regex_match(line, mm, head)) throw ParseError("modular polynomial: expected 'm = <level>' on line " + std::to_string(lineno));
      out.m = std::stoll(mm[1]);
      if (out.m < 1) throw ParseError("modular polynomial: level must be positive");
      header = true;
      continue;
    }
    if (!std::regex_match(line, mm, entry)) throw ParseError("modular polynomial: malformed entry on line " + std::to_string(lineno));
    std::pair<int, int> key{std::stoi(mm[1]), std::stoi(mm[2])};
    mpz_class c(mm[3].str().front() == '+' ? mm[3].str().substr(1) : mm[3].str());
    if (raw.count(key)) throw ParseError("modular polynomial: duplicate entry on line " + std::to_string(lineno));
    raw[key] = c;
  }
  if (!header) throw ParseError("modular polynomial: empty input");
  for (const auto& [k, v] : raw) {
    if (v == 0) continue;
    out.coeffs[k] = v;
    if (out.m > 1 && k.first != k.second) {
      auto mirror = raw.find({k.second, k.first});
      if (mirror == raw.end()) {
        if (k.first < k.second) throw InvariantViolation("modular polynomial: entries below the diagonal must be mirrored or omitted");
        out.coeffs[{k.second, k.first}] = v;
      } else if (mirror->second != v) {
        throw InvariantViolation("modular polynomial: asymmetric entries [" + std::to_string(k.first) + "," +
                                 std::to_string(k.second) + "]");
      }
    }
  }
  out.validate();
  return out;
}

ModPoly load_modular_polynomial(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_modular_polynomial(ss.str());
}

std::string format_modular_polynomial(const ModPoly& phi) {
  std::ostringstream os;
  os << "m = " << phi.m << "\n";
  for (auto it = phi.coeffs.rbegin(); it != phi.coeffs.rend(); ++it) {
    const auto& [k, v] = *it;
    if (phi.m > 1 && k.first < k.second) continue;
    os << "[" << k.first << "," << k.second << "] " << v << "\n";
  }
  return os.str();
}

void save_modular_polynomial(const ModPoly& phi, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InvalidArgument("cannot write " + path);
  out << format_modular_polynomial(phi);
}

// ---------------------------------------------------------------- Masser

BetaPolys beta_polynomials(const ModPoly& phi) {
  const int deg = phi.degree_x() + phi.degree_y();
  BetaPolys b;
  for (auto* v : {&b.b00, &b.b10, &b.b01, &b.b11, &b.b02}) v->assign(static_cast<std::size_t>(deg) + 1, 0);
  // coefficient of (x - v)^mu (y - v)^nu in x^i y^j is C(i, mu) C(j, nu) v^(i - mu + j - nu).
  for (const auto& [k, c] : phi.coeffs) {
    const long i = k.first, j = k.second;
    b.b00[static_cast<std::size_t>(i + j)] += c;
    if (i >= 1) b.b10[static_cast<std::size_t>(i + j - 1)] += c * i;
    if (j >= 1) b.b01[static_cast<std::size_t>(i + j - 1)] += c * j;
    if (i >= 1 && j >= 1) b.b11[static_cast<std::size_t>(i + j - 2)] += c * (i * j);
    if (j >= 2) b.b02[static_cast<std::size_t>(i + j - 2)] += c * (j * (j - 1) / 2);
  }
  return b;
}

namespace {

BigComplex horner(const std::vector<mpz_class>& c, const BigComplex& v) {
  const mpfr_prec_t prec = v.prec();
  BigComplex s(prec);
  for (std::size_t k = c.size(); k-- > 0;) {
    s *= v;
    if (c[k] != 0) s += BigComplex(c[k], prec);
  }
  return s;
}

// log2 of sum |c_k| |v|^k, a guide for the working precision.
double magnitude_log2(const std::vector<mpz_class>& c, double absv) {
  double best = -1e300;
  double lv = std::log2(std::max(absv, 1e-300));
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (c[k] == 0) continue;
    long e;
    double mant = mpz_get_d_2exp(&e, c[k].get_mpz_t());
    double l = std::log2(std::fabs(mant)) + static_cast<double>(e) + lv * static_cast<double>(k);
    best = std::max(best, l);
  }
  return best + std::log2(static_cast<double>(c.size()));
}

struct MasserParts {
  BetaSet betas;
  BigComplex ratio;
};

// (2 beta02 - beta11) / beta10 at j(tau), raising precision until the result carries ctx.prec bits
// or stops improving.
MasserParts masser_ratio(const BetaPolys& bp, const std::function<BigComplex(const EvalContext&)>& jfun,
                         const EvalContext& ctx) {
  BigComplex jlow = jfun(EvalContext::at(64));
  double absj = static_cast<double>(jlow.mid_abs());
  double mag = 0;
  for (const auto* v : {&bp.b10, &bp.b11, &bp.b02}) mag = std::max(mag, magnitude_log2(*v, absj));
  mpfr_prec_t wp = ctx.prec + static_cast<mpfr_prec_t>(std::max(0.0, mag)) + 64;
  Radius previous = std::numeric_limits<Radius>::infinity();
  for (int attempt = 0; attempt < 6; ++attempt) {
    EvalContext wctx = EvalContext::at(wp);
    BigComplex jv = jfun(wctx);
    MasserParts out{{horner(bp.b00, jv), horner(bp.b10, jv), horner(bp.b01, jv), horner(bp.b11, jv),
                     horner(bp.b02, jv)},
                    BigComplex(wp)};
    const Radius thresh = std::ldexp(Radius{1}, -static_cast<int>(ctx.prec / 2));
    if (out.betas.beta10.abs_upper() < thresh) throw PoleProximity("masser: beta10 vanishes");
    out.ratio = (out.betas.beta02 * 2 - out.betas.beta11) / out.betas.beta10;
    Radius want = std::ldexp(Radius{1}, -static_cast<int>(ctx.prec)) * std::max<Radius>(1, out.ratio.mid_abs());
    if (out.ratio.err() <= want) return out;
    // More bits no longer help: the radius comes from the input point itself.
    if (out.ratio.err() > previous / 2) return out;
    previous = out.ratio.err();
    double deficit = std::log2(static_cast<double>(out.ratio.err() / want));
    wp += static_cast<mpfr_prec_t>(std::isfinite(deficit) ? deficit : wp) + 64;
  }
  throw PrecisionExhausted("masser: could not reach the requested precision");
}

}  // namespace

BetaSet beta_values(const ModPoly& phi, const BigComplex& jQ, const EvalContext& ctx) {
  BetaPolys bp = beta_polynomials(phi);
  BigComplex v = jQ.with_prec(std::max(ctx.prec, jQ.prec()));
  BetaSet out{horner(bp.b00, v), horner(bp.b10, v), horner(bp.b01, v), horner(bp.b11, v), horner(bp.b02, v)};
  const Radius thresh = std::ldexp(Radius{1}, -static_cast<int>(ctx.prec / 2));
  if (out.beta01.abs_upper() < thresh) throw PoleProximity("beta_values: beta01 vanishes");
  return out;
}

bool is_special_discriminant(std::int64_t D) {
  if (D >= 0 || D % 3 != 0) return false;
  std::int64_t t = -D / 3;
  std::int64_t r = static_cast<std::int64_t>(std::llround(std::sqrt(static_cast<double>(t))));
  for (std::int64_t s = std::max<std::int64_t>(r - 2, 0); s <= r + 2; ++s)
    if (s * s == t) return true;
  return false;
}

BigComplex masser_C(const QuadForm& q, const ModPoly& phi, const EvalContext& ctx) {
  const std::int64_t D = q.discriminant();
  if (is_special_discriminant(D)) throw InvalidArgument("masser_C: special discriminant D = -3 d^2");
  if (phi.m != -D) throw InvalidArgument("masser_C: modular polynomial level must equal |D|");
  BetaPolys bp = beta_polynomials(phi);
  auto jfun = [&](const EvalContext& c) { return eval_atomic(Atomic::J, cm_point(q, c.prec + 16), c); };
  return masser_ratio(bp, jfun, ctx).ratio.with_prec(ctx.prec);
}

BigComplex eval_MD(const Discriminant& disc, const BigComplex& tau, const ModPoly& phi, const EvalContext& ctx) {
  if (is_special_discriminant(disc.D)) throw InvalidArgument("eval_MD: special discriminant D = -3 d^2");
  if (phi.m != -disc.D) throw InvalidArgument("eval_MD: modular polynomial level must equal |D|");
  BetaPolys bp = beta_polynomials(phi);
  auto jfun = [&](const EvalContext& c) { return eval_atomic(Atomic::J, tau.with_prec(std::max(c.prec, tau.prec())), c); };
  MasserParts mp = masser_ratio(bp, jfun, ctx);
  EvalContext wctx = ctx.with_extra_bits(32);
  BigComplex A = eval_modular(Modular::A, tau, wctx);
  BigComplex B = eval_modular(Modular::B, tau, wctx);
  return (A + B * mp.ratio.with_prec(wctx.prec)).with_prec(ctx.prec);
}

}  // namespace partrace
