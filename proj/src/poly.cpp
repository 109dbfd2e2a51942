#include "gvf/poly.hpp"

#include <algorithm>
#include <map>

namespace gvf {

// ---------------- Z[x] ----------------

namespace zx {

int deg(const PolyZ& f) { return static_cast<int>(f.size()) - 1; }

void trim(PolyZ& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

bool is_monic(const PolyZ& f) { return !f.empty() && f.back() == 1; }

PolyZ add(const PolyZ& a, const PolyZ& b) {
  PolyZ r(std::max(a.size(), b.size()), Int(0));
  for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  trim(r);
  return r;
}

PolyZ sub(const PolyZ& a, const PolyZ& b) {
  PolyZ r(std::max(a.size(), b.size()), Int(0));
  for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  trim(r);
  return r;
}

PolyZ mul(const PolyZ& a, const PolyZ& b) {
  if (a.empty() || b.empty()) return {};
  PolyZ r(a.size() + b.size() - 1, Int(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  trim(r);
  return r;
}

PolyZ neg(const PolyZ& a) {
  PolyZ r = a;
  for (auto& c : r) c = -c;
  return r;
}

PolyZ derivative(const PolyZ& f) {
  PolyZ r;
  for (size_t i = 1; i < f.size(); ++i) r.push_back(f[i] * Int(i));
  trim(r);
  return r;
}

Int eval(const PolyZ& f, const Int& x) {
  Int r = 0;
  for (size_t i = f.size(); i-- > 0;) r = r * x + f[i];
  return r;
}

std::string to_string(const PolyZ& f, const std::string& var) {
  if (f.empty()) return "0";
  std::string s;
  for (size_t i = f.size(); i-- > 0;) {
    const Int& c = f[i];
    if (c == 0) continue;
    Int a = abs(c);
    if (s.empty()) {
      if (c < 0) s += "-";
    } else {
      s += c < 0 ? "-" : "+";
    }
    bool coeff_one = (a == 1) && i > 0;
    if (!coeff_one) s += a.get_str();
    if (i > 0) {
      if (!coeff_one) s += "*";
      s += var;
      if (i > 1) s += "^" + std::to_string(i);
    }
  }
  return s.empty() ? "0" : s;
}

}  // namespace zx

// ---------------- Q[x] ----------------

namespace qx {

int deg(const PolyQ& f) { return static_cast<int>(f.size()) - 1; }

void trim(PolyQ& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

PolyQ from_z(const PolyZ& f) {
  PolyQ r;
  r.reserve(f.size());
  for (auto& c : f) r.emplace_back(c);
  return r;
}

PolyQ add(const PolyQ& a, const PolyQ& b) {
  PolyQ r(std::max(a.size(), b.size()), Rat(0));
  for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  trim(r);
  return r;
}

PolyQ sub(const PolyQ& a, const PolyQ& b) {
  PolyQ r(std::max(a.size(), b.size()), Rat(0));
  for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  trim(r);
  return r;
}

PolyQ mul(const PolyQ& a, const PolyQ& b) {
  if (a.empty() || b.empty()) return {};
  PolyQ r(a.size() + b.size() - 1, Rat(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  trim(r);
  return r;
}

PolyQ scale(const Rat& c, const PolyQ& a) {
  PolyQ r = a;
  for (auto& x : r) x *= c;
  trim(r);
  return r;
}

std::pair<PolyQ, PolyQ> divmod(const PolyQ& a, const PolyQ& b) {
  if (b.empty()) throw GvfError(Err::Internal, "poly division by zero");
  PolyQ rem = a, quo;
  int db = deg(b);
  if (deg(a) >= db) quo.assign(deg(a) - db + 1, Rat(0));
  while (deg(rem) >= db) {
    int k = deg(rem) - db;
    Rat c = rem.back() / b.back();
    quo[k] = c;
    for (int i = 0; i <= db; ++i) rem[k + i] -= c * b[i];
    trim(rem);
  }
  trim(quo);
  return {quo, rem};
}

PolyQ gcd_monic(const PolyQ& a_in, const PolyQ& b_in) {
  PolyQ a = a_in, b = b_in;
  trim(a);
  trim(b);
  while (!b.empty()) {
    PolyQ r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty() && a.back() != 1) {
    Rat inv = 1 / a.back();
    for (auto& c : a) c *= inv;
  }
  return a;
}

PolyQ derivative(const PolyQ& f) {
  PolyQ r;
  for (size_t i = 1; i < f.size(); ++i) r.push_back(f[i] * Rat(Int(i)));
  trim(r);
  return r;
}

PolyQ squarefree_part(const PolyQ& f) {
  if (deg(f) <= 0) return f;
  PolyQ g = gcd_monic(f, derivative(f));
  if (deg(g) == 0) return f;
  return divmod(f, g).first;
}

Rat eval(const PolyQ& f, const Rat& x) {
  Rat r = 0;
  for (size_t i = f.size(); i-- > 0;) r = r * x + f[i];
  return r;
}

std::pair<PolyZ, Int> clear_denominators(const PolyQ& f) {
  Int den = 1;
  for (auto& c : f) den = lcm(den, Int(c.get_den()));
  PolyZ g;
  g.reserve(f.size());
  for (auto& c : f) {
    Rat scaled = c * Rat(den);
    g.push_back(Int(scaled.get_num()));
  }
  zx::trim(g);
  return {g, den};
}

}  // namespace qx

// ---------------- (Z/m)[x] ----------------

namespace fx {

int deg(const PolyF& f) { return static_cast<int>(f.size()) - 1; }

void trim(PolyF& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

namespace {
Int md(const Int& a, const Int& m) { return ((a % m) + m) % m; }
}  // namespace

PolyF reduce(const PolyZ& f, const Int& m) {
  PolyF r;
  r.reserve(f.size());
  for (auto& c : f) r.push_back(md(c, m));
  trim(r);
  return r;
}

PolyF add(const PolyF& a, const PolyF& b, const Int& m) {
  PolyF r(std::max(a.size(), b.size()), Int(0));
  for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] = md(r[i] + b[i], m);
  for (auto& c : r) c = md(c, m);
  trim(r);
  return r;
}

PolyF sub(const PolyF& a, const PolyF& b, const Int& m) {
  PolyF r(std::max(a.size(), b.size()), Int(0));
  for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  for (auto& c : r) c = md(c, m);
  trim(r);
  return r;
}

PolyF mul(const PolyF& a, const PolyF& b, const Int& m) {
  if (a.empty() || b.empty()) return {};
  PolyF r(a.size() + b.size() - 1, Int(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  for (auto& c : r) c = md(c, m);
  trim(r);
  return r;
}

PolyF scale(const Int& c, const PolyF& a, const Int& m) {
  PolyF r = a;
  for (auto& x : r) x = md(x * c, m);
  trim(r);
  return r;
}

std::pair<PolyF, PolyF> divmod_monic(const PolyF& a, const PolyF& b, const Int& m) {
  if (b.empty() || b.back() != 1)
    throw GvfError(Err::Internal, "divmod_monic: divisor not monic");
  PolyF rem = a, quo;
  int db = deg(b);
  if (deg(a) >= db) quo.assign(deg(a) - db + 1, Int(0));
  while (deg(rem) >= db) {
    int k = deg(rem) - db;
    Int c = rem.back();
    quo[k] = c;
    for (int i = 0; i <= db; ++i) rem[k + i] = md(rem[k + i] - c * b[i], m);
    trim(rem);
  }
  trim(quo);
  return {quo, rem};
}

PolyF make_monic(const PolyF& f, const Int& m) {
  if (f.empty() || f.back() == 1) return f;
  Int inv;
  if (mpz_invert(inv.get_mpz_t(), f.back().get_mpz_t(), m.get_mpz_t()) == 0)
    throw GvfError(Err::Internal, "make_monic: leading coeff not invertible");
  return scale(inv, f, m);
}

PolyF gcd(const PolyF& a_in, const PolyF& b_in, const Int& m) {
  PolyF a = a_in, b = b_in;
  trim(a);
  trim(b);
  while (!b.empty()) {
    PolyF bm = make_monic(b, m);
    PolyF r = divmod_monic(a, bm, m).second;
    a = std::move(bm);
    b = std::move(r);
  }
  return make_monic(a, m);
}

PolyF powmod(const PolyF& base, const Int& e, const PolyF& mod, const Int& m) {
  PolyF result{Int(1)};
  PolyF b = divmod_monic(base, mod, m).second;
  size_t bits = e == 0 ? 0 : mpz_sizeinbase(e.get_mpz_t(), 2);
  for (size_t i = bits; i-- > 0;) {
    result = divmod_monic(mul(result, result, m), mod, m).second;
    if (mpz_tstbit(e.get_mpz_t(), i))
      result = divmod_monic(mul(result, b, m), mod, m).second;
  }
  return result;
}

Int eval(const PolyF& f, const Int& x, const Int& m) {
  Int r = 0;
  for (size_t i = f.size(); i-- > 0;) r = md(r * x + f[i], m);
  return r;
}

PolyF derivative(const PolyF& f, const Int& m) {
  PolyF r;
  for (size_t i = 1; i < f.size(); ++i) r.push_back(md(f[i] * Int(i), m));
  trim(r);
  return r;
}

bool equal(const PolyF& a, const PolyF& b) { return a == b; }

bool less(const PolyF& a, const PolyF& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return false;
}

std::string to_string(const PolyF& f, const std::string& var) {
  if (f.empty()) return "0";
  std::string s;
  for (size_t i = f.size(); i-- > 0;) {
    const Int& c = f[i];
    if (c == 0) continue;
    if (!s.empty()) s += "+";
    bool coeff_one = (c == 1) && i > 0;
    if (!coeff_one) s += c.get_str();
    if (i > 0) {
      if (!coeff_one) s += "*";
      s += var;
      if (i > 1) s += "^" + std::to_string(i);
    }
  }
  return s.empty() ? "0" : s;
}

namespace {

// p-th root of a polynomial all of whose exponents are divisible by p
// (Frobenius fixes F_p pointwise, so coefficients carry over unchanged).
PolyF pth_root(const PolyF& f, const Int& p) {
  if (f.empty()) return f;
  long pl = p.get_si();
  PolyF r;
  for (size_t i = 0; i < f.size(); i += pl) r.push_back(f[i]);
  trim(r);
  return r;
}

// squarefree decomposition in characteristic p
void squarefree_decomp(const PolyF& f, const Int& p, long mult,
                       std::map<std::vector<Int>, long>& out) {
  PolyF d = derivative(f, p);
  if (d.empty()) {
    // f is a p-th power
    if (deg(f) == 0) return;
    squarefree_decomp(pth_root(f, p), p, mult * p.get_si(), out);
    return;
  }
  PolyF c = gcd(f, d, p);
  PolyF w = divmod_monic(f, c, p).first;
  long i = 1;
  while (deg(w) > 0) {
    PolyF y = gcd(w, c, p);
    PolyF z = divmod_monic(w, y, p).first;
    if (deg(z) > 0) out[z] += mult * i;
    ++i;
    w = std::move(y);
    c = divmod_monic(c, w, p).first;
  }
  if (deg(c) > 0) squarefree_decomp(c, p, mult, out);  // remaining p-th power
}

PolyF x_poly() { return PolyF{Int(0), Int(1)}; }

// distinct-degree factorization of a squarefree monic f
std::vector<std::pair<PolyF, int>> ddf(const PolyF& f_in, const Int& p) {
  std::vector<std::pair<PolyF, int>> out;
  PolyF f = f_in;
  PolyF h = divmod_monic(x_poly(), f, p).second;  // x mod f
  int d = 0;
  while (deg(f) > 0) {
    ++d;
    if (2 * d > deg(f)) {
      out.emplace_back(f, deg(f));  // what is left is irreducible
      break;
    }
    h = powmod(h, p, f, p);  // x^(p^d) mod f
    PolyF hx = sub(h, x_poly(), p);
    PolyF g = gcd(hx, f, p);
    if (deg(g) > 0) {
      out.emplace_back(g, d);
      f = divmod_monic(f, g, p).first;
      h = divmod_monic(h, f, p).second;
    }
  }
  return out;
}

// equal-degree splitting (Cantor–Zassenhaus) of monic squarefree f whose
// irreducible factors all have degree d
void edf(const PolyF& f, int d, const Int& p, Rng& rng, std::vector<PolyF>& out) {
  if (deg(f) == d) {
    out.push_back(f);
    return;
  }
  int n = deg(f);
  while (true) {
    PolyF a;
    for (int i = 0; i < n; ++i) a.push_back(rng.below(p));
    trim(a);
    if (deg(a) < 1) continue;
    PolyF u;
    if (p == 2) {
      // trace map over F_{2^d}
      PolyF t = divmod_monic(a, f, p).second;
      PolyF acc = t;
      for (int i = 1; i < d; ++i) {
        t = powmod(t, 2, f, p);
        acc = add(acc, t, p);
      }
      u = gcd(acc, f, p);
    } else {
      Int e;
      mpz_pow_ui(e.get_mpz_t(), p.get_mpz_t(), d);
      e = (e - 1) / 2;
      PolyF t = powmod(a, e, f, p);
      t = sub(t, PolyF{Int(1)}, p);
      u = gcd(t, f, p);
    }
    if (deg(u) > 0 && deg(u) < deg(f)) {
      edf(u, d, p, rng, out);
      edf(divmod_monic(f, u, p).first, d, p, rng, out);
      return;
    }
  }
}

}  // namespace

std::vector<std::pair<PolyF, int>> factor(const PolyF& f_in, const Int& p,
                                          std::uint64_t seed) {
  PolyF f = f_in;
  trim(f);
  if (f.empty()) throw GvfError(Err::Input, "factor: zero polynomial");
  f = make_monic(f, p);
  std::vector<std::pair<PolyF, int>> result;
  if (deg(f) == 0) return result;
  std::map<std::vector<Int>, long> sq;
  squarefree_decomp(f, p, 1, sq);
  Rng rng(seed ^ 0x9e3779b97f4a7c15ULL);
  for (auto& [g, mult] : sq) {
    for (auto& [h, d] : ddf(g, p)) {
      std::vector<PolyF> irr;
      edf(h, d, p, rng, irr);
      for (auto& q : irr) result.emplace_back(q, static_cast<int>(mult));
    }
  }
  std::sort(result.begin(), result.end(),
            [](const auto& a, const auto& b) { return less(a.first, b.first); });
  return result;
}

bool is_irreducible(const PolyF& f, const Int& p) {
  auto fs = factor(f, p);
  return fs.size() == 1 && fs[0].second == 1;
}

}  // namespace fx

// ---------------- Hensel lifting ----------------

namespace {

// extended Euclid over F_p[x]: s*a + t*b = 1 for coprime a, b
std::pair<PolyF, PolyF> bezout(const PolyF& a, const PolyF& b, const Int& p) {
  PolyF r0 = a, r1 = b;
  PolyF s0{Int(1)}, s1, t0, t1{Int(1)};
  while (!r1.empty()) {
    PolyF r1m = fx::make_monic(r1, p);
    Int lead_inv;
    // divmod against monic r1m, then undo the scaling in the quotient
    auto [q, r] = fx::divmod_monic(r0, r1m, p);
    mpz_invert(lead_inv.get_mpz_t(), r1.back().get_mpz_t(), p.get_mpz_t());
    q = fx::scale(lead_inv, q, p);
    PolyF s2 = fx::sub(s0, fx::mul(q, s1, p), p);
    PolyF t2 = fx::sub(t0, fx::mul(q, t1, p), p);
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (fx::deg(r0) != 0)
    throw GvfError(Err::NotSquarefree, "hensel: factors not coprime mod p");
  Int inv;
  mpz_invert(inv.get_mpz_t(), r0[0].get_mpz_t(), p.get_mpz_t());
  return {fx::scale(inv, s0, p), fx::scale(inv, t0, p)};
}

// One quadratic Hensel chain: lift f = g*h from mod p to mod p^N.
std::pair<PolyF, PolyF> lift_pair(const PolyZ& f, PolyF g, PolyF h, PolyF s,
                                  PolyF t, const Int& p, long N) {
  long k = 1;
  while (k < N) {
    long knext = std::min(2 * k, N);
    Int m;
    mpz_pow_ui(m.get_mpz_t(), p.get_mpz_t(), knext);
    PolyF fm = fx::reduce(f, m);
    PolyF e = fx::sub(fm, fx::mul(g, h, m), m);
    auto [q, r] = fx::divmod_monic(fx::mul(s, e, m), h, m);
    g = fx::add(g, fx::add(fx::mul(t, e, m), fx::mul(q, g, m), m), m);
    h = fx::add(h, r, m);
    PolyF b = fx::sub(fx::add(fx::mul(s, g, m), fx::mul(t, h, m), m),
                      PolyF{Int(1)}, m);
    auto [c, d] = fx::divmod_monic(fx::mul(s, b, m), h, m);
    s = fx::sub(s, d, m);
    t = fx::sub(fx::sub(t, fx::mul(t, b, m), m), fx::mul(c, g, m), m);
    k = knext;
  }
  return {g, h};
}

void hensel_rec(const PolyZ& f, const std::vector<PolyF>& factors, const Int& p,
                long N, std::vector<PolyZ>& out) {
  if (factors.size() == 1) {
    Int m;
    mpz_pow_ui(m.get_mpz_t(), p.get_mpz_t(), N);
    out.push_back(fx::reduce(f, m));
    return;
  }
  size_t half = factors.size() / 2;
  PolyF g{Int(1)}, h{Int(1)};
  for (size_t i = 0; i < half; ++i) g = fx::mul(g, factors[i], p);
  for (size_t i = half; i < factors.size(); ++i) h = fx::mul(h, factors[i], p);
  auto [s, t] = bezout(g, h, p);
  auto [G, H] = lift_pair(f, g, h, s, t, p, N);
  hensel_rec(G, {factors.begin(), factors.begin() + half}, p, N, out);
  hensel_rec(H, {factors.begin() + half, factors.end()}, p, N, out);
}

}  // namespace

std::vector<PolyZ> hensel_lift(const PolyZ& f, const std::vector<PolyF>& factors,
                               const Int& p, long N) {
  if (!zx::is_monic(f)) throw GvfError(Err::Input, "hensel_lift: f not monic");
  if (N < 1) throw GvfError(Err::Input, "hensel_lift: N must be >= 1");
  PolyF fp = fx::reduce(f, p);
  // squarefreeness mod p (this also rules out repeated input factors)
  if (fx::deg(fx::gcd(fp, fx::derivative(fp, p), p)) != 0)
    throw GvfError(Err::NotSquarefree, "hensel_lift: f not squarefree mod p");
  PolyF prod{Int(1)};
  for (auto& g : factors) {
    if (g.empty() || g.back() != 1)
      throw GvfError(Err::Input, "hensel_lift: factors must be monic");
    prod = fx::mul(prod, g, p);
  }
  if (!fx::equal(prod, fp))
    throw GvfError(Err::Input, "hensel_lift: factors do not multiply to f mod p");
  for (size_t i = 0; i < factors.size(); ++i)
    for (size_t j = i + 1; j < factors.size(); ++j)
      if (fx::equal(factors[i], factors[j]))
        throw GvfError(Err::NotSquarefree, "hensel_lift: repeated factor");
  std::vector<PolyZ> out;
  hensel_rec(f, factors, p, N, out);
  return out;
}

// ---------------- resultant ----------------

Int resultant(const PolyZ& f_in, const PolyZ& g_in) {
  PolyZ f = f_in, g = g_in;
  zx::trim(f);
  zx::trim(g);
  if (f.empty() || g.empty()) return 0;
  int n = zx::deg(f), m = zx::deg(g);
  if (m == 0) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), g[0].get_mpz_t(), n);
    return r;
  }
  if (n == 0) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), f[0].get_mpz_t(), m);
    return r;
  }
  int dim = n + m;
  std::vector<std::vector<Int>> M(dim, std::vector<Int>(dim, Int(0)));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j <= n; ++j) M[i][i + j] = f[n - j];
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= m; ++j) M[m + i][i + j] = g[m - j];
  // Bareiss fraction-free elimination
  Int prev = 1;
  int sign = 1;
  for (int k = 0; k < dim - 1; ++k) {
    if (M[k][k] == 0) {
      int piv = -1;
      for (int r = k + 1; r < dim; ++r)
        if (M[r][k] != 0) {
          piv = r;
          break;
        }
      if (piv < 0) return 0;
      std::swap(M[k], M[piv]);
      sign = -sign;
    }
    for (int i = k + 1; i < dim; ++i) {
      for (int j = k + 1; j < dim; ++j) {
        M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) / prev;
      }
      M[i][k] = 0;
    }
    prev = M[k][k];
  }
  return sign > 0 ? M[dim - 1][dim - 1] : Int(-M[dim - 1][dim - 1]);
}

}  // namespace gvf
