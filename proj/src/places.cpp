#include "gvf/places.hpp"

#include <algorithm>
#include <set>
#include <utility>

namespace gvf {

namespace {

Int mod_nonneg(const Int& a, const Int& m) {
  Int r;
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

int legendre(const Int& a, const Int& p) {
  return mpz_legendre(a.get_mpz_t(), p.get_mpz_t());
}

// first primes tried when certifying irreducibility by reduction
constexpr int kIrredPrimes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37, 41,
                                43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97};

bool has_rational_root(const PolyZ& f) {
  // monic integer polynomial: rational roots are integer divisors of f[0]
  if (f[0] == 0) return true;
  std::vector<Int> divs{1};
  for (const auto& [q, e] : factor_int(f[0])) {
    std::vector<Int> next;
    for (const auto& d0 : divs) {
      Int pw = 1;
      for (int i = 0; i <= e; ++i) {
        next.push_back(d0 * pw);
        pw *= q;
      }
    }
    divs = std::move(next);
  }
  for (const auto& d0 : divs)
    for (int s : {1, -1})
      if (zx::eval(f, Int(s * d0)) == 0) return true;
  return false;
}

}  // namespace

// ---------------------------------------------------------------- carriers

CarrierPtr Carrier::rationals() {
  auto k = std::shared_ptr<Carrier>(new Carrier());
  k->type = Type::Q;
  return k;
}

CarrierPtr Carrier::quadratic(const Int& d) {
  if (d == 0 || d == 1)
    throw GvfError(Err::Input, "quadratic field needs d not in {0, 1}");
  if (!is_square_free(d))
    throw GvfError(Err::Input, "quadratic field needs squarefree d");
  auto k = std::shared_ptr<Carrier>(new Carrier());
  k->type = Type::Quadratic;
  k->d = d;
  return k;
}

CarrierPtr Carrier::number_field(const PolyZ& min_poly, bool trust_irreducible) {
  PolyZ f = min_poly;
  zx::trim(f);
  int n = zx::deg(f);
  if (n < 1 || !zx::is_monic(f))
    throw GvfError(Err::Input, "number field needs a monic min_poly of degree >= 1");
  if (n >= 2 && has_rational_root(f))
    throw GvfError(Err::Input, "min_poly is reducible (rational root)");
  if (n >= 4) {
    bool certified = false;
    for (int p : kIrredPrimes) {
      PolyF fb = fx::reduce(f, p);
      if (fx::deg(fb) != n) continue;
      if (fx::is_irreducible(fb, p)) {
        certified = true;
        break;
      }
    }
    if (!certified && !trust_irreducible)
      throw GvfError(Err::Input,
                     "could not certify irreducibility by modular reduction; "
                     "pass the trust flag if the polynomial is known irreducible");
  }
  auto k = std::shared_ptr<Carrier>(new Carrier());
  k->type = Type::NumberField;
  k->min_poly = std::move(f);
  return k;
}

CarrierPtr Carrier::function_field(const Int& p) {
  if (!is_prime(p))
    throw GvfError(Err::Input, "function field needs a prime characteristic");
  auto k = std::shared_ptr<Carrier>(new Carrier());
  k->type = Type::FunctionField;
  k->p = p;
  return k;
}

int Carrier::degree() const {
  switch (type) {
    case Type::Q:
      return 1;
    case Type::Quadratic:
      return 2;
    case Type::NumberField:
      return zx::deg(min_poly);
    case Type::FunctionField:
      return 1;
  }
  return 1;
}

bool Carrier::same_as(const Carrier& o) const {
  if (type != o.type) return false;
  switch (type) {
    case Type::Q:
      return true;
    case Type::Quadratic:
      return d == o.d;
    case Type::NumberField:
      return min_poly == o.min_poly;
    case Type::FunctionField:
      return p == o.p;
  }
  return false;
}

std::string Carrier::describe() const {
  switch (type) {
    case Type::Q:
      return "Q";
    case Type::Quadratic:
      return "Q(sqrt(" + d.get_str() + "))";
    case Type::NumberField:
      return "Q[x]/(" + zx::to_string(min_poly, "x") + ")";
    case Type::FunctionField:
      return "F_" + p.get_str() + "(t)";
  }
  return "?";
}

const std::vector<RootBox>& Carrier::roots(long prec) const {
  if (type != Type::NumberField)
    throw GvfError(Err::Internal, "roots() needs a number field carrier");
  std::lock_guard<std::mutex> lock(mu_);
  auto it = roots_.find(prec);
  if (it == roots_.end()) {
    PolyQ f = qx::from_z(min_poly);
    it = roots_.emplace(prec, complex_roots(f, prec)).first;
  }
  return it->second;
}

// ---------------------------------------------------------------- elements

namespace {

void normalize_ff(const Int& p, PolyF& num, PolyF& den) {
  fx::trim(num);
  fx::trim(den);
  if (fx::deg(den) < 0)
    throw GvfError(Err::Input, "function field element needs a nonzero denominator");
  if (fx::deg(num) < 0) {
    den = {Int(1)};
    return;
  }
  PolyF g = fx::gcd(num, den, p);
  if (fx::deg(g) > 0) {
    num = fx::divmod_monic(num, g, p).first;
    den = fx::divmod_monic(den, g, p).first;
  }
  // make the denominator monic, folding the unit into the numerator
  Int lc = den[den.size() - 1];
  if (lc != 1) {
    Int inv_lc;
    mpz_invert(inv_lc.get_mpz_t(), lc.get_mpz_t(), p.get_mpz_t());
    den = fx::scale(inv_lc, den, p);
    num = fx::scale(inv_lc, num, p);
  }
}

std::vector<Rat> pad_coeffs(std::vector<Rat> c, int n) {
  if (static_cast<int>(c.size()) > n)
    throw GvfError(Err::Input, "power-basis vector longer than the field degree");
  c.resize(n, Rat(0));
  for (auto& q : c) q.canonicalize();
  return c;
}

void require_same_carrier(const FieldElem& x, const FieldElem& y) {
  if (!x.k || !y.k || !x.k->same_as(*y.k))
    throw GvfError(Err::Input, "operands live in different carriers");
}

// coefficients * lcm(denominators) as an integer polynomial, plus the lcm
std::pair<PolyZ, Int> integral_numerator(const std::vector<Rat>& coeffs) {
  Int den = 1;
  for (const auto& q : coeffs) {
    Int d0 = q.get_den();
    Int g;
    mpz_lcm(g.get_mpz_t(), den.get_mpz_t(), d0.get_mpz_t());
    den = g;
  }
  PolyZ g;
  g.reserve(coeffs.size());
  for (const auto& q : coeffs) g.push_back(Int(q.get_num()) * (den / Int(q.get_den())));
  zx::trim(g);
  return {g, den};
}

}  // namespace

FieldElem FieldElem::rational(CarrierPtr k, const Rat& value) {
  FieldElem x;
  x.k = std::move(k);
  Rat v = value;
  v.canonicalize();
  switch (x.k->type) {
    case Carrier::Type::Q:
      x.r = v;
      break;
    case Carrier::Type::Quadratic:
      x.a = v;
      x.b = 0;
      break;
    case Carrier::Type::NumberField:
      x.coeffs = pad_coeffs({v}, x.k->degree());
      break;
    case Carrier::Type::FunctionField: {
      // constants F_p: the denominator must be a unit mod p
      Int num = v.get_num(), den = v.get_den();
      Int dm = mod_nonneg(den, x.k->p);
      if (dm == 0)
        throw GvfError(Err::Input,
                       "rational constant has denominator divisible by the characteristic");
      Int inv_d;
      mpz_invert(inv_d.get_mpz_t(), dm.get_mpz_t(), x.k->p.get_mpz_t());
      Int c = mod_nonneg(num * inv_d, x.k->p);
      x.num = (c == 0) ? PolyF{} : PolyF{c};
      x.den = {Int(1)};
      break;
    }
  }
  return x;
}

FieldElem FieldElem::quadratic(CarrierPtr k, const Rat& a, const Rat& b) {
  if (k->type != Carrier::Type::Quadratic)
    throw GvfError(Err::Input, "quadratic element needs a quadratic carrier");
  FieldElem x;
  x.k = std::move(k);
  x.a = a;
  x.b = b;
  x.a.canonicalize();
  x.b.canonicalize();
  return x;
}

FieldElem FieldElem::number_field(CarrierPtr k, std::vector<Rat> coeffs) {
  if (k->type != Carrier::Type::NumberField)
    throw GvfError(Err::Input, "power-basis element needs a number field carrier");
  FieldElem x;
  x.k = std::move(k);
  x.coeffs = pad_coeffs(std::move(coeffs), x.k->degree());
  return x;
}

FieldElem FieldElem::function_field(CarrierPtr k, PolyF num, PolyF den) {
  if (k->type != Carrier::Type::FunctionField)
    throw GvfError(Err::Input, "rational function needs a function field carrier");
  FieldElem x;
  x.k = std::move(k);
  for (auto& c : num) c = mod_nonneg(c, x.k->p);
  for (auto& c : den) c = mod_nonneg(c, x.k->p);
  normalize_ff(x.k->p, num, den);
  x.num = std::move(num);
  x.den = std::move(den);
  return x;
}

FieldElem FieldElem::zero(CarrierPtr k) { return rational(std::move(k), Rat(0)); }
FieldElem FieldElem::one(CarrierPtr k) { return rational(std::move(k), Rat(1)); }

bool FieldElem::is_zero() const {
  switch (k->type) {
    case Carrier::Type::Q:
      return r == 0;
    case Carrier::Type::Quadratic:
      return a == 0 && b == 0;
    case Carrier::Type::NumberField:
      for (const auto& c : coeffs)
        if (c != 0) return false;
      return true;
    case Carrier::Type::FunctionField:
      return fx::deg(num) < 0;
  }
  return false;
}

bool FieldElem::equals(const FieldElem& o) const {
  if (!k->same_as(*o.k)) return false;
  switch (k->type) {
    case Carrier::Type::Q:
      return r == o.r;
    case Carrier::Type::Quadratic:
      return a == o.a && b == o.b;
    case Carrier::Type::NumberField:
      return coeffs == o.coeffs;
    case Carrier::Type::FunctionField:
      return fx::equal(num, o.num) && fx::equal(den, o.den);
  }
  return false;
}

namespace {

PolyQ nf_reduce(const PolyQ& g, const PolyZ& f) {
  return qx::divmod(g, qx::from_z(f)).second;
}

// s with s*g = 1 mod f (f irreducible, g nonzero mod f)
PolyQ nf_invert(const PolyQ& g, const PolyZ& fz) {
  PolyQ f = qx::from_z(fz);
  PolyQ r0 = f, r1 = g, s0, s1 = {Rat(1)};
  qx::trim(r1);
  while (qx::deg(r1) > 0) {
    auto [q, r2] = qx::divmod(r0, r1);
    PolyQ s2 = qx::sub(s0, qx::mul(q, s1));
    r0 = std::move(r1);
    r1 = std::move(r2);
    s0 = std::move(s1);
    s1 = std::move(s2);
    qx::trim(r1);
  }
  if (qx::deg(r1) != 0)
    throw GvfError(Err::Internal, "nf_invert: gcd not a unit");
  PolyQ s = qx::scale(Rat(1) / r1[0], s1);
  return nf_reduce(s, fz);
}

FieldElem from_polyq(const CarrierPtr& k, PolyQ g) {
  qx::trim(g);
  std::vector<Rat> c(g.begin(), g.end());
  return FieldElem::number_field(k, std::move(c));
}

PolyQ to_polyq(const FieldElem& x) {
  PolyQ g(x.coeffs.begin(), x.coeffs.end());
  qx::trim(g);
  return g;
}

}  // namespace

FieldElem add(const FieldElem& x, const FieldElem& y) {
  require_same_carrier(x, y);
  switch (x.k->type) {
    case Carrier::Type::Q:
      return FieldElem::rational(x.k, x.r + y.r);
    case Carrier::Type::Quadratic:
      return FieldElem::quadratic(x.k, x.a + y.a, x.b + y.b);
    case Carrier::Type::NumberField: {
      std::vector<Rat> c(x.coeffs.size());
      for (std::size_t i = 0; i < c.size(); ++i) c[i] = x.coeffs[i] + y.coeffs[i];
      return FieldElem::number_field(x.k, std::move(c));
    }
    case Carrier::Type::FunctionField: {
      const Int& p = x.k->p;
      PolyF num = fx::add(fx::mul(x.num, y.den, p), fx::mul(y.num, x.den, p), p);
      PolyF den = fx::mul(x.den, y.den, p);
      return FieldElem::function_field(x.k, std::move(num), std::move(den));
    }
  }
  throw GvfError(Err::Internal, "add: bad carrier");
}

FieldElem neg(const FieldElem& x) {
  switch (x.k->type) {
    case Carrier::Type::Q:
      return FieldElem::rational(x.k, -x.r);
    case Carrier::Type::Quadratic:
      return FieldElem::quadratic(x.k, -x.a, -x.b);
    case Carrier::Type::NumberField: {
      std::vector<Rat> c(x.coeffs.size());
      for (std::size_t i = 0; i < c.size(); ++i) c[i] = -x.coeffs[i];
      return FieldElem::number_field(x.k, std::move(c));
    }
    case Carrier::Type::FunctionField: {
      PolyF num = fx::scale(x.k->p - 1, x.num, x.k->p);
      return FieldElem::function_field(x.k, std::move(num), x.den);
    }
  }
  throw GvfError(Err::Internal, "neg: bad carrier");
}

FieldElem sub(const FieldElem& x, const FieldElem& y) { return add(x, neg(y)); }

FieldElem mul(const FieldElem& x, const FieldElem& y) {
  require_same_carrier(x, y);
  switch (x.k->type) {
    case Carrier::Type::Q:
      return FieldElem::rational(x.k, x.r * y.r);
    case Carrier::Type::Quadratic:
      return FieldElem::quadratic(x.k, x.a * y.a + Rat(x.k->d) * x.b * y.b,
                                  x.a * y.b + x.b * y.a);
    case Carrier::Type::NumberField:
      return from_polyq(x.k, nf_reduce(qx::mul(to_polyq(x), to_polyq(y)),
                                       x.k->min_poly));
    case Carrier::Type::FunctionField: {
      const Int& p = x.k->p;
      return FieldElem::function_field(x.k, fx::mul(x.num, y.num, p),
                                       fx::mul(x.den, y.den, p));
    }
  }
  throw GvfError(Err::Internal, "mul: bad carrier");
}

FieldElem inv(const FieldElem& x) {
  if (x.is_zero()) throw GvfError(Err::ZeroElement, "inverse of zero");
  switch (x.k->type) {
    case Carrier::Type::Q:
      return FieldElem::rational(x.k, Rat(1) / x.r);
    case Carrier::Type::Quadratic: {
      Rat n = x.a * x.a - Rat(x.k->d) * x.b * x.b;
      return FieldElem::quadratic(x.k, x.a / n, -x.b / n);
    }
    case Carrier::Type::NumberField:
      return from_polyq(x.k, nf_invert(to_polyq(x), x.k->min_poly));
    case Carrier::Type::FunctionField:
      return FieldElem::function_field(x.k, x.den, x.num);
  }
  throw GvfError(Err::Internal, "inv: bad carrier");
}

FieldElem div(const FieldElem& x, const FieldElem& y) { return mul(x, inv(y)); }

FieldElem pow(const FieldElem& x, long e) {
  if (e == 0) return FieldElem::one(x.k);
  FieldElem base = e < 0 ? inv(x) : x;
  unsigned long n = e < 0 ? -(unsigned long)e : (unsigned long)e;
  FieldElem acc = FieldElem::one(x.k);
  while (n) {
    if (n & 1) acc = mul(acc, base);
    base = mul(base, base);
    n >>= 1;
  }
  return acc;
}

FieldElem conj_quad(const FieldElem& x) {
  if (x.k->type != Carrier::Type::Quadratic)
    throw GvfError(Err::Internal, "conj_quad needs a quadratic carrier");
  return FieldElem::quadratic(x.k, x.a, -x.b);
}

Rat norm_elem(const FieldElem& x) {
  switch (x.k->type) {
    case Carrier::Type::Q:
      return x.r;
    case Carrier::Type::Quadratic:
      return x.a * x.a - Rat(x.k->d) * x.b * x.b;
    case Carrier::Type::NumberField: {
      if (x.is_zero()) return Rat(0);
      auto [g, den] = integral_numerator(x.coeffs);
      // min_poly monic: Res(f, g) = prod g(alpha_i) = N(g(alpha))
      Rat n(resultant(x.k->min_poly, g));
      n /= Rat(pow_int(den, x.k->degree()));
      n.canonicalize();
      return n;
    }
    case Carrier::Type::FunctionField:
      throw GvfError(Err::Input, "norm is not defined for function field elements");
  }
  throw GvfError(Err::Internal, "norm: bad carrier");
}

std::string elem_str(const FieldElem& x) {
  switch (x.k->type) {
    case Carrier::Type::Q:
      return rat_to_string(x.r);
    case Carrier::Type::Quadratic: {
      if (x.b == 0) return rat_to_string(x.a);
      std::string root = "sqrt(" + x.k->d.get_str() + ")";
      std::string bpart = rat_abs(x.b) == 1 ? root : rat_to_string(rat_abs(x.b)) + "*" + root;
      if (x.a == 0) return (sgn(x.b) < 0 ? "-" : "") + bpart;
      return rat_to_string(x.a) + (sgn(x.b) < 0 ? " - " : " + ") + bpart;
    }
    case Carrier::Type::NumberField: {
      std::string out;
      for (std::size_t i = 0; i < x.coeffs.size(); ++i) {
        const Rat& q = x.coeffs[i];
        if (q == 0) continue;
        std::string mono = i == 0 ? "" : (i == 1 ? "alpha" : "alpha^" + std::to_string(i));
        Rat aq = rat_abs(q);
        std::string piece;
        if (mono.empty())
          piece = rat_to_string(aq);
        else
          piece = (aq == 1) ? mono : rat_to_string(aq) + "*" + mono;
        if (out.empty())
          out = (sgn(q) < 0 ? "-" : "") + piece;
        else
          out += (sgn(q) < 0 ? " - " : " + ") + piece;
      }
      return out.empty() ? "0" : out;
    }
    case Carrier::Type::FunctionField: {
      std::string n = fx::to_string(x.num, "t");
      if (fx::deg(x.den) == 0) return n;
      return "(" + n + ")/(" + fx::to_string(x.den, "t") + ")";
    }
  }
  return "?";
}

// ------------------------------------------------------------------ places

LogLin Place::weight() const {
  switch (kind) {
    case Kind::Finite:
      return LogLin::log_of_prime(p, Rat(f, k->degree()));
    case Kind::Arch:
      return LogLin::constant(Rat(mult, k->degree()));
    case Kind::FfFinite:
      return LogLin::constant(Rat(fx::deg(pi)));
    case Kind::FfInf:
      return LogLin::constant(Rat(1));
  }
  throw GvfError(Err::Internal, "weight: bad place kind");
}

std::string Place::id() const {
  switch (kind) {
    case Kind::Finite:
      if (k->type == Carrier::Type::Q) return p.get_str();
      return p.get_str() + "#" + std::to_string(index);
    case Kind::Arch:
      if (k->type == Carrier::Type::Q) return "inf";
      return "sigma" + std::to_string(index);
    case Kind::FfFinite:
      return fx::to_string(pi, "t");
    case Kind::FfInf:
      return "inf";
  }
  return "?";
}

std::vector<Place> decompose_prime(const CarrierPtr& k, const Int& p) {
  if (!is_prime(p)) throw GvfError(Err::Input, "decompose_prime: p must be prime");
  std::vector<Place> out;
  switch (k->type) {
    case Carrier::Type::Q: {
      Place v;
      v.k = k;
      v.kind = Place::Kind::Finite;
      v.p = p;
      v.e = v.f = 1;
      v.index = 1;
      out.push_back(std::move(v));
      return out;
    }
    case Carrier::Type::Quadratic: {
      const Int& d = k->d;
      auto mk = [&](QuadKind qk, int e, int f, const Int& root, int index) {
        Place v;
        v.k = k;
        v.kind = Place::Kind::Finite;
        v.p = p;
        v.e = e;
        v.f = f;
        v.qk = qk;
        v.split_root = root;
        v.index = index;
        v.local_factor = fx::reduce(PolyZ{-d, 0, 1}, p);
        if (qk == QuadKind::Split) {
          Int m = (p == 2) ? Int(4) : p;
          v.local_factor = {mod_nonneg(-root, m), Int(1)};
        }
        return v;
      };
      if (p == 2) {
        Int m8 = mod_nonneg(d, Int(8));
        if (m8 == 1) {
          // the two 2-adic roots are told apart by their residue mod 4
          out.push_back(mk(QuadKind::Split, 1, 1, Int(3), 1));
          out.push_back(mk(QuadKind::Split, 1, 1, Int(1), 2));
        } else if (m8 == 5) {
          out.push_back(mk(QuadKind::Inert, 1, 2, Int(0), 1));
        } else {
          out.push_back(mk(QuadKind::Ramified, 2, 1, Int(0), 1));
        }
        return out;
      }
      Int dm = mod_nonneg(d, p);
      if (dm == 0) {
        out.push_back(mk(QuadKind::Ramified, 2, 1, Int(0), 1));
      } else if (legendre(d, p) == 1) {
        Int r = sqrt_mod_p(dm, p);
        Int r_hi = std::max(r, Int(p - r)), r_lo = p - r_hi;
        // order places by their monic local factor (x - r): constant term
        // p - r ascending, hence the larger root first
        out.push_back(mk(QuadKind::Split, 1, 1, r_hi, 1));
        out.push_back(mk(QuadKind::Split, 1, 1, r_lo, 2));
      } else {
        out.push_back(mk(QuadKind::Inert, 1, 2, Int(0), 1));
      }
      return out;
    }
    case Carrier::Type::NumberField: {
      PolyF fb = fx::reduce(k->min_poly, p);
      if (fx::deg(fb) != k->degree())
        throw GvfError(Err::Internal, "monic reduction lost degree");
      PolyF g = fx::gcd(fb, fx::derivative(fb, p), p);
      if (fx::deg(g) != 0)
        throw GvfError(Err::UnsupportedRamification,
                       "min_poly is not squarefree mod " + p.get_str() +
                           "; general ramified primes are not supported");
      auto factors = fx::factor(fb, p);
      int idx = 1;
      for (const auto& [h, e] : factors) {
        if (e != 1) throw GvfError(Err::Internal, "squarefree factor with multiplicity");
        Place v;
        v.k = k;
        v.kind = Place::Kind::Finite;
        v.p = p;
        v.e = 1;
        v.f = fx::deg(h);
        v.local_factor = h;
        v.index = idx++;
        out.push_back(std::move(v));
      }
      return out;
    }
    case Carrier::Type::FunctionField:
      throw GvfError(Err::Input, "function fields have no rational primes to decompose");
  }
  throw GvfError(Err::Internal, "decompose_prime: bad carrier");
}

std::vector<Place> arch_places(const CarrierPtr& k, long prec) {
  std::vector<Place> out;
  auto mk = [&](int root_index, bool real, int mult, int index) {
    Place v;
    v.k = k;
    v.kind = Place::Kind::Arch;
    v.root_index = root_index;
    v.real = real;
    v.mult = mult;
    v.index = index;
    return v;
  };
  switch (k->type) {
    case Carrier::Type::Q:
      out.push_back(mk(0, true, 1, 1));
      return out;
    case Carrier::Type::Quadratic:
      if (k->d > 0) {
        out.push_back(mk(0, true, 1, 1));  // +sqrt(d)
        out.push_back(mk(1, true, 1, 2));  // -sqrt(d)
      } else {
        out.push_back(mk(0, false, 2, 1));
      }
      return out;
    case Carrier::Type::NumberField: {
      const auto& boxes = k->roots(prec);
      int index = 1;
      for (std::size_t i = 0; i < boxes.size(); ++i) {
        if (boxes[i].is_real) {
          out.push_back(mk(static_cast<int>(i), true, 1, index++));
        } else if (boxes[i].conj_index > static_cast<int>(i)) {
          out.push_back(mk(static_cast<int>(i), false, 2, index++));
        }
      }
      return out;
    }
    case Carrier::Type::FunctionField:
      return out;
  }
  throw GvfError(Err::Internal, "arch_places: bad carrier");
}

Place ff_infinite_place(const CarrierPtr& k) {
  if (k->type != Carrier::Type::FunctionField)
    throw GvfError(Err::Internal, "infinite place needs a function field");
  Place v;
  v.k = k;
  v.kind = Place::Kind::FfInf;
  v.index = 1;
  return v;
}

// ----------------------------------------------------------- finite values

namespace {

constexpr long kLiftStart = 32;
constexpr long kLiftCap = 1 << 16;

// multiplicity of the monic irreducible pi in a nonzero polynomial
long mult_of(PolyF f, const PolyF& pi, const Int& p) {
  long m = 0;
  while (fx::deg(f) >= fx::deg(pi)) {
    auto [q, r] = fx::divmod_monic(f, pi, p);
    if (fx::deg(r) >= 0) break;
    f = std::move(q);
    ++m;
  }
  return m;
}

Rat quad_split_valuation(const Place& v, const Rat& a, const Rat& b) {
  const Int& p = v.p;
  const Int& d = v.k->d;
  // clear denominators: x*D = A + B sqrt(d)
  Int D;
  mpz_lcm(D.get_mpz_t(), Int(a.get_den()).get_mpz_t(), Int(b.get_den()).get_mpz_t());
  Int A = Int(a.get_num()) * (D / Int(a.get_den()));
  Int B = Int(b.get_num()) * (D / Int(b.get_den()));
  long vD = valp(D, p);
  if (B == 0) return Rat(valp(A, p) - vD);
  for (long N = kLiftStart; N <= kLiftCap; N *= 2) {
    Int M = pow_int(p, static_cast<unsigned long>(N));
    Int dm = mod_nonneg(d, M);
    Int rhat;
    if (p == 2) {
      rhat = sqrt_lift_2(dm, N);  // = 1 mod 4
      if (mod_nonneg(v.split_root, Int(4)) == 3) rhat = M - rhat;
    } else {
      rhat = sqrt_lift_odd(v.split_root, dm, p, N);
    }
    Int C = mod_nonneg(A + B * rhat, M);
    if (C == 0) continue;
    long val = valp(C, p);
    if (val < N / 2) return Rat(val - vD);
  }
  throw GvfError(Err::Internal, "split valuation did not stabilize");
}

Rat nf_finite_valuation(const Place& v, const FieldElem& x) {
  const Int& p = v.p;
  auto [g, D] = integral_numerator(x.coeffs);
  long vD = valp(D, p);
  PolyF fb = fx::reduce(v.k->min_poly, p);
  auto factors = fx::factor(fb, p);
  std::size_t idx = static_cast<std::size_t>(v.index - 1);
  if (idx >= factors.size() || !fx::equal(factors[idx].first, v.local_factor))
    throw GvfError(Err::Internal, "place does not match the factorization");
  std::vector<PolyF> bases;
  bases.reserve(factors.size());
  for (const auto& [h, e] : factors) bases.push_back(h);
  for (long N = kLiftStart; N <= kLiftCap; N *= 2) {
    auto lifted = hensel_lift(v.k->min_poly, bases, p, N);
    Int C = resultant(lifted[idx], g);
    if (C == 0) continue;
    long val = valp(C, p);
    if (val < N / 2) {
      if (val % v.f != 0)
        throw GvfError(Err::Internal, "resultant valuation not divisible by f");
      return Rat(val / v.f - vD);
    }
  }
  throw GvfError(Err::Internal, "number field valuation did not stabilize");
}

}  // namespace

Rat finite_valuation(const Place& v, const FieldElem& x) {
  if (x.is_zero()) throw GvfError(Err::ZeroElement, "valuation of zero");
  if (!x.k->same_as(*v.k))
    throw GvfError(Err::Input, "place and element carriers differ");
  switch (v.kind) {
    case Place::Kind::Finite:
      switch (x.k->type) {
        case Carrier::Type::Q:
          return Rat(valp(x.r, v.p));
        case Carrier::Type::Quadratic: {
          if (x.b == 0) return Rat(v.e * valp(x.a, v.p));
          switch (v.qk) {
            case QuadKind::Split:
              return quad_split_valuation(v, x.a, x.b);
            case QuadKind::Inert: {
              long w = valp(norm_elem(x), v.p);
              if (w % 2 != 0)
                throw GvfError(Err::Internal, "inert norm valuation is odd");
              return Rat(w / 2);
            }
            case QuadKind::Ramified:
              return Rat(valp(norm_elem(x), v.p));
          }
          throw GvfError(Err::Internal, "bad quadratic place");
        }
        case Carrier::Type::NumberField:
          return nf_finite_valuation(v, x);
        default:
          throw GvfError(Err::Internal, "finite place on a function field carrier");
      }
    case Place::Kind::FfFinite: {
      long m = mult_of(x.num, v.pi, x.k->p) - mult_of(x.den, v.pi, x.k->p);
      return Rat(m);
    }
    case Place::Kind::FfInf:
      return Rat(fx::deg(x.den) - fx::deg(x.num));
    case Place::Kind::Arch:
      throw GvfError(Err::Input, "finite_valuation on an archimedean place");
  }
  throw GvfError(Err::Internal, "finite_valuation: bad place");
}

// ------------------------------------------------------------- arch values

namespace {

ArchVal exact_arch(LogLin v, long prec) {
  ArchVal out;
  out.exact = true;
  out.b = v.render(prec);
  out.ll = std::move(v);
  return out;
}

}  // namespace

ArchVal arch_valuation(const Place& v, const FieldElem& x, long prec) {
  if (x.is_zero()) throw GvfError(Err::ZeroElement, "valuation of zero");
  if (!x.k->same_as(*v.k))
    throw GvfError(Err::Input, "place and element carriers differ");
  if (v.kind != Place::Kind::Arch)
    throw GvfError(Err::Input, "arch_valuation on a finite place");
  switch (x.k->type) {
    case Carrier::Type::Q:
      return exact_arch(LogLin::log_of_rat(rat_abs(x.r), Rat(-1)), prec);
    case Carrier::Type::Quadratic: {
      const Int& d = x.k->d;
      if (d < 0) {
        // |a + b sqrt(d)|^2 = a^2 - d b^2 is rational: exact value
        Rat n2 = x.a * x.a - Rat(d) * x.b * x.b;
        return exact_arch(LogLin::log_of_rat(n2, Rat(-1, 2)), prec);
      }
      if (x.b == 0) return exact_arch(LogLin::log_of_rat(rat_abs(x.a), Rat(-1)), prec);
      if (x.a == 0) {
        Rat n2 = x.b * x.b * Rat(d);
        return exact_arch(LogLin::log_of_rat(n2, Rat(-1, 2)), prec);
      }
      for (long W = prec; W <= kMaxPrec; W *= 2) {
        Ball s = sqrt_ball(Ball::from_rat(Rat(d), W));
        if (v.root_index == 1) s = gvf::neg(s);
        Ball emb = gvf::add(Ball::from_rat(x.a, W), s.mul_rat(x.b));
        if (emb.contains_zero()) continue;
        ArchVal out;
        out.exact = false;
        out.b = gvf::neg(log_ball(abs_ball(emb)));
        return out;
      }
      throw GvfError(Err::PrecisionExhausted, "quadratic embedding straddles zero");
    }
    case Carrier::Type::NumberField: {
      bool rational_elem = true;
      for (std::size_t i = 1; i < x.coeffs.size(); ++i)
        if (x.coeffs[i] != 0) rational_elem = false;
      if (rational_elem)
        return exact_arch(LogLin::log_of_rat(rat_abs(x.coeffs[0]), Rat(-1)), prec);
      for (long W = prec; W <= kMaxPrec; W *= 2) {
        const auto& boxes = x.k->roots(W);
        const CBall& theta = boxes[static_cast<std::size_t>(v.root_index)].z;
        CBall val(W);
        for (std::size_t i = x.coeffs.size(); i-- > 0;) {
          CBall t = gvf::mul(val, theta);
          val = CBall(gvf::add(t.re, Ball::from_rat(x.coeffs[i], W)), t.im);
        }
        Ball a2 = val.abs2();
        if (a2.contains_zero()) continue;
        ArchVal out;
        out.exact = false;
        out.b = log_ball(a2).mul_rat(Rat(-1, 2));
        return out;
      }
      throw GvfError(Err::PrecisionExhausted, "embedding value straddles zero");
    }
    default:
      throw GvfError(Err::Internal, "arch place on a function field carrier");
  }
}

// ------------------------------------------------------------ support sets

std::vector<Place> support_places(const std::vector<FieldElem>& elems, long prec) {
  if (elems.empty())
    throw GvfError(Err::Input, "support_places needs at least one element");
  const CarrierPtr& k = elems[0].k;
  for (const auto& x : elems) {
    if (!x.k->same_as(*k))
      throw GvfError(Err::Input, "elements live in different carriers");
    if (x.is_zero()) throw GvfError(Err::ZeroElement, "support of zero element");
  }
  std::vector<Place> out;
  if (k->type == Carrier::Type::FunctionField) {
    std::set<PolyF, bool (*)(const PolyF&, const PolyF&)> pis(&fx::less);
    for (const auto& x : elems) {
      for (const auto& [h, e] : fx::factor(x.num, k->p)) pis.insert(h);
      for (const auto& [h, e] : fx::factor(x.den, k->p)) pis.insert(h);
    }
    for (const auto& h : pis) {
      Place v;
      v.k = k;
      v.kind = Place::Kind::FfFinite;
      v.pi = h;
      v.index = 1;
      bool nonzero = false;
      for (const auto& x : elems)
        if (finite_valuation(v, x) != 0) nonzero = true;
      if (nonzero) out.push_back(std::move(v));
    }
    out.push_back(ff_infinite_place(k));
    return out;
  }
  // number-like carriers: candidate primes from norms of numerators and from
  // common denominators (numerators are algebraic integers, so every place
  // with a nonzero valuation lies over one of these primes)
  std::set<Int> primes;
  auto add_factors = [&primes](const Int& n) {
    if (n == 0) return;
    for (const auto& [q, e] : factor_int(n)) primes.insert(q);
  };
  for (const auto& x : elems) {
    switch (k->type) {
      case Carrier::Type::Q:
        add_factors(x.r.get_num());
        add_factors(x.r.get_den());
        break;
      case Carrier::Type::Quadratic: {
        Int D;
        mpz_lcm(D.get_mpz_t(), Int(x.a.get_den()).get_mpz_t(),
                Int(x.b.get_den()).get_mpz_t());
        Int A = Int(x.a.get_num()) * (D / Int(x.a.get_den()));
        Int B = Int(x.b.get_num()) * (D / Int(x.b.get_den()));
        add_factors(A * A - k->d * B * B);
        add_factors(D);
        break;
      }
      case Carrier::Type::NumberField: {
        auto [g, D] = integral_numerator(x.coeffs);
        add_factors(resultant(k->min_poly, g));
        add_factors(D);
        break;
      }
      default:
        break;
    }
  }
  for (const Int& p : primes) {
    for (Place& v : decompose_prime(k, p)) {
      bool nonzero = false;
      for (const auto& x : elems)
        if (finite_valuation(v, x) != 0) nonzero = true;
      if (nonzero) out.push_back(std::move(v));
    }
  }
  for (Place& v : arch_places(k, prec)) out.push_back(std::move(v));
  return out;
}

}  // namespace gvf
