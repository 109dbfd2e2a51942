#include "gvf/numeric.hpp"

#include <algorithm>
#include <map>

namespace gvf {

const char* err_name(Err code) {
  switch (code) {
    case Err::Syntax: return "SyntaxError";
    case Err::Constant: return "ConstantError";
    case Err::ArityMismatch: return "ArityMismatch";
    case Err::ZeroElement: return "ZeroElement";
    case Err::NotSquarefree: return "NotSquarefree";
    case Err::PrecisionExhausted: return "PrecisionExhausted";
    case Err::UnsupportedRamification: return "UnsupportedRamification";
    case Err::NotConjugate: return "NotConjugate";
    case Err::PointOnSupport: return "PointOnSupport";
    case Err::MissingGenerator2: return "MissingGenerator2";
    case Err::ToleranceTooTight: return "ToleranceTooTight";
    case Err::Unbounded: return "Unbounded";
    case Err::NoCandidate: return "NoCandidateSatisfiesEquations";
    case Err::Input: return "InputError";
    case Err::Internal: return "InternalError";
  }
  return "UnknownError";
}

Int Rng::below(const Int& n) {
  if (n <= 0) throw GvfError(Err::Internal, "Rng::below needs n > 0");
  // rejection sampling over whole 64-bit words
  size_t bits = mpz_sizeinbase(n.get_mpz_t(), 2);
  size_t words = (bits + 63) / 64;
  while (true) {
    Int x = 0;
    for (size_t i = 0; i < words; ++i) {
      x <<= 64;
      std::uint64_t w = eng_();
      Int wi;
      mpz_import(wi.get_mpz_t(), 1, 1, sizeof(w), 0, 0, &w);
      x |= wi;
    }
    Int lim = Int(1) << (64 * words);
    lim -= lim % n;  // largest multiple of n below 2^(64w)
    if (x < lim) return x % n;
  }
}

long Rng::range(long lo, long hi) {
  if (hi < lo) throw GvfError(Err::Internal, "Rng::range empty");
  Int span = Int(hi) - Int(lo) + 1;
  return lo + below(span).get_si();
}

bool is_prime(const Int& n) {
  return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

namespace {

// Brent-cycle Pollard rho with deterministic parameter sweep.
Int pollard_rho(const Int& n) {
  if (n % 2 == 0) return 2;
  for (unsigned long c = 1;; ++c) {
    Int x = 2, y = 2, d = 1;
    Int saved_x = x;
    unsigned long power = 1, lam = 0;
    while (d == 1) {
      if (lam == power) {
        saved_x = y;
        power *= 2;
        lam = 0;
      }
      y = (y * y + c) % n;
      ++lam;
      Int diff = saved_x - y;
      if (diff == 0) break;  // cycle without factor; try next c
      d = gcd(diff, n);
    }
    if (d != 1 && d != n && d != 0) return d;
  }
}

void factor_rec(const Int& n, std::map<Int, int>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out[n] += 1;
    return;
  }
  Int d = pollard_rho(n);
  factor_rec(d, out);
  factor_rec(n / d, out);
}

}  // namespace

std::vector<std::pair<Int, int>> factor_int(const Int& n_in) {
  if (n_in == 0) throw GvfError(Err::Input, "factor_int: n must be nonzero");
  Int n = abs(n_in);
  std::map<Int, int> acc;
  // trial division by 2 and odd numbers up to 2^20
  for (Int p : {Int(2), Int(3), Int(5)}) {
    while (n % p == 0) {
      acc[p] += 1;
      n /= p;
    }
  }
  // wheel over 6k±1
  for (Int p = 7; p <= (1 << 20) && p * p <= n; p += 6) {
    for (Int q : {p, Int(p + 4)}) {
      while (n % q == 0) {
        acc[q] += 1;
        n /= q;
      }
    }
  }
  if (n > 1) factor_rec(n, acc);  // factor_rec starts with a primality test
  return {acc.begin(), acc.end()};
}

long valp(const Int& n_in, const Int& p) {
  if (n_in == 0) throw GvfError(Err::ZeroElement, "valp of 0");
  Int n = abs(n_in);
  long v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

long valp(const Rat& q, const Int& p) {
  if (q == 0) throw GvfError(Err::ZeroElement, "valp of 0");
  return valp(Int(q.get_num()), p) - valp(Int(q.get_den()), p);
}

Int pow_int(const Int& base, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

Int sqrt_mod_p(const Int& a_in, const Int& p) {
  Int a = ((a_in % p) + p) % p;
  if (a == 0) return 0;
  if (mpz_legendre(a.get_mpz_t(), p.get_mpz_t()) != 1)
    throw GvfError(Err::Internal, "sqrt_mod_p: not a quadratic residue");
  if (p % 4 == 3) {
    Int e = (p + 1) / 4, r;
    mpz_powm(r.get_mpz_t(), a.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
    return r;
  }
  // Tonelli–Shanks; nonresidue found by deterministic scan.
  Int q = p - 1;
  long s = 0;
  while (q % 2 == 0) {
    q /= 2;
    ++s;
  }
  Int z = 2;
  while (mpz_legendre(z.get_mpz_t(), p.get_mpz_t()) != -1) ++z;
  Int m = s, c, t, r, e = (q + 1) / 2;
  mpz_powm(c.get_mpz_t(), z.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
  mpz_powm(t.get_mpz_t(), a.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
  mpz_powm(r.get_mpz_t(), a.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
  while (t != 1) {
    Int tt = t;
    long i = 0;
    while (tt != 1) {
      tt = tt * tt % p;
      ++i;
      if (Int(i) == m) throw GvfError(Err::Internal, "sqrt_mod_p failed");
    }
    Int b = c;
    for (long j = 0; j < m.get_si() - i - 1; ++j) b = b * b % p;
    m = i;
    c = b * b % p;
    t = t * c % p;
    r = r * b % p;
  }
  return r;
}

Int sqrt_lift_odd(const Int& r0, const Int& d, const Int& p, long N) {
  // Newton: r <- (r + d/r)/2, doubling the exponent each step.
  Int r = r0 % p;
  long k = 1;
  Int mod = p;
  while (k < N) {
    k = std::min(2 * k, N);
    mpz_pow_ui(mod.get_mpz_t(), p.get_mpz_t(), k);
    Int inv_r;
    if (mpz_invert(inv_r.get_mpz_t(), r.get_mpz_t(), mod.get_mpz_t()) == 0)
      throw GvfError(Err::Internal, "sqrt_lift_odd: r not invertible");
    Int inv2;
    Int two = 2;
    mpz_invert(inv2.get_mpz_t(), two.get_mpz_t(), mod.get_mpz_t());
    r = (r + d % mod * inv_r) % mod * inv2 % mod;
    r = ((r % mod) + mod) % mod;
  }
  return r;
}

Int sqrt_lift_2(const Int& d, long N) {
  if (((d % 8) + 8) % 8 != 1)
    throw GvfError(Err::Internal, "sqrt_lift_2 needs d = 1 mod 8");
  // r^2 = d mod 2^k, lifted bit by bit from k = 3.
  Int r = 1;
  for (long k = 3; k < N; ++k) {
    Int mod_next = Int(1) << (k + 1);
    if ((r * r - d) % mod_next != 0) r += Int(1) << (k - 1);
  }
  return ((r % (Int(1) << N)) + (Int(1) << N)) % (Int(1) << N);
}

int sgn(const Rat& q) { return mpq_sgn(q.get_mpq_t()); }

Rat rat_abs(const Rat& q) { return q < 0 ? Rat(-q) : q; }

Rat rat_from_string(const std::string& s_in) {
  std::string s = s_in;
  s.erase(std::remove_if(s.begin(), s.end(), [](char c) { return c == ' '; }),
          s.end());
  if (s.empty()) throw GvfError(Err::Input, "empty rational");
  auto bad = [&]() { throw GvfError(Err::Input, "bad rational: " + s_in); };
  // plain a or a/b
  if (s.find_first_of(".eE") == std::string::npos) {
    try {
      Rat q(s);
      q.canonicalize();
      return q;
    } catch (const std::invalid_argument&) {
      bad();
    }
  }
  // decimal with optional exponent: sign? digits (.digits)? ([eE] sign? digits)?
  size_t i = 0;
  bool neg = false;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) neg = s[i++] == '-';
  std::string intpart, fracpart, exppart;
  while (i < s.size() && isdigit(static_cast<unsigned char>(s[i])))
    intpart += s[i++];
  if (i < s.size() && s[i] == '.') {
    ++i;
    while (i < s.size() && isdigit(static_cast<unsigned char>(s[i])))
      fracpart += s[i++];
  }
  long expo = 0;
  if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
    ++i;
    bool eneg = false;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) eneg = s[i++] == '-';
    if (i >= s.size()) bad();
    while (i < s.size() && isdigit(static_cast<unsigned char>(s[i])))
      exppart += s[i++];
    if (exppart.empty()) bad();
    expo = std::stol(exppart) * (eneg ? -1 : 1);
  }
  if (i != s.size() || (intpart.empty() && fracpart.empty())) bad();
  Int mant(intpart.empty() ? std::string("0") : intpart);
  for (char c : fracpart) mant = mant * 10 + (c - '0');
  long shift = expo - static_cast<long>(fracpart.size());
  Rat q(mant);
  if (shift > 0) q *= Rat(pow_int(10, shift));
  if (shift < 0) q /= Rat(pow_int(10, -shift));
  if (neg) q = -q;
  q.canonicalize();
  return q;
}

std::string rat_to_string(const Rat& q) { return q.get_str(); }

bool is_square_free(const Int& n) {
  if (n == 0) return false;
  for (auto& [p, k] : factor_int(n))
    if (k > 1) return false;
  return true;
}

}  // namespace gvf
