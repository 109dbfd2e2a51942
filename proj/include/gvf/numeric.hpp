#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "gvf/errors.hpp"

namespace gvf {

using Int = mpz_class;
using Rat = mpq_class;

inline constexpr long kDefaultPrec = 256;
inline constexpr long kMaxPrec = 8192;

// Deterministic PRNG; fixed engine so streams are identical across platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  std::uint64_t u64() { return eng_(); }
  // uniform integer in [0, n), n > 0
  Int below(const Int& n);
  // uniform in [lo, hi] inclusive
  long range(long lo, long hi);

 private:
  std::mt19937_64 eng_;
};

// ---- integers ----

// Deterministic primality at desk scale (Miller–Rabin via GMP, 40 rounds).
bool is_prime(const Int& n);

// |n| = prod p^k, primes strictly increasing; n != 0; 1 -> {}.
std::vector<std::pair<Int, int>> factor_int(const Int& n);

// v_p on nonzero integers / rationals.
long valp(const Int& n, const Int& p);
long valp(const Rat& q, const Int& p);

Int pow_int(const Int& base, unsigned long e);

// r with r^2 = a mod p (odd prime p, a a QR); Tonelli–Shanks, deterministic.
Int sqrt_mod_p(const Int& a, const Int& p);

// Given r0^2 = d mod p (odd p, p ∤ d), lift to r^2 = d mod p^N (Newton).
Int sqrt_lift_odd(const Int& r0, const Int& d, const Int& p, long N);

// d = 1 mod 8: an r with r^2 = d mod 2^N (bitwise lifting), r = 1 mod 4.
Int sqrt_lift_2(const Int& d, long N);

// ---- rationals ----

int sgn(const Rat& q);
Rat rat_abs(const Rat& q);
// Parses "a", "a/b", or a decimal like "-1.5e-3" exactly into a rational.
Rat rat_from_string(const std::string& s);
std::string rat_to_string(const Rat& q);
bool is_square_free(const Int& n);

}  // namespace gvf
