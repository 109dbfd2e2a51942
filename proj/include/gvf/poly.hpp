#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "gvf/numeric.hpp"

namespace gvf {

// Dense univariate polynomials, lowest degree first, no trailing zeros.
using PolyZ = std::vector<Int>;
using PolyQ = std::vector<Rat>;
using PolyF = std::vector<Int>;  // coefficients reduced into [0, m)

namespace zx {
int deg(const PolyZ& f);  // -1 for the zero polynomial
void trim(PolyZ& f);
bool is_monic(const PolyZ& f);
PolyZ add(const PolyZ& a, const PolyZ& b);
PolyZ sub(const PolyZ& a, const PolyZ& b);
PolyZ mul(const PolyZ& a, const PolyZ& b);
PolyZ neg(const PolyZ& a);
PolyZ derivative(const PolyZ& f);
Int eval(const PolyZ& f, const Int& x);
std::string to_string(const PolyZ& f, const std::string& var);
}  // namespace zx

namespace qx {
int deg(const PolyQ& f);
void trim(PolyQ& f);
PolyQ from_z(const PolyZ& f);
PolyQ add(const PolyQ& a, const PolyQ& b);
PolyQ sub(const PolyQ& a, const PolyQ& b);
PolyQ mul(const PolyQ& a, const PolyQ& b);
PolyQ scale(const Rat& c, const PolyQ& a);
// division with remainder, divisor nonzero
std::pair<PolyQ, PolyQ> divmod(const PolyQ& a, const PolyQ& b);
PolyQ gcd_monic(const PolyQ& a, const PolyQ& b);
PolyQ derivative(const PolyQ& f);
PolyQ squarefree_part(const PolyQ& f);
Rat eval(const PolyQ& f, const Rat& x);
// f = g / den with g integral and primitive-denominator-free: returns (g, den)
std::pair<PolyZ, Int> clear_denominators(const PolyQ& f);
}  // namespace qx

// Arithmetic mod m. Ops marked (prime) require m prime.
namespace fx {
int deg(const PolyF& f);
void trim(PolyF& f);
PolyF reduce(const PolyZ& f, const Int& m);
PolyF add(const PolyF& a, const PolyF& b, const Int& m);
PolyF sub(const PolyF& a, const PolyF& b, const Int& m);
PolyF mul(const PolyF& a, const PolyF& b, const Int& m);
PolyF scale(const Int& c, const PolyF& a, const Int& m);
// divisor monic: valid over any ring Z/m
std::pair<PolyF, PolyF> divmod_monic(const PolyF& a, const PolyF& b, const Int& m);
PolyF make_monic(const PolyF& f, const Int& m);  // (prime)
PolyF gcd(const PolyF& a, const PolyF& b, const Int& m);  // (prime), monic result
PolyF powmod(const PolyF& base, const Int& e, const PolyF& mod, const Int& m);
Int eval(const PolyF& f, const Int& x, const Int& m);
PolyF derivative(const PolyF& f, const Int& m);
bool equal(const PolyF& a, const PolyF& b);
// total order: by degree, then coefficients from constant term up
bool less(const PolyF& a, const PolyF& b);
std::string to_string(const PolyF& f, const std::string& var);

// Full factorization over F_p: squarefree split, distinct-degree, then
// equal-degree (Cantor–Zassenhaus); deterministic output order (degree, lex).
std::vector<std::pair<PolyF, int>> factor(const PolyF& f, const Int& p,
                                          std::uint64_t seed = 0);
bool is_irreducible(const PolyF& f, const Int& p);
}  // namespace fx

// Multifactor Hensel lifting: f monic over Z, f mod p squarefree, the given
// monic factors multiply to f mod p. Returns monic lifts mod p^N (coeffs in
// [0, p^N)) multiplying to f mod p^N. Throws NotSquarefree.
std::vector<PolyZ> hensel_lift(const PolyZ& f, const std::vector<PolyF>& factors,
                               const Int& p, long N);

// Sylvester resultant over Z via fraction-free (Bareiss) elimination.
Int resultant(const PolyZ& f, const PolyZ& g);

}  // namespace gvf
