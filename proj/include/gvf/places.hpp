#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "gvf/ball.hpp"
#include "gvf/loglin.hpp"
#include "gvf/numeric.hpp"
#include "gvf/poly.hpp"
#include "gvf/roots.hpp"

namespace gvf {

// A carrier is a field with a standard global structure: the rationals, a
// quadratic field Q(sqrt(d)), a number field Q[x]/(min_poly), or a rational
// function field F_p(t). Immutable after construction; root boxes for the
// archimedean embeddings are cached per precision.
class Carrier;
using CarrierPtr = std::shared_ptr<const Carrier>;

class Carrier {
 public:
  enum class Type { Q, Quadratic, NumberField, FunctionField };

  Type type;
  Int d;           // Quadratic: squarefree, not 0 or 1
  PolyZ min_poly;  // NumberField: monic irreducible over Z
  Int p;           // FunctionField: characteristic

  static CarrierPtr rationals();
  static CarrierPtr quadratic(const Int& d);
  // trust_irreducible skips the modular certificate for degree >= 4 when no
  // certifying prime is found among the first candidates
  static CarrierPtr number_field(const PolyZ& min_poly,
                                 bool trust_irreducible = false);
  static CarrierPtr function_field(const Int& p);

  // field degree over Q (1 for function fields, which never consume it)
  int degree() const;
  bool same_as(const Carrier& o) const;
  std::string describe() const;

  // certified root boxes of min_poly (number fields only)
  const std::vector<RootBox>& roots(long prec) const;

 private:
  Carrier() = default;
  mutable std::mutex mu_;
  mutable std::map<long, std::vector<RootBox>> roots_;
};

// Element of a carrier. Exactly one representation is active:
//   Q: r; Quadratic: a + b*sqrt(d); NumberField: coeffs in the power basis
//   (length = degree); FunctionField: num/den with den monic, gcd(num,den)=1.
struct FieldElem {
  CarrierPtr k;
  Rat r;
  Rat a, b;
  std::vector<Rat> coeffs;
  PolyF num, den;

  static FieldElem rational(CarrierPtr k, const Rat& value);
  static FieldElem quadratic(CarrierPtr k, const Rat& a, const Rat& b);
  static FieldElem number_field(CarrierPtr k, std::vector<Rat> coeffs);
  static FieldElem function_field(CarrierPtr k, PolyF num, PolyF den);
  static FieldElem zero(CarrierPtr k);
  static FieldElem one(CarrierPtr k);

  bool is_zero() const;
  bool equals(const FieldElem& o) const;
};

FieldElem add(const FieldElem& x, const FieldElem& y);
FieldElem sub(const FieldElem& x, const FieldElem& y);
FieldElem mul(const FieldElem& x, const FieldElem& y);
FieldElem div(const FieldElem& x, const FieldElem& y);  // y nonzero
FieldElem neg(const FieldElem& x);
FieldElem inv(const FieldElem& x);  // x nonzero
FieldElem pow(const FieldElem& x, long e);
// Galois conjugate b -> -b (quadratic carriers only)
FieldElem conj_quad(const FieldElem& x);
// N_{K/Q}; defined for Q, quadratic and number fields
Rat norm_elem(const FieldElem& x);
std::string elem_str(const FieldElem& x);

enum class QuadKind { Split, Inert, Ramified };

// One place of a carrier. Finite places carry (p, e, f) plus enough data to
// recompute valuations (split root residue for quadratic fields, the local
// factor mod p for number fields). Archimedean places reference a root box;
// conjugate pairs form a single place with mult = 2.
struct Place {
  enum class Kind { Finite, Arch, FfFinite, FfInf };

  CarrierPtr k;
  Kind kind;

  Int p;  // Finite: rational prime below
  int e = 1, f = 1;
  QuadKind qk = QuadKind::Inert;  // quadratic finite places
  // split quadratic: canonical root residue of d (mod p for odd p; mod 4
  // identifies the 2-adic root when p = 2)
  Int split_root;
  PolyF local_factor;  // monic factor of min_poly mod p (index order)
  int index = 1;       // 1-based position among the places over p

  int root_index = 0;  // Arch: into Carrier::roots / quadratic embedding
  bool real = true;
  int mult = 1;  // 1, or 2 for a complex-conjugate pair

  PolyF pi;  // FfFinite: monic irreducible in F_p[t]

  // measure mass: (f/[K:Q])*log p, mult/[K:Q], deg(pi), or 1
  LogLin weight() const;
  std::string id() const;
};

// Finite places over p in deterministic order (by local factor).
// Carriers: Q (one place), quadratic (case table), number field (requires
// squarefree reduction, else UnsupportedRamification). Function fields have
// no rational primes: Input error.
std::vector<Place> decompose_prime(const CarrierPtr& k, const Int& p);

// All archimedean places (empty for function fields), ordered by root index.
std::vector<Place> arch_places(const CarrierPtr& k, long prec);

// The infinity place of a function field.
Place ff_infinite_place(const CarrierPtr& k);

// Every finite place where some element has a nonzero valuation, followed by
// all archimedean places (number-like carriers) or the infinity place
// (function fields). Deterministic order: finite by (p, factor index), then
// archimedean by root index.
std::vector<Place> support_places(const std::vector<FieldElem>& elems,
                                  long prec = kDefaultPrec);

// ord-normalized exact valuation at a finite place (v(uniformizer) = 1,
// so v(p) = e); FfInf returns deg den - deg num.
Rat finite_valuation(const Place& v, const FieldElem& x);

// -log|sigma(x)|. Exact (as a log-linear value) over Q, over imaginary
// quadratic fields, and for rational-embedding special cases; a certified
// ball otherwise. The ball field is always populated.
struct ArchVal {
  bool exact = false;
  LogLin ll;
  Ball b;
};
ArchVal arch_valuation(const Place& v, const FieldElem& x, long prec);

}  // namespace gvf
