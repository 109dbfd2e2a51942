#pragma once

#include <string>
#include <vector>

#include "gvf/loglin.hpp"
#include "gvf/places.hpp"
#include "gvf/tropical.hpp"

namespace gvf {

// Value of a global functional: an exactly-known log-linear part plus an
// interval enclosure of whatever archimedean mass could not be kept exact.
struct GvfValue {
  LogLin exact;
  Ball approx;  // exact zero ball when is_exact
  bool is_exact = true;

  explicit GvfValue(long prec = kDefaultPrec) : approx(prec) {}
  // enclosure of the full value
  Ball render(long prec) const;
  std::string str(long prec) const;
};

// Evaluation of a tropical term on the valuation vector at a single place.
struct TermAtPlace {
  enum class Kind { Rational, Symbolic, Enclosure } kind = Kind::Rational;
  Rat rat;    // Kind::Rational: finite and function-field places
  LogLin ll;  // Kind::Symbolic: archimedean value known exactly
  Ball ball;  // Kind::Enclosure: archimedean interval at the working precision
};

TermAtPlace eval_term_at_place(const TropTerm& t, const Place& v,
                               const std::vector<FieldElem>& elems, long prec);

// R_t(a_1, ..., a_m) = sum over places of weight(v) * t(v(a_1), ..., v(a_m)).
GvfValue r_t(const TropTerm& t, const std::vector<FieldElem>& elems,
             long prec = kDefaultPrec);

// Weil height: R_t with t = -min(x1, 0).
TropPtr height_term();
GvfValue height(const FieldElem& x, long prec = kDefaultPrec);

// sum over all places of weight(v) * v(x) must vanish.  The exactly-checkable
// part (finite mass against the norm, or the entire sum over a function
// field) is reported as a log-linear residual; the archimedean remainder is
// enclosed in a ball.  When arch_certified is set the whole identity was
// verified exactly and arch_residual is the zero ball.
struct ProductFormulaCheck {
  bool exact_zero = false;
  LogLin exact_residual;
  bool arch_certified = false;
  Ball arch_residual;

  explicit ProductFormulaCheck(long prec = kDefaultPrec) : arch_residual(prec) {}
};

ProductFormulaCheck check_product_formula(const FieldElem& x,
                                          long prec = kDefaultPrec);

// One analytically-zero residual: the exact parts must cancel identically and
// the enclosure must straddle zero.
struct Residual {
  bool exact_zero = false;
  LogLin exact_part;
  bool enclosure_has_zero = false;
  Ball enclosure;

  explicit Residual(long prec = kDefaultPrec) : enclosure(prec) {}
};

// Additivity residual R_{t1+t2}(a) - R_{t1}(a) - R_{t2}(a) and homogeneity
// residual R_{alpha*t1}(a) - alpha*R_{t1}(a).
struct LinearityCheck {
  Residual additivity;
  Residual homogeneity;

  explicit LinearityCheck(long prec = kDefaultPrec)
      : additivity(prec), homogeneity(prec) {}
};

LinearityCheck check_linearity(const TropPtr& t1, const TropPtr& t2,
                               const Rat& alpha,
                               const std::vector<FieldElem>& elems,
                               long prec = kDefaultPrec);

// Local-global positivity: if t(v(a)) >= 0 at every support place and
// t(0, ..., 0) >= 0, then R_t(a) >= 0.
enum class PositivityVerdict { PremiseFails, Nonnegative, Violation };

struct PositivityCheck {
  PositivityVerdict verdict = PositivityVerdict::PremiseFails;
  std::string witness;  // failing place id, or "zero-vector"
  GvfValue value;       // R_t(a) when the premise holds

  explicit PositivityCheck(long prec = kDefaultPrec) : value(prec) {}
};

PositivityCheck check_positivity(const TropPtr& t,
                                 const std::vector<FieldElem>& elems,
                                 long prec = kDefaultPrec);

// R_t(a) - R_t(conj(a)) for quadratic carriers (conjugation is the only
// nontrivial automorphism implemented); other carriers raise NotConjugate.
Residual check_galois(const TropPtr& t, const std::vector<FieldElem>& elems,
                      long prec = kDefaultPrec);

}  // namespace gvf
