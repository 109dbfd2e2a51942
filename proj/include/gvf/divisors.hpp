#pragma once

#include <map>
#include <string>
#include <vector>

#include "gvf/exprs.hpp"
#include "gvf/gvf.hpp"

namespace gvf {

// Symbolic tuple-generated lattice divisor t(div(a_1), ..., div(a_n)).
struct LatticeDivisor {
  std::vector<FieldElem> generators;
  TropPtr term;

  static LatticeDivisor make(std::vector<FieldElem> generators, TropPtr term);
  static LatticeDivisor principal(FieldElem a);  // div(a): term x1
};

// Binary operations concatenate the generator tuples (no deduplication) and
// reindex the right term past the left tuple.
LatticeDivisor wedge(const LatticeDivisor& d, const LatticeDivisor& e);
LatticeDivisor add_div(const LatticeDivisor& d, const LatticeDivisor& e);
LatticeDivisor scale_div(const Rat& q, const LatticeDivisor& d);

// beta(v, D) = t(v(a_1), ..., v(a_n)): exact at finite places, tracked-error
// interval at archimedean places.
TermAtPlace beta(const Place& v, const LatticeDivisor& d, long prec = kDefaultPrec);

// beta(v, D) >= 0 over the support places of the generators (all archimedean
// places included) plus the zero vector.  A pass at the finite places is a
// proof; the archimedean sample is complete only for min-free terms, so the
// verdict label distinguishes Proven from Sampled evidence.
struct EffectivityCheck {
  bool effective = false;
  bool proven = false;       // meaningful when effective
  std::string witness;       // failing place id when not effective
};

EffectivityCheck is_effective_on_support(const LatticeDivisor& d,
                                         long prec = kDefaultPrec);

// l(D) for the carrier's standard GVF structure: r_t(term, generators).
GvfValue functional_value(const LatticeDivisor& d, long prec = kDefaultPrec);

// A closed point: named coordinates in a common carrier.
struct PointSpec {
  CarrierPtr k;
  std::map<std::string, FieldElem> coords;
};

// Divisor template over the generic point: rational functions f_i in the
// point variables plus a tropical term of arity <= #functions.
struct HeightTemplate {
  std::vector<RatExprPtr> functions;
  std::vector<std::string> sources;  // surface syntax, kept for round-trips
  TropPtr term;

  static HeightTemplate make(const std::vector<std::string>& functions,
                             const std::string& term);
};

// h_D(x) = R_t(f_1(x), ..., f_n(x)) over the point's carrier.  Raises
// PointOnSupport when some f_i(x) is zero or undefined.
GvfValue height_at_point(const HeightTemplate& tmpl, const PointSpec& x,
                         long prec = kDefaultPrec);

// The f_i(x) tuple itself (shared by height_at_point and the search filters).
std::vector<FieldElem> template_values(const HeightTemplate& tmpl,
                                       const PointSpec& x);

}  // namespace gvf
