#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gvf/divisors.hpp"
#include "gvf/exprs.hpp"
#include "gvf/loglin.hpp"

namespace gvf {

// Candidate space for point search. Enumeration is canonical and
// deterministic: candidates stream in a fixed grading (small points first)
// that does not depend on seed or thread count.
//
//   Rational:   tuples over Q; coordinate level max(|a|, b) up to `bound`.
//   Quadratic:  tuples over Q(sqrt(d)); d runs over the explicit list `ds`
//               or, when empty, all squarefree 1 < |d| <= bound ordered by
//               |d| with positive d first. Coordinate (a + b sqrt d)/c with
//               level max(|a|, |b|, c); at least one coordinate must have
//               b != 0 (pure rational tuples belong to the Rational class).
//   Cyclotomic: roots of unity of order k = 1..max_order, one carrier per
//               order (quadratic fields for k <= 6, else Q[x]/Phi_k).
//   Custom:     exact roots of a rational polynomial of degree <= 3.
struct SearchSpace {
  enum class Class { Rational, Quadratic, Cyclotomic, Custom };
  Class cls = Class::Rational;
  long bound = 10;
  std::vector<Int> ds;
  long max_order = 12;
  std::vector<Rat> min_poly;
};

// |functional value at the point - target| must fall below eps.
struct SearchConstraint {
  HeightTemplate tmpl;
  LogLin target;
};

struct SearchProblem {
  SearchSpace space;
  std::vector<SearchConstraint> constraints;
  std::vector<RatExprPtr> equations;    // required to vanish
  std::vector<RatExprPtr> inequations;  // required not to vanish
  Rat eps = Rat(1, 1000);
  bool exhaustive = true;       // false: stop at the first hit
  unsigned long seed = 0;       // echoed; enumeration is canonical
  int threads = 1;
};

struct SearchHit {
  PointSpec point;
  std::vector<double> deviations;  // certified upper bounds, per constraint
  double worst = 0.0;
};

struct SearchResult {
  bool found = false;
  std::optional<SearchHit> best;  // smallest worst-deviation seen
  std::vector<SearchHit> hits;    // all hits (exhaustive) or the first
  long examined = 0;              // candidates that passed the filters
  long filtered = 0;
  unsigned long seed = 0;
};

// Enumerate the space and report every point whose functional values all
// land within eps of their targets. Candidates where a template function is
// zero or undefined, an equation fails, or an inequation vanishes are
// filtered, not errors. NoCandidate when the whole space filters away.
SearchResult approximate_point(const SearchProblem& prob,
                               long prec = kDefaultPrec);

// Essential-infimum estimation: minimize a height functional over the space
// minus the union of exclusion hypersurfaces.
struct ZetaProblem {
  SearchSpace space;
  HeightTemplate objective;
  std::vector<RatExprPtr> equations;
  std::vector<RatExprPtr> exclusions;  // candidate dropped when any vanishes
  Rat eps = Rat(1, 1000);
  bool with_lp = false;  // also compute the measure-LP lower bound
  unsigned long seed = 0;
  int threads = 1;
};

struct ZetaEstimate {
  double upper = 0.0;        // certified upper bound at the witness
  bool exact_zero = false;   // the witness value is exactly zero
  PointSpec witness;
  std::vector<double> trace;  // strictly decreasing best-so-far bounds
  long examined = 0;
  long filtered = 0;

  // Optimum of the exact measure LP built on the witness support (atoms of
  // the witness point measure, product-formula and height(2) rows). The
  // witness measure itself is feasible, so lp_lower <= upper + eps.
  std::optional<Rat> lp_lower;
};

ZetaEstimate zeta_estimate(const ZetaProblem& prob, long prec = kDefaultPrec);

}  // namespace gvf
