#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gvf/loglin.hpp"
#include "gvf/places.hpp"
#include "gvf/tropical.hpp"

namespace gvf {

// Atom of a candidate measure. The vector u holds one candidate valuation
// per generator. A Finite atom's mass is weighted by the symbol log p; Arch
// and Free atoms have multiplier 1. All data is exact rational: the LP solved
// is exact, and the only numeric approximation is the substitution of 256-bit
// rational intervals for the log p symbols and rendered targets.
enum class AtomClass { Finite, Arch, Free };

struct Atom {
  std::vector<Rat> u;
  AtomClass cls = AtomClass::Free;
  Int p = 0;           // prime symbol, Finite class only
  std::string label;   // optional display name
};

// One linear constraint: sum over atoms of mass * t(u) must land within
// eps of the target value.
struct DivisorConstraint {
  TropPtr term;
  LogLin target;
};

// Existence problem for a finitely supported measure. Invariants checked by
// the solver: the literal generator 2 is present (its height row normalizes
// the measure to height(2) = log 2), at least one Arch atom exists, every
// atom vector matches the generator count, eps > 0.
struct FeasibilityInstance {
  std::vector<FieldElem> generators;
  std::vector<DivisorConstraint> divisors;
  std::vector<Atom> atoms;
  Rat eps = Rat(1, 1000000);
};

struct FeasibilityReport {
  bool feasible = false;

  // Feasible: one mass per atom (the measure's weight w_k; a Finite atom
  // contributes w_k * log p * t(u_k) to each functional).
  std::vector<Rat> masses;

  // Infeasible: Farkas certificate for the standardized system, verified
  // independently of the solver before being returned. lp_rows/lp_rhs hold
  // that system (structural atom columns then slack columns) so callers can
  // re-verify: dual'A <= 0 columnwise and dual'b > 0.
  std::vector<Rat> dual;
  std::vector<std::string> row_labels;
  std::vector<std::vector<Rat>> lp_rows;
  std::vector<Rat> lp_rhs;
  Rat dual_gap = Rat(0);  // dual'b with |dual| summing to 1

  // A-posteriori bound on the drift induced by the rational substitution of
  // log symbols and targets. The verdict is accepted only when eps exceeds
  // this bound; otherwise ToleranceTooTight is raised.
  Rat perturbation_bound = Rat(0);

  // Exact optimum of the rationalized LP (minimization calls only).
  std::optional<Rat> objective;
};

// Decide whether some nonnegative mass assignment satisfies every divisor
// constraint and the height(2) = log 2 normalization within eps.
// prec controls the rational log/target approximations (default 256 bits).
FeasibilityReport solve_feasibility(const FeasibilityInstance& inst,
                                    long prec = 256);

// Same constraints, minimizing the functional attached to `objective`
// (a tropical term over the generators). Raises Unbounded when the value
// decreases along a feasible ray.
FeasibilityReport minimize_functional(const FeasibilityInstance& inst,
                                      const TropPtr& objective,
                                      long prec = 256);

// Convenience sampler: one atom per support place of the generators, with
// the place's residue data (class, prime symbol, label). Archimedean values
// are rendered to rationals through the same shared log-symbol table used by
// the solver, so product-formula relations stay exactly satisfied over Q.
std::vector<Atom> atoms_from_places(const std::vector<FieldElem>& generators,
                                    long prec = 256);

// Independent Farkas check: y'A_j <= 0 for every column and y'b > 0.
bool verify_farkas(const std::vector<std::vector<Rat>>& rows,
                   const std::vector<Rat>& rhs, const std::vector<Rat>& y);

}  // namespace gvf
