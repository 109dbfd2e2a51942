#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "gvf/errors.hpp"
#include "gvf/gvf.hpp"
#include "gvf/places.hpp"

using namespace gvf;

namespace {

// Elementary height of p/q in lowest terms: log max(|p|, |q|).
LogLin naive_height(const Rat& x) {
  Int n = abs(x.get_num()), d = x.get_den();
  return LogLin::log_of_int(n > d ? n : d);
}

bool residual_ok(const Residual& r) {
  return r.exact_zero && r.enclosure_has_zero;
}

}  // namespace

TEST_CASE("height of rationals matches the elementary formula") {
  CarrierPtr k = Carrier::rationals();
  Rng rng(23);
  for (int i = 0; i < 200; ++i) {
    Rat q(rng.below(Int(100000)) + 1, rng.below(Int(100000)) + 1);
    if (rng.range(0, 1)) q = -q;
    q.canonicalize();
    GvfValue h = height(FieldElem::rational(k, q));
    REQUIRE(h.is_exact);
    CHECK(h.exact == naive_height(q));
  }
}

TEST_CASE("height symmetries") {
  CarrierPtr k = Carrier::rationals();
  Rng rng(29);
  for (int i = 0; i < 50; ++i) {
    Rat q(rng.below(Int(5000)) + 2, rng.below(Int(5000)) + 1);
    q.canonicalize();
    FieldElem x = FieldElem::rational(k, q);
    GvfValue h = height(x);
    CHECK(height(inv(x)).exact == h.exact);          // H(x) = H(1/x)
    CHECK(height(neg(x)).exact == h.exact);          // H(x) = H(-x)
    CHECK(height(pow(x, 3)).exact == h.exact.scaled(Rat(3)));
  }
  // conjugation preserves heights on quadratic carriers
  CarrierPtr q5 = Carrier::quadratic(Int(5));
  FieldElem phi = FieldElem::quadratic(q5, Rat(1, 2), Rat(1, 2));
  Ball a = height(phi, 192).render(192);
  Ball b = height(conj_quad(phi), 192).render(192);
  CHECK(rat_abs(a.mid_rat() - b.mid_rat()) <= a.rad_rat() + b.rad_rat());
}

TEST_CASE("roots of unity have height zero and nothing else does") {
  CarrierPtr k = Carrier::rationals();
  CHECK(height(FieldElem::rational(k, Rat(1))).exact.is_zero());
  CHECK(height(FieldElem::rational(k, Rat(-1))).exact.is_zero());
  CarrierPtr qi = Carrier::quadratic(Int(-1));
  CHECK(height(FieldElem::quadratic(qi, Rat(0), Rat(1))).exact.is_zero());
  CarrierPtr q3 = Carrier::quadratic(Int(-3));
  // primitive sixth root of unity (1 + sqrt(-3))/2
  CHECK(height(FieldElem::quadratic(q3, Rat(1, 2), Rat(1, 2))).exact.is_zero());
  // fifth root of unity in Q[x]/(x^4 + x^3 + x^2 + x + 1): archimedean
  // contributions arrive as enclosures, so the zero is certified, not symbolic
  CarrierPtr c5 = Carrier::number_field(
      PolyZ{Int(1), Int(1), Int(1), Int(1), Int(1)});
  FieldElem z5 = FieldElem::number_field(c5, {Rat(0), Rat(1)});
  GvfValue h5 = height(z5);
  CHECK(h5.exact.is_zero());
  CHECK(h5.render(kDefaultPrec).abs_bounded_by(1e-70));
  // non-torsion points have positive height
  CHECK(height(FieldElem::rational(k, Rat(2))).exact.sign() > 0);
  CarrierPtr q5c = Carrier::quadratic(Int(5));
  GvfValue hphi = height(FieldElem::quadratic(q5c, Rat(1, 2), Rat(1, 2)));
  CHECK(hphi.render(kDefaultPrec).certainly_positive());
}

TEST_CASE("normalization pins") {
  CarrierPtr k = Carrier::rationals();
  GvfValue h2 = height(FieldElem::rational(k, Rat(2)));
  REQUIRE(h2.is_exact);
  CHECK(h2.exact == LogLin::log_of_prime(Int(2)));

  CarrierPtr q2 = Carrier::quadratic(Int(2));
  GvfValue hs = height(FieldElem::quadratic(q2, Rat(0), Rat(1)));
  REQUIRE(hs.is_exact);
  CHECK(hs.exact == LogLin::log_of_prime(Int(2), Rat(1, 2)));

  CarrierPtr ff = Carrier::function_field(Int(7));
  FieldElem t = FieldElem::function_field(ff, PolyF{Int(0), Int(1)}, PolyF{Int(1)});
  GvfValue ht = height(t);
  REQUIRE(ht.is_exact);
  CHECK(ht.exact == LogLin::constant(Rat(1)));
}

TEST_CASE("product formula") {
  Rng rng(31);
  CarrierPtr q = Carrier::rationals();
  for (int i = 0; i < 40; ++i) {
    Rat a(rng.below(Int(100000)) + 1, rng.below(Int(100000)) + 1);
    a.canonicalize();
    ProductFormulaCheck c = check_product_formula(FieldElem::rational(q, a));
    CHECK(c.exact_zero);
    CHECK((c.arch_certified || c.arch_residual.contains_zero()));
  }
  for (Int d : {Int(-1), Int(2), Int(5)}) {
    CarrierPtr k = Carrier::quadratic(d);
    for (int i = 0; i < 30; ++i) {
      Rat a(rng.range(-20, 20), rng.range(1, 9));
      Rat b(rng.range(-20, 20), rng.range(1, 9));
      a.canonicalize();
      b.canonicalize();
      if (a == 0 && b == 0) continue;
      ProductFormulaCheck c =
          check_product_formula(FieldElem::quadratic(k, a, b));
      CHECK(c.exact_zero);
      CHECK((c.arch_certified || c.arch_residual.contains_zero()));
      CHECK(c.arch_residual.abs_bounded_by(1e-15));
    }
  }
  // function fields: the whole identity is exact
  CarrierPtr ff = Carrier::function_field(Int(2));
  FieldElem t = FieldElem::function_field(ff, PolyF{Int(0), Int(1)}, PolyF{Int(1)});
  FieldElem x = div(add(mul(t, t), t), add(mul(t, t), FieldElem::one(ff)));
  ProductFormulaCheck c = check_product_formula(x);
  CHECK(c.exact_zero);
  CHECK(c.arch_certified);
}

TEST_CASE("predicates evaluate exactly when possible") {
  CarrierPtr k = Carrier::rationals();
  std::vector<FieldElem> args = {FieldElem::rational(k, Rat(12)),
                                 FieldElem::rational(k, Rat(18))};
  GvfValue v = r_t(*parse_trop("min(x1, x2)"), args);
  REQUIRE(v.is_exact);
  // min-valuations: 1 at 2, 1 at 3, -log 18 at infinity: total -log 3
  CHECK(v.exact == LogLin::log_of_prime(Int(3), Rat(-1)));
  // rational-valued results print as plain rationals
  CarrierPtr ff = Carrier::function_field(Int(5));
  FieldElem t = FieldElem::function_field(ff, PolyF{Int(0), Int(1)}, PolyF{Int(1)});
  CHECK(height(t).str(kDefaultPrec) == "1");
}

TEST_CASE("linearity of the predicate family") {
  Rng rng(37);
  CarrierPtr k = Carrier::quadratic(Int(2));
  for (int i = 0; i < 30; ++i) {
    std::vector<FieldElem> args;
    for (int j = 0; j < 2; ++j) {
      Rat a(rng.range(-9, 9)), b(rng.range(-9, 9));
      if (a == 0 && b == 0) a = 1;
      args.push_back(FieldElem::quadratic(k, a, b));
    }
    Rat alpha(rng.range(-4, 4), rng.range(1, 3));
    alpha.canonicalize();
    LinearityCheck c = check_linearity(parse_trop("min(x1, x2)"),
                                       parse_trop("x1 + -1*x2"), alpha, args);
    CHECK(residual_ok(c.additivity));
    CHECK(residual_ok(c.homogeneity));
  }
}

TEST_CASE("local-global positivity") {
  CarrierPtr k = Carrier::rationals();
  std::vector<FieldElem> args = {FieldElem::rational(k, Rat(12)),
                                 FieldElem::rational(k, Rat(5, 7))};
  PositivityCheck c = check_positivity(parse_trop("-1*min(x1, x2, 0)"), args);
  CHECK(c.verdict == PositivityVerdict::Nonnegative);
  CHECK(c.value.render(kDefaultPrec).certainly_nonneg());
  // min(x1, 0) is negative at the archimedean place of (2): premise fails
  PositivityCheck f = check_positivity(parse_trop("min(x1, 0)"),
                                       {FieldElem::rational(k, Rat(2))});
  CHECK(f.verdict == PositivityVerdict::PremiseFails);
  CHECK(f.witness == "inf");
}

TEST_CASE("galois invariance on quadratic carriers") {
  Rng rng(41);
  for (Int d : {Int(5), Int(-1), Int(13)}) {
    CarrierPtr k = Carrier::quadratic(d);
    for (int i = 0; i < 20; ++i) {
      Rat a(rng.range(-9, 9)), b(rng.range(-9, 9), rng.range(1, 4));
      b.canonicalize();
      if (a == 0 && b == 0) a = 2;
      std::vector<FieldElem> args = {FieldElem::quadratic(k, a, b),
                                     FieldElem::quadratic(k, b, a)};
      Residual r = check_galois(parse_trop("min(x1, 2*x2)"), args);
      CHECK(residual_ok(r));
    }
  }
  CarrierPtr q = Carrier::rationals();
  try {
    check_galois(parse_trop("x1"), {FieldElem::rational(q, Rat(2))});
    CHECK(false);
  } catch (const GvfError& e) {
    CHECK(e.code() == Err::NotConjugate);
  }
}

TEST_CASE("degenerate inputs are rejected") {
  CarrierPtr k = Carrier::rationals();
  CHECK_THROWS_AS(height(FieldElem::zero(k)), GvfError);
  CHECK_THROWS_AS(r_t(*parse_trop("min(x1, x2)"),
                      {FieldElem::rational(k, Rat(2))}),
                  GvfError);
}
