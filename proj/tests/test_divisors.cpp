#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <string>
#include <vector>

#include "doctest.h"
#include "gvf/divisors.hpp"
#include "gvf/errors.hpp"
#include "gvf/places.hpp"

using namespace gvf;

namespace {

FieldElem random_rational(Rng& rng) {
  Rat q(rng.below(Int(2000)) + 1, rng.below(Int(2000)) + 1);
  if (rng.range(0, 1)) q = -q;
  q.canonicalize();
  return FieldElem::rational(Carrier::rationals(), q);
}

LatticeDivisor random_divisor(Rng& rng) {
  static const char* pool[] = {"min(x1, x2)", "x1 + x2", "2*x1 + -1*x2",
                               "-1*min(x1, 0) + x2", "min(x1, x2, 0)"};
  return LatticeDivisor::make({random_rational(rng), random_rational(rng)},
                              parse_trop(pool[rng.range(0, 4)]));
}

Rat beta_rat(const Place& v, const LatticeDivisor& d) {
  TermAtPlace t = beta(v, d);
  REQUIRE(t.kind == TermAtPlace::Kind::Rational);
  return t.rat;
}

}  // namespace

TEST_CASE("beta of a principal divisor is the valuation") {
  CarrierPtr k = Carrier::rationals();
  LatticeDivisor d = LatticeDivisor::principal(
      FieldElem::rational(k, Rat(-140, 99)));
  for (const Place& v : support_places(d.generators)) {
    if (v.kind == Place::Kind::Arch) continue;
    CHECK(beta_rat(v, d) == finite_valuation(v, d.generators[0]));
  }
  // the functional value of a principal divisor vanishes (exactly over Q)
  GvfValue l = functional_value(d);
  REQUIRE(l.is_exact);
  CHECK(l.exact.is_zero());
}

TEST_CASE("wedge takes pointwise minima at finite places") {
  Rng rng(43);
  for (int i = 0; i < 60; ++i) {
    LatticeDivisor d = random_divisor(rng), e = random_divisor(rng);
    LatticeDivisor w = wedge(d, e);
    for (const Place& v : support_places(w.generators)) {
      if (v.kind == Place::Kind::Arch) continue;
      CHECK(beta_rat(v, w) == std::min(beta_rat(v, d), beta_rat(v, e)));
    }
  }
}

TEST_CASE("sum and scaling act linearly on beta") {
  Rng rng(47);
  for (int i = 0; i < 60; ++i) {
    LatticeDivisor d = random_divisor(rng), e = random_divisor(rng);
    LatticeDivisor s = add_div(d, e);
    Rat q(rng.range(-6, 6), rng.range(1, 4));
    q.canonicalize();
    LatticeDivisor c = scale_div(q, d);
    for (const Place& v : support_places(s.generators)) {
      if (v.kind == Place::Kind::Arch) continue;
      CHECK(beta_rat(v, s) == beta_rat(v, d) + beta_rat(v, e));
    }
    for (const Place& v : support_places(d.generators)) {
      if (v.kind == Place::Kind::Arch) continue;
      CHECK(beta_rat(v, c) == q * beta_rat(v, d));
    }
  }
}

TEST_CASE("operations reindex terms canonically") {
  CarrierPtr k = Carrier::rationals();
  LatticeDivisor two = LatticeDivisor::principal(FieldElem::rational(k, Rat(2)));
  LatticeDivisor three =
      LatticeDivisor::principal(FieldElem::rational(k, Rat(3)));
  CHECK(render_trop(*wedge(two, three).term) == "min(x1, x2)");
  CHECK(render_trop(*add_div(two, three).term) == "x1 + x2");
  CHECK(render_trop(*scale_div(Rat(3, 2), two).term) == "3/2*x1");
  CHECK(wedge(two, three).generators.size() == 2);
}

TEST_CASE("functional values are additive") {
  Rng rng(53);
  for (int i = 0; i < 20; ++i) {
    LatticeDivisor d = random_divisor(rng), e = random_divisor(rng);
    Ball lhs = functional_value(add_div(d, e)).render(kDefaultPrec);
    Ball rhs = add(functional_value(d).render(kDefaultPrec),
                   functional_value(e).render(kDefaultPrec));
    CHECK(sub(lhs, rhs).contains_zero());
  }
}

TEST_CASE("effectivity on support") {
  CarrierPtr k = Carrier::rationals();
  // div(6) fails at infinity
  EffectivityCheck bad = is_effective_on_support(
      LatticeDivisor::principal(FieldElem::rational(k, Rat(6))));
  CHECK(!bad.effective);
  CHECK(bad.witness == "inf");
  // its polar part -min(v(6), 0) is nonnegative everywhere
  EffectivityCheck good = is_effective_on_support(LatticeDivisor::make(
      {FieldElem::rational(k, Rat(6))}, parse_trop("-1*min(x1, 0)")));
  CHECK(good.effective);
  CHECK(!good.proven);  // archimedean part only sampled for min terms
  // function fields have no archimedean sampling gap
  CarrierPtr ff = Carrier::function_field(Int(5));
  FieldElem t =
      FieldElem::function_field(ff, PolyF{Int(0), Int(1)}, PolyF{Int(1)});
  EffectivityCheck fft = is_effective_on_support(
      LatticeDivisor::make({t}, parse_trop("-1*min(x1, 0)")));
  CHECK(fft.effective);
  CHECK(fft.proven);
}

TEST_CASE("height templates agree with direct heights") {
  CarrierPtr k = Carrier::rationals();
  HeightTemplate h1 = HeightTemplate::make({"y"}, "-1*min(x1, 0)");
  PointSpec p{k, {{"y", FieldElem::rational(k, Rat(5, 3))}}};
  GvfValue via_tmpl = height_at_point(h1, p);
  GvfValue direct = height(FieldElem::rational(k, Rat(5, 3)));
  REQUIRE(via_tmpl.is_exact);
  CHECK(via_tmpl.exact == direct.exact);

  HeightTemplate h2 =
      HeightTemplate::make({"y", "1-y"}, "-1*min(x1, 0) + -1*min(x2, 0)");
  PointSpec q{k, {{"y", FieldElem::rational(k, Rat(2, 7))}}};
  GvfValue two_part = height_at_point(h2, q);
  REQUIRE(two_part.is_exact);
  CHECK(two_part.exact == LogLin::log_of_prime(Int(7), Rat(2)));
}

TEST_CASE("template values and support exceptions") {
  CarrierPtr k = Carrier::rationals();
  HeightTemplate h =
      HeightTemplate::make({"y", "1-y", "y^2/(y+1)"}, "min(x1, x2, x3)");
  PointSpec p{k, {{"y", FieldElem::rational(k, Rat(3))}}};
  std::vector<FieldElem> vals = template_values(h, p);
  REQUIRE(vals.size() == 3);
  CHECK(vals[0].equals(FieldElem::rational(k, Rat(3))));
  CHECK(vals[1].equals(FieldElem::rational(k, Rat(-2))));
  CHECK(vals[2].equals(FieldElem::rational(k, Rat(9, 4))));

  HeightTemplate hy = HeightTemplate::make({"y"}, "-1*min(x1, 0)");
  PointSpec zero{k, {{"y", FieldElem::zero(k)}}};
  try {
    height_at_point(hy, zero);
    CHECK(false);
  } catch (const GvfError& e) {
    CHECK(e.code() == Err::PointOnSupport);
  }
  HeightTemplate hpole = HeightTemplate::make({"1/(y-1)"}, "-1*min(x1, 0)");
  PointSpec one{k, {{"y", FieldElem::rational(k, Rat(1))}}};
  CHECK_THROWS_AS(height_at_point(hpole, one), GvfError);
}
