#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <string>

#include "doctest.h"
#include "gvf/errors.hpp"
#include "gvf/gvf.hpp"
#include "gvf/search.hpp"

using namespace gvf;

namespace {

LogLin target_of(const GvfValue& v, long prec) {
  if (v.is_exact) return v.exact;
  return LogLin::constant(v.render(prec).mid_rat());
}

HeightTemplate naive_height_template(const std::string& var) {
  return HeightTemplate::make({var}, "-1*min(x1, 0)");
}

}  // namespace

TEST_CASE("a hidden rational point is recovered exactly") {
  CarrierPtr q = Carrier::rationals();
  HeightTemplate t1 = naive_height_template("y");
  HeightTemplate t2 = HeightTemplate::make({"y", "1-y"}, "-1*min(x1, x2, 0)");
  HeightTemplate t3 = HeightTemplate::make({"2*y+1"}, "-1*min(x1, 0)");
  PointSpec hidden{q, {{"y", FieldElem::rational(q, Rat(-9, 14))}}};
  SearchProblem prob;
  prob.space.cls = SearchSpace::Class::Rational;
  prob.space.bound = 20;
  for (auto* t : {&t1, &t2, &t3})
    prob.constraints.push_back({*t, target_of(height_at_point(*t, hidden, 128), 128)});
  prob.eps = Rat(1, 1000);
  prob.exhaustive = false;
  SearchResult res = approximate_point(prob, 128);
  REQUIRE(res.found);
  CHECK(elem_str(res.best->point.coords.at("y")) == "-9/14");
  CHECK(res.best->worst == 0.0);
}

TEST_CASE("a hidden quadratic point is matched up to conjugation") {
  CarrierPtr k5 = Carrier::quadratic(Int(5));
  HeightTemplate t1 = naive_height_template("y");
  HeightTemplate t2 = HeightTemplate::make({"y-1"}, "-1*min(x1, 0)");
  PointSpec hidden{k5, {{"y", FieldElem::quadratic(k5, Rat(1, 2), Rat(1, 2))}}};
  SearchProblem prob;
  prob.space.cls = SearchSpace::Class::Quadratic;
  prob.space.bound = 3;
  prob.space.ds = {Int(-1), Int(2), Int(5)};
  for (auto* t : {&t1, &t2})
    prob.constraints.push_back({*t, target_of(height_at_point(*t, hidden, 128), 128)});
  prob.eps = Rat(1, 1000);
  prob.exhaustive = false;
  SearchResult res = approximate_point(prob, 128);
  REQUIRE(res.found);
  const FieldElem& y = res.best->point.coords.at("y");
  CHECK(y.a == Rat(1, 2));
  CHECK(rat_abs(y.b) == Rat(1, 2));  // the point or its conjugate
  CHECK(res.best->worst < 1e-3);
}

TEST_CASE("equation filters restrict the space to a variety") {
  SearchProblem prob;
  prob.space.cls = SearchSpace::Class::Quadratic;
  prob.space.bound = 2;
  prob.constraints.push_back(
      {naive_height_template("y"), LogLin::log_of_prime(Int(2), Rat(1, 2))});
  prob.equations.push_back(parse_expr("y^2-2"));
  prob.eps = Rat(1, 1000);
  SearchResult res = approximate_point(prob, 128);
  REQUIRE(res.found);
  REQUIRE(res.hits.size() == 2);
  for (const SearchHit& h : res.hits) {
    FieldElem y = h.point.coords.at("y");
    CHECK(mul(y, y).equals(FieldElem::rational(h.point.k, Rat(2))));
  }
  CHECK(elem_str(res.hits[0].point.coords.at("y")) == "-sqrt(2)");
}

TEST_CASE("zeta over cyclotomic points is exactly zero") {
  ZetaProblem zp;
  zp.space.cls = SearchSpace::Class::Cyclotomic;
  zp.space.max_order = 6;
  zp.objective = naive_height_template("y");
  ZetaEstimate est = zeta_estimate(zp, 128);
  CHECK(est.exact_zero);
  CHECK(est.upper == 0.0);
  GvfValue hw = height(est.witness.coords.at("y"), 128);
  REQUIRE(hw.is_exact);
  CHECK(hw.exact.is_zero());
}

TEST_CASE("excluding torsion forces a positive essential infimum") {
  ZetaProblem zp;
  zp.space.cls = SearchSpace::Class::Quadratic;
  zp.space.bound = 2;
  zp.objective = naive_height_template("y");
  zp.exclusions.push_back(parse_expr("y^12-1"));
  zp.with_lp = true;
  ZetaEstimate est = zeta_estimate(zp, 128);
  CHECK(!est.exact_zero);
  CHECK(est.upper > 0.34);   // attained value is log(2)/2
  CHECK(est.upper < 0.35);
  REQUIRE(est.lp_lower.has_value());
  CHECK(est.upper >= est.lp_lower->get_d() - 1e-3);
  CHECK(!est.trace.empty());
}

TEST_CASE("custom minimal polynomials enumerate the conjugate points") {
  SearchProblem prob;
  prob.space.cls = SearchSpace::Class::Custom;
  prob.space.min_poly = {Rat(-1), Rat(-1), Rat(1)};  // x^2 - x - 1
  prob.constraints.push_back({naive_height_template("y"), LogLin()});
  prob.eps = Rat(1);
  SearchResult res = approximate_point(prob, 128);
  CHECK(res.examined == 2);
  // both roots have height log(phi)/2, the deviation from target 0
  CHECK(res.best->worst > 0.2405);
  CHECK(res.best->worst < 0.2407);
}

TEST_CASE("cubic units have purely archimedean support") {
  CarrierPtr k = Carrier::number_field({Int(-1), Int(-1), Int(0), Int(1)});
  FieldElem alpha = FieldElem::number_field(k, {Rat(0), Rat(1)});
  GvfValue hv = height(alpha, 128);
  SearchProblem prob;
  prob.space.cls = SearchSpace::Class::Custom;
  prob.space.min_poly = {Rat(-1), Rat(-1), Rat(0), Rat(1)};
  prob.constraints.push_back({naive_height_template("y"), target_of(hv, 128)});
  prob.eps = Rat(1, 1000);
  SearchResult res = approximate_point(prob, 128);
  CHECK(res.found);
  CHECK(res.examined == 1);
}

TEST_CASE("an unsatisfiable equation empties the candidate space") {
  SearchProblem prob;
  prob.space.cls = SearchSpace::Class::Rational;
  prob.space.bound = 3;
  prob.constraints.push_back({naive_height_template("y"), LogLin()});
  prob.equations.push_back(parse_expr("y^2+1"));
  prob.eps = Rat(1, 1000);
  try {
    approximate_point(prob, 128);
    CHECK(false);
  } catch (const GvfError& e) {
    CHECK(e.code() == Err::NoCandidate);
  }
}

TEST_CASE("two-variable problems search the product space") {
  CarrierPtr q = Carrier::rationals();
  HeightTemplate t1 = naive_height_template("u");
  HeightTemplate t2 = naive_height_template("v");
  HeightTemplate t3 = HeightTemplate::make({"u*v"}, "-1*min(x1, 0)");
  HeightTemplate t4 = HeightTemplate::make({"u+v"}, "-1*min(x1, 0)");
  PointSpec hidden{q,
                   {{"u", FieldElem::rational(q, Rat(2, 3))},
                    {"v", FieldElem::rational(q, Rat(-5))}}};
  SearchProblem prob;
  prob.space.cls = SearchSpace::Class::Rational;
  prob.space.bound = 6;
  for (auto* t : {&t1, &t2, &t3, &t4})
    prob.constraints.push_back({*t, target_of(height_at_point(*t, hidden, 128), 128)});
  prob.eps = Rat(1, 1000);
  prob.exhaustive = false;
  SearchResult res = approximate_point(prob, 128);
  REQUIRE(res.found);
  CHECK(res.best->worst < 1e-3);
}

TEST_CASE("results are identical across thread counts") {
  SearchProblem prob;
  prob.space.cls = SearchSpace::Class::Rational;
  prob.space.bound = 8;
  prob.constraints.push_back(
      {HeightTemplate::make({"y", "1-y"}, "-1*min(x1, x2, 0)"),
       LogLin::log_of_int(Int(6))});
  prob.eps = Rat(1, 100);
  SearchResult r1 = approximate_point(prob, 128);
  prob.threads = 4;
  SearchResult r4 = approximate_point(prob, 128);
  REQUIRE(r1.hits.size() == r4.hits.size());
  CHECK(r1.examined == r4.examined);
  CHECK(r1.filtered == r4.filtered);
  for (size_t i = 0; i < r1.hits.size(); ++i) {
    CHECK(elem_str(r1.hits[i].point.coords.at("y")) ==
          elem_str(r4.hits[i].point.coords.at("y")));
    CHECK(r1.hits[i].worst == r4.hits[i].worst);
  }
}
