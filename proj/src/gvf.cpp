#include "gvf/gvf.hpp"

#include <utility>

namespace gvf {

Ball GvfValue::render(long prec) const {
  Ball e = exact.render(prec);
  return is_exact ? e : add(e, approx);
}

std::string GvfValue::str(long prec) const {
  if (is_exact && exact.is_rational()) return rat_to_string(exact.c);
  std::string out = render(prec).str();
  if (is_exact) out += " (= " + exact.str() + ")";
  return out;
}

namespace {

Rat arch_weight(const Place& v) { return Rat(v.mult, v.k->degree()); }

}  // namespace

TermAtPlace eval_term_at_place(const TropTerm& t, const Place& v,
                               const std::vector<FieldElem>& elems, long prec) {
  TermAtPlace out;
  if (v.kind != Place::Kind::Arch) {
    std::vector<Rat> vals;
    vals.reserve(elems.size());
    for (const auto& x : elems) vals.push_back(finite_valuation(v, x));
    out.kind = TermAtPlace::Kind::Rational;
    out.rat = eval_trop_rat(t, vals);
    return out;
  }
  std::vector<ArchVal> vals;
  vals.reserve(elems.size());
  bool all_exact = true;
  for (const auto& x : elems) {
    vals.push_back(arch_valuation(v, x, prec));
    if (!vals.back().exact) all_exact = false;
  }
  if (all_exact) {
    std::vector<LogLin> lls;
    lls.reserve(vals.size());
    for (auto& a : vals) lls.push_back(std::move(a.ll));
    out.kind = TermAtPlace::Kind::Symbolic;
    out.ll = eval_trop(t, lls, LogLinOps{});
    return out;
  }
  std::vector<Ball> balls;
  balls.reserve(vals.size());
  for (auto& a : vals)
    balls.push_back(a.exact ? a.ll.render(prec) : std::move(a.b));
  out.kind = TermAtPlace::Kind::Enclosure;
  out.ball = eval_trop(t, balls, BallOps{prec});
  return out;
}

GvfValue r_t(const TropTerm& t, const std::vector<FieldElem>& elems, long prec) {
  GvfValue acc(prec);
  for (const Place& v : support_places(elems, prec)) {
    TermAtPlace val = eval_term_at_place(t, v, elems, prec);
    switch (val.kind) {
      case TermAtPlace::Kind::Rational:
        acc.exact += v.weight().scaled(val.rat);
        break;
      case TermAtPlace::Kind::Symbolic:
        acc.exact += val.ll.scaled(arch_weight(v));
        break;
      case TermAtPlace::Kind::Enclosure:
        acc.approx = add(acc.approx, val.ball.mul_rat(arch_weight(v)));
        acc.is_exact = false;
        break;
    }
  }
  return acc;
}

TropPtr height_term() {
  static const TropPtr t = TropTerm::scale(
      Rat(-1), TropTerm::minimum({TropTerm::variable(1), TropTerm::zero()}));
  return t;
}

GvfValue height(const FieldElem& x, long prec) {
  return r_t(*height_term(), {x}, prec);
}

ProductFormulaCheck check_product_formula(const FieldElem& x, long prec) {
  ProductFormulaCheck out(prec);
  auto places = support_places({x}, prec);
  if (x.k->type == Carrier::Type::FunctionField) {
    LogLin total;
    for (const Place& v : places) total += v.weight().scaled(finite_valuation(v, x));
    out.exact_residual = std::move(total);
    out.exact_zero = out.exact_residual.is_zero();
    out.arch_certified = true;
    return out;
  }
  LogLin finite_mass;
  LogLin arch_exact;
  Ball arch_balls(prec);
  bool all_arch_exact = true;
  for (const Place& v : places) {
    if (v.kind == Place::Kind::Finite) {
      finite_mass += v.weight().scaled(finite_valuation(v, x));
      continue;
    }
    ArchVal a = arch_valuation(v, x, prec);
    if (a.exact) {
      arch_exact += a.ll.scaled(arch_weight(v));
    } else {
      arch_balls = add(arch_balls, a.b.mul_rat(arch_weight(v)));
      all_arch_exact = false;
    }
  }
  // (1/n) log|N(x)| carries exactly the finite mass of x
  LogLin norm_mass =
      LogLin::log_of_rat(rat_abs(norm_elem(x)), Rat(1, x.k->degree()));
  if (all_arch_exact) {
    out.exact_residual = finite_mass + arch_exact;
    out.exact_zero = out.exact_residual.is_zero();
    out.arch_certified = true;
    return out;
  }
  out.exact_residual = finite_mass - norm_mass;
  out.exact_zero = out.exact_residual.is_zero();
  out.arch_residual = add((norm_mass + arch_exact).render(prec), arch_balls);
  return out;
}

namespace {

Residual make_residual(const GvfValue& lhs, const GvfValue& rhs, long prec) {
  Residual out(prec);
  out.exact_part = lhs.exact - rhs.exact;
  out.exact_zero = out.exact_part.is_zero();
  out.enclosure = add(out.exact_part.render(prec), sub(lhs.approx, rhs.approx));
  out.enclosure_has_zero = out.enclosure.contains_zero();
  return out;
}

}  // namespace

LinearityCheck check_linearity(const TropPtr& t1, const TropPtr& t2,
                               const Rat& alpha,
                               const std::vector<FieldElem>& elems, long prec) {
  GvfValue v1 = r_t(*t1, elems, prec);
  GvfValue v2 = r_t(*t2, elems, prec);
  LinearityCheck out(prec);

  GvfValue both = r_t(*TropTerm::sum(t1, t2), elems, prec);
  GvfValue v12(prec);
  v12.exact = v1.exact + v2.exact;
  v12.approx = add(v1.approx, v2.approx);
  v12.is_exact = v1.is_exact && v2.is_exact;
  out.additivity = make_residual(both, v12, prec);

  GvfValue scaled_term = r_t(*TropTerm::scale(alpha, t1), elems, prec);
  GvfValue v1a(prec);
  v1a.exact = v1.exact.scaled(alpha);
  v1a.approx = v1.approx.mul_rat(alpha);
  v1a.is_exact = v1.is_exact;
  out.homogeneity = make_residual(scaled_term, v1a, prec);
  return out;
}

PositivityCheck check_positivity(const TropPtr& t,
                                 const std::vector<FieldElem>& elems,
                                 long prec) {
  PositivityCheck out(prec);
  std::vector<Rat> zeros(elems.size(), Rat(0));
  if (sgn(eval_trop_rat(*t, zeros)) < 0) {
    out.verdict = PositivityVerdict::PremiseFails;
    out.witness = "zero-vector";
    return out;
  }
  for (const Place& v : support_places(elems, prec)) {
    int s = 0;
    TermAtPlace val = eval_term_at_place(*t, v, elems, prec);
    switch (val.kind) {
      case TermAtPlace::Kind::Rational:
        s = sgn(val.rat);
        break;
      case TermAtPlace::Kind::Symbolic:
        s = val.ll.sign(prec);
        break;
      case TermAtPlace::Kind::Enclosure: {
        bool decided = false;
        for (long W = prec; W <= kMaxPrec && !decided; W *= 2) {
          Ball b = W == prec ? val.ball
                             : eval_term_at_place(*t, v, elems, W).ball;
          if (b.certainly_positive()) {
            s = 1;
            decided = true;
          } else if (b.certainly_negative()) {
            s = -1;
            decided = true;
          }
        }
        if (!decided)
          throw GvfError(Err::PrecisionExhausted,
                         "positivity premise undecided at place " + v.id() +
                             " at the precision cap");
        break;
      }
    }
    if (s < 0) {
      out.verdict = PositivityVerdict::PremiseFails;
      out.witness = v.id();
      return out;
    }
  }
  out.value = r_t(*t, elems, prec);
  bool violated = out.value.is_exact ? out.value.exact.sign(prec) < 0
                                     : out.value.render(prec).certainly_negative();
  out.verdict =
      violated ? PositivityVerdict::Violation : PositivityVerdict::Nonnegative;
  return out;
}

Residual check_galois(const TropPtr& t, const std::vector<FieldElem>& elems,
                      long prec) {
  if (elems.empty() || elems[0].k->type != Carrier::Type::Quadratic)
    throw GvfError(Err::NotConjugate,
                   "conjugation is only available over quadratic carriers");
  std::vector<FieldElem> conj;
  conj.reserve(elems.size());
  for (const auto& x : elems) conj.push_back(conj_quad(x));
  GvfValue a = r_t(*t, elems, prec);
  GvfValue b = r_t(*t, conj, prec);
  return make_residual(a, b, prec);
}

}  // namespace gvf
