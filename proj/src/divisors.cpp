#include "gvf/divisors.hpp"

#include <utility>

namespace gvf {

LatticeDivisor LatticeDivisor::make(std::vector<FieldElem> generators, TropPtr term) {
  if (generators.empty())
    throw GvfError(Err::Input, "lattice divisor needs at least one generator");
  for (const auto& g : generators) {
    if (!g.k->same_as(*generators[0].k))
      throw GvfError(Err::Input, "divisor generators live in different carriers");
    if (g.is_zero())
      throw GvfError(Err::ZeroElement, "divisor generators must be nonzero");
  }
  if (arity(*term) > static_cast<int>(generators.size()))
    throw GvfError(Err::ArityMismatch,
                   "term arity exceeds the number of generators");
  LatticeDivisor d;
  d.generators = std::move(generators);
  d.term = std::move(term);
  return d;
}

LatticeDivisor LatticeDivisor::principal(FieldElem a) {
  return make({std::move(a)}, TropTerm::variable(1));
}

namespace {

std::vector<FieldElem> concat_generators(const LatticeDivisor& d,
                                         const LatticeDivisor& e) {
  if (!d.generators[0].k->same_as(*e.generators[0].k))
    throw GvfError(Err::Input, "divisor operands live in different carriers");
  std::vector<FieldElem> gens = d.generators;
  gens.insert(gens.end(), e.generators.begin(), e.generators.end());
  return gens;
}

}  // namespace

LatticeDivisor wedge(const LatticeDivisor& d, const LatticeDivisor& e) {
  TropPtr shifted = shift_vars(e.term, static_cast<int>(d.generators.size()));
  return LatticeDivisor::make(concat_generators(d, e),
                              TropTerm::minimum({d.term, std::move(shifted)}));
}

LatticeDivisor add_div(const LatticeDivisor& d, const LatticeDivisor& e) {
  TropPtr shifted = shift_vars(e.term, static_cast<int>(d.generators.size()));
  return LatticeDivisor::make(concat_generators(d, e),
                              TropTerm::sum(d.term, std::move(shifted)));
}

LatticeDivisor scale_div(const Rat& q, const LatticeDivisor& d) {
  return LatticeDivisor::make(d.generators, TropTerm::scale(q, d.term));
}

TermAtPlace beta(const Place& v, const LatticeDivisor& d, long prec) {
  return eval_term_at_place(*d.term, v, d.generators, prec);
}

namespace {

bool term_has_min(const TropTerm& t) {
  if (t.kind == TropTerm::Kind::Min) return true;
  for (const auto& k : t.kids)
    if (term_has_min(*k)) return true;
  return false;
}

// sign of the term value at one place, doubling precision on straddles
int beta_sign(const LatticeDivisor& d, const Place& v, long prec) {
  TermAtPlace val = beta(v, d, prec);
  switch (val.kind) {
    case TermAtPlace::Kind::Rational:
      return sgn(val.rat);
    case TermAtPlace::Kind::Symbolic:
      return val.ll.sign(prec);
    case TermAtPlace::Kind::Enclosure:
      for (long W = prec; W <= kMaxPrec; W *= 2) {
        Ball b = W == prec ? val.ball : beta(v, d, W).ball;
        if (b.certainly_positive()) return 1;
        if (b.certainly_negative()) return -1;
      }
      throw GvfError(Err::PrecisionExhausted,
                     "effectivity sign undecided at place " + v.id() +
                         " at the precision cap");
  }
  throw GvfError(Err::Internal, "beta_sign: bad kind");
}

}  // namespace

EffectivityCheck is_effective_on_support(const LatticeDivisor& d, long prec) {
  EffectivityCheck out;
  std::vector<Rat> zeros(d.generators.size(), Rat(0));
  if (sgn(eval_trop_rat(*d.term, zeros)) < 0) {
    out.witness = "zero-vector";
    return out;
  }
  bool has_arch = d.generators[0].k->type != Carrier::Type::FunctionField;
  for (const Place& v : support_places(d.generators, prec)) {
    if (beta_sign(d, v, prec) < 0) {
      out.witness = v.id();
      return out;
    }
  }
  out.effective = true;
  out.proven = !has_arch || !term_has_min(*d.term);
  return out;
}

GvfValue functional_value(const LatticeDivisor& d, long prec) {
  return r_t(*d.term, d.generators, prec);
}

HeightTemplate HeightTemplate::make(const std::vector<std::string>& functions,
                                    const std::string& term) {
  if (functions.empty())
    throw GvfError(Err::Input, "template needs at least one function");
  HeightTemplate t;
  for (const auto& src : functions) {
    t.functions.push_back(parse_expr(src));
    t.sources.push_back(src);
  }
  t.term = parse_trop(term);
  if (arity(*t.term) > static_cast<int>(t.functions.size()))
    throw GvfError(Err::ArityMismatch,
                   "term arity exceeds the number of template functions");
  return t;
}

std::vector<FieldElem> template_values(const HeightTemplate& tmpl,
                                       const PointSpec& x) {
  std::vector<FieldElem> vals;
  vals.reserve(tmpl.functions.size());
  for (std::size_t i = 0; i < tmpl.functions.size(); ++i) {
    auto v = eval_expr(*tmpl.functions[i], x.k, x.coords);
    if (!v || v->is_zero())
      throw GvfError(Err::PointOnSupport,
                     "template function '" + tmpl.sources[i] +
                         "' is zero or undefined at the point");
    vals.push_back(std::move(*v));
  }
  return vals;
}

GvfValue height_at_point(const HeightTemplate& tmpl, const PointSpec& x,
                         long prec) {
  return r_t(*tmpl.term, template_values(tmpl, x), prec);
}

}  // namespace gvf
