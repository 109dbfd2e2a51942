#include "gvf/io.hpp"

#include <cctype>
#include <fstream>

#include "gvf/errors.hpp"
#include "gvf/exprs.hpp"
#include "gvf/poly.hpp"

namespace gvf {

namespace {

const Json& need(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw GvfError(Err::Input, std::string("missing \"") + key + "\" field");
  return j.at(key);
}

std::string need_string(const Json& j, const char* key) {
  const Json& v = need(j, key);
  if (!v.is_string())
    throw GvfError(Err::Input, std::string("\"") + key + "\" must be a string");
  return v.get<std::string>();
}

const Json& need_array(const Json& j, const char* key) {
  const Json& v = need(j, key);
  if (!v.is_array())
    throw GvfError(Err::Input, std::string("\"") + key + "\" must be an array");
  return v;
}

Json int_to_json(const Int& z) {
  if (z.fits_slong_p()) return Json(z.get_si());
  return Json(z.get_str());
}

long long ll_from_json(const Json& j, const char* what) {
  if (!j.is_number_integer())
    throw GvfError(Err::Input, std::string(what) + " must be an integer");
  return j.get<long long>();
}

bool bool_from_json(const Json& j, const char* what) {
  if (!j.is_boolean())
    throw GvfError(Err::Input, std::string(what) + " must be true or false");
  return j.get<bool>();
}

// Function-field elements are written as expressions in t; evaluate the
// expression tree over the carrier itself.
FieldElem ff_elem_from_string(const CarrierPtr& k, const std::string& s) {
  RatExprPtr e = parse_expr(s);
  for (const std::string& v : expr_variables(*e))
    if (v != "t")
      throw GvfError(Err::Input,
                     "unknown variable \"" + v + "\" in element: " + s);
  FieldElem t = FieldElem::function_field(k, PolyF{Int(0), Int(1)}, PolyF{Int(1)});
  std::optional<FieldElem> r = eval_expr(*e, k, {{"t", t}});
  if (!r)
    throw GvfError(Err::Input, "division by zero in element: " + s);
  return *r;
}

}  // namespace

Json carrier_to_json(const CarrierPtr& k) {
  Json j = Json::object();
  switch (k->type) {
    case Carrier::Type::Q:
      j["type"] = "Q";
      break;
    case Carrier::Type::Quadratic:
      j["type"] = "quadratic";
      j["d"] = int_to_json(k->d);
      break;
    case Carrier::Type::NumberField: {
      j["type"] = "number_field";
      Json m = Json::array();
      for (const Int& c : k->min_poly) m.push_back(int_to_json(c));
      j["min_poly"] = m;
      break;
    }
    case Carrier::Type::FunctionField:
      j["type"] = "function_field";
      j["p"] = int_to_json(k->p);
      break;
  }
  return j;
}

CarrierPtr carrier_from_json(const Json& j) {
  if (j.is_string()) {
    std::string s = j.get<std::string>();
    if (s == "Q") return Carrier::rationals();
    throw GvfError(Err::Input, "unknown field: " + s);
  }
  std::string type = need_string(j, "type");
  if (type == "Q") return Carrier::rationals();
  if (type == "quadratic") return Carrier::quadratic(int_from_json(need(j, "d")));
  if (type == "number_field") {
    PolyZ m;
    for (const Json& c : need_array(j, "min_poly")) m.push_back(int_from_json(c));
    return Carrier::number_field(m);
  }
  if (type == "function_field")
    return Carrier::function_field(int_from_json(need(j, "p")));
  throw GvfError(Err::Input, "unknown field type: " + type);
}

Json elem_to_json(const FieldElem& x) {
  switch (x.k->type) {
    case Carrier::Type::Q:
      return Json(rat_to_string(x.r));
    case Carrier::Type::Quadratic: {
      Json j = Json::object();
      j["a"] = rat_to_string(x.a);
      j["b"] = rat_to_string(x.b);
      return j;
    }
    case Carrier::Type::NumberField: {
      Json cs = Json::array();
      for (const Rat& c : x.coeffs) cs.push_back(rat_to_string(c));
      Json j = Json::object();
      j["coeffs"] = cs;
      return j;
    }
    case Carrier::Type::FunctionField: {
      Json j = Json::object();
      j["num"] = fx::to_string(x.num, "t");
      j["den"] = fx::to_string(x.den, "t");
      return j;
    }
  }
  throw GvfError(Err::Internal, "unreachable carrier type");
}

FieldElem elem_from_json(const CarrierPtr& k, const Json& j) {
  if (j.is_number_integer())
    return FieldElem::rational(k, Rat(Int(static_cast<long>(j.get<long long>()))));
  if (j.is_string()) {
    std::string s = j.get<std::string>();
    if (k->type == Carrier::Type::FunctionField) return ff_elem_from_string(k, s);
    return FieldElem::rational(k, rat_from_string(s));
  }
  if (j.is_object()) {
    if (j.contains("a") || j.contains("b")) {
      if (k->type != Carrier::Type::Quadratic)
        throw GvfError(Err::Input,
                       "element form {\"a\",\"b\"} needs a quadratic field");
      Rat a = j.contains("a") ? rat_from_json(j.at("a")) : Rat(0);
      Rat b = j.contains("b") ? rat_from_json(j.at("b")) : Rat(0);
      return FieldElem::quadratic(k, a, b);
    }
    if (j.contains("coeffs")) {
      if (k->type != Carrier::Type::NumberField)
        throw GvfError(Err::Input,
                       "element form {\"coeffs\"} needs a number field");
      std::vector<Rat> cs;
      for (const Json& c : need_array(j, "coeffs")) cs.push_back(rat_from_json(c));
      return FieldElem::number_field(k, cs);
    }
    if (j.contains("num") || j.contains("den")) {
      if (k->type != Carrier::Type::FunctionField)
        throw GvfError(Err::Input,
                       "element form {\"num\",\"den\"} needs a function field");
      FieldElem num = ff_elem_from_string(
          k, j.contains("num") ? need_string(j, "num") : std::string("1"));
      FieldElem den = ff_elem_from_string(
          k, j.contains("den") ? need_string(j, "den") : std::string("1"));
      if (den.is_zero())
        throw GvfError(Err::Input, "element denominator is zero");
      return div(num, den);
    }
    throw GvfError(Err::Input, "unrecognized element object");
  }
  throw GvfError(Err::Input, "unrecognized element encoding");
}

std::vector<FieldElem> elems_from_json(const CarrierPtr& k, const Json& j) {
  if (!j.is_array())
    throw GvfError(Err::Input, "expected an array of elements");
  std::vector<FieldElem> out;
  for (const Json& e : j) out.push_back(elem_from_json(k, e));
  return out;
}

Rat rat_from_json(const Json& j) {
  if (j.is_number_integer()) return Rat(Int(static_cast<long>(j.get<long long>())));
  if (j.is_string()) return rat_from_string(j.get<std::string>());
  if (j.is_number_float())
    throw GvfError(Err::Input,
                   "floating-point JSON numbers are not exact; "
                   "write the value as a string");
  throw GvfError(Err::Input, "expected a rational (string or integer)");
}

Int int_from_json(const Json& j) {
  if (j.is_number_integer()) return Int(static_cast<long>(j.get<long long>()));
  if (j.is_string()) {
    try {
      return Int(j.get<std::string>());
    } catch (const std::invalid_argument&) {
      throw GvfError(Err::Input, "bad integer: " + j.get<std::string>());
    }
  }
  throw GvfError(Err::Input, "expected an integer (number or string)");
}

LogLin parse_target(const std::string& text) {
  size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i])))
      ++i;
  };
  auto fail = [&](const std::string& why) {
    throw GvfError(Err::Input, "bad target \"" + text + "\": " + why);
  };
  // log '(' digits ')' with the leading "log" already consumed
  auto parse_log_arg = [&]() -> Int {
    skip();
    if (i >= text.size() || text[i] != '(') fail("expected '(' after log");
    ++i;
    skip();
    size_t start = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
      ++i;
    if (i == start) fail("expected an integer inside log(...)");
    Int n(text.substr(start, i - start));
    skip();
    if (i >= text.size() || text[i] != ')') fail("expected ')'");
    ++i;
    if (sgn(n) <= 0) fail("log needs a positive integer");
    return n;
  };

  LogLin out;
  skip();
  if (i == text.size()) fail("empty");
  bool first = true;
  while (true) {
    skip();
    if (i == text.size()) break;
    int sign = 1;
    if (text[i] == '+' || text[i] == '-') {
      sign = text[i] == '-' ? -1 : 1;
      ++i;
      skip();
    } else if (!first) {
      fail("expected '+' or '-' before \"" + text.substr(i) + "\"");
    }
    if (text.compare(i, 3, "log") == 0) {
      i += 3;
      out += LogLin::log_of_int(parse_log_arg(), Rat(sign));
    } else {
      size_t start = i;
      while (i < text.size()) {
        char ch = text[i];
        if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '.' ||
            ch == '/') {
          ++i;
          continue;
        }
        // exponent of a decimal literal ("1e-6")
        if ((ch == 'e' || ch == 'E') && i + 1 < text.size() &&
            (std::isdigit(static_cast<unsigned char>(text[i + 1])) ||
             ((text[i + 1] == '+' || text[i + 1] == '-') && i + 2 < text.size() &&
              std::isdigit(static_cast<unsigned char>(text[i + 2]))))) {
          i += (text[i + 1] == '+' || text[i + 1] == '-') ? 2 : 1;
          continue;
        }
        break;
      }
      if (i == start) fail("unexpected \"" + text.substr(i) + "\"");
      Rat coeff = rat_from_string(text.substr(start, i - start)) * Rat(sign);
      skip();
      if (i < text.size() && text[i] == '*') {
        ++i;
        skip();
        if (text.compare(i, 3, "log") != 0) fail("expected log after '*'");
        i += 3;
        out += LogLin::log_of_int(parse_log_arg(), coeff);
      } else {
        out += LogLin::constant(coeff);
      }
    }
    first = false;
  }
  out.normalize();
  return out;
}

LogLin target_from_json(const Json& j) {
  if (j.is_string()) return parse_target(j.get<std::string>());
  if (j.is_number_integer())
    return LogLin::constant(Rat(Int(static_cast<long>(j.get<long long>()))));
  if (j.is_number_float())
    throw GvfError(Err::Input,
                   "floating-point JSON numbers are not exact; "
                   "write the target as a string");
  throw GvfError(Err::Input, "expected a target (string or integer)");
}

LatticeDivisor divisor_from_json(const CarrierPtr& k, const Json& j) {
  std::vector<FieldElem> gens = elems_from_json(k, need_array(j, "generators"));
  if (gens.empty())
    throw GvfError(Err::Input, "a divisor needs at least one generator");
  return LatticeDivisor::make(std::move(gens), parse_trop(need_string(j, "term")));
}

Json divisor_to_json(const LatticeDivisor& d) {
  Json gens = Json::array();
  for (const FieldElem& g : d.generators) gens.push_back(elem_to_json(g));
  Json j = Json::object();
  j["generators"] = gens;
  j["term"] = render_trop(*d.term);
  return j;
}

HeightTemplate template_from_json(const Json& j) {
  std::vector<std::string> fns;
  for (const Json& f : need_array(j, "functions")) {
    if (!f.is_string())
      throw GvfError(Err::Input, "template functions must be strings");
    fns.push_back(f.get<std::string>());
  }
  return HeightTemplate::make(fns, need_string(j, "term"));
}

Json template_to_json(const HeightTemplate& t) {
  Json j = Json::object();
  j["functions"] = t.sources;
  j["term"] = render_trop(*t.term);
  return j;
}

PointSpec point_from_json(const CarrierPtr& k, const Json& j) {
  if (!j.is_object())
    throw GvfError(Err::Input, "a point is an object of named coordinates");
  PointSpec x;
  x.k = k;
  for (const auto& [key, val] : j.items()) x.coords[key] = elem_from_json(k, val);
  return x;
}

Json point_to_json(const PointSpec& x) {
  Json j = Json::object();
  for (const auto& [key, val] : x.coords) j[key] = elem_to_json(val);
  return j;
}

FeasibilityInstance feasibility_from_json(const Json& j, long prec,
                                          CarrierPtr* carrier_out) {
  CarrierPtr k = carrier_from_json(need(j, "field"));
  FeasibilityInstance inst;
  inst.generators = elems_from_json(k, need_array(j, "generators"));
  if (j.contains("divisors")) {
    if (!j.at("divisors").is_array())
      throw GvfError(Err::Input, "\"divisors\" must be an array");
    for (const Json& d : j.at("divisors"))
      inst.divisors.push_back(DivisorConstraint{
          parse_trop(need_string(d, "term")), target_from_json(need(d, "target"))});
  }
  Json atoms = j.contains("atoms") ? j.at("atoms") : Json("places");
  if (atoms.is_string()) {
    if (atoms.get<std::string>() != "places")
      throw GvfError(Err::Input, "\"atoms\" must be \"places\" or an array");
    inst.atoms = atoms_from_places(inst.generators, prec);
  } else if (atoms.is_array()) {
    long idx = 0;
    for (const Json& a : atoms) {
      Atom at;
      for (const Json& u : need_array(a, "u")) at.u.push_back(rat_from_json(u));
      std::string cls = need_string(a, "class");
      if (cls == "finite") {
        at.cls = AtomClass::Finite;
        at.p = int_from_json(need(a, "p"));
      } else if (cls == "arch") {
        at.cls = AtomClass::Arch;
      } else if (cls == "free") {
        at.cls = AtomClass::Free;
      } else {
        throw GvfError(Err::Input, "unknown atom class: " + cls);
      }
      ++idx;
      at.label = a.contains("label") ? need_string(a, "label")
                                     : "atom " + std::to_string(idx);
      inst.atoms.push_back(std::move(at));
    }
  } else {
    throw GvfError(Err::Input, "\"atoms\" must be \"places\" or an array");
  }
  if (j.contains("eps")) inst.eps = rat_from_json(j.at("eps"));
  if (carrier_out) *carrier_out = k;
  return inst;
}

SearchSpace space_from_json(const Json& j) {
  SearchSpace s;
  std::string cls = need_string(j, "class");
  if (cls == "rational") {
    s.cls = SearchSpace::Class::Rational;
  } else if (cls == "quadratic") {
    s.cls = SearchSpace::Class::Quadratic;
  } else if (cls == "cyclotomic") {
    s.cls = SearchSpace::Class::Cyclotomic;
  } else if (cls == "custom") {
    s.cls = SearchSpace::Class::Custom;
    for (const Json& c : need_array(j, "min_poly"))
      s.min_poly.push_back(rat_from_json(c));
  } else {
    throw GvfError(Err::Input, "unknown search space class: " + cls);
  }
  if (j.contains("bound")) {
    s.bound = static_cast<long>(ll_from_json(j.at("bound"), "\"bound\""));
    if (s.bound < 1) throw GvfError(Err::Input, "\"bound\" must be positive");
  }
  if (j.contains("ds"))
    for (const Json& d : need_array(j, "ds")) s.ds.push_back(int_from_json(d));
  if (j.contains("max_order")) {
    s.max_order = static_cast<long>(ll_from_json(j.at("max_order"), "\"max_order\""));
    if (s.max_order < 1)
      throw GvfError(Err::Input, "\"max_order\" must be positive");
  }
  return s;
}

namespace {

std::vector<RatExprPtr> exprs_from_json(const Json& j, const char* key) {
  std::vector<RatExprPtr> out;
  if (!j.contains(key)) return out;
  if (!j.at(key).is_array())
    throw GvfError(Err::Input, std::string("\"") + key + "\" must be an array");
  for (const Json& e : j.at(key)) {
    if (!e.is_string())
      throw GvfError(Err::Input,
                     std::string("\"") + key + "\" entries must be strings");
    out.push_back(parse_expr(e.get<std::string>()));
  }
  return out;
}

void common_search_knobs(const Json& j, Rat& eps, unsigned long& seed,
                         int& threads) {
  if (j.contains("eps")) {
    eps = rat_from_json(j.at("eps"));
    if (sgn(eps) <= 0) throw GvfError(Err::Input, "\"eps\" must be positive");
  }
  if (j.contains("seed")) {
    long long v = ll_from_json(j.at("seed"), "\"seed\"");
    if (v < 0) throw GvfError(Err::Input, "\"seed\" must be nonnegative");
    seed = static_cast<unsigned long>(v);
  }
  if (j.contains("threads")) {
    long long v = ll_from_json(j.at("threads"), "\"threads\"");
    if (v < 1) throw GvfError(Err::Input, "\"threads\" must be at least 1");
    threads = static_cast<int>(v);
  }
}

}  // namespace

SearchProblem search_from_json(const Json& j) {
  SearchProblem p;
  p.space = space_from_json(need(j, "space"));
  for (const Json& c : need_array(j, "constraints"))
    p.constraints.push_back(SearchConstraint{template_from_json(c),
                                             target_from_json(need(c, "target"))});
  if (p.constraints.empty())
    throw GvfError(Err::Input, "a search needs at least one constraint");
  p.equations = exprs_from_json(j, "equations");
  p.inequations = exprs_from_json(j, "inequations");
  common_search_knobs(j, p.eps, p.seed, p.threads);
  if (j.contains("exhaustive"))
    p.exhaustive = bool_from_json(j.at("exhaustive"), "\"exhaustive\"");
  if (j.contains("mode")) {
    std::string m = need_string(j, "mode");
    if (m == "first")
      p.exhaustive = false;
    else if (m == "exhaustive")
      p.exhaustive = true;
    else
      throw GvfError(Err::Input, "\"mode\" must be \"first\" or \"exhaustive\"");
  }
  return p;
}

ZetaProblem zeta_from_json(const Json& j) {
  ZetaProblem p;
  p.space = space_from_json(need(j, "space"));
  p.objective = template_from_json(need(j, "objective"));
  p.equations = exprs_from_json(j, "equations");
  p.exclusions = exprs_from_json(j, "exclusions");
  common_search_knobs(j, p.eps, p.seed, p.threads);
  if (j.contains("with_lp"))
    p.with_lp = bool_from_json(j.at("with_lp"), "\"with_lp\"");
  return p;
}

Json value_to_json(const GvfValue& v, long prec) {
  Json j = Json::object();
  j["exact"] = v.is_exact;
  if (v.is_exact) j["value"] = v.exact.str();
  Ball b = v.render(prec);
  j["mid"] = b.mid_str();
  j["rad"] = b.rad_str();
  return j;
}

Json load_json_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw GvfError(Err::Input, "cannot open file: " + path);
  try {
    return Json::parse(f);
  } catch (const nlohmann::json::parse_error& e) {
    throw GvfError(Err::Input,
                   "JSON parse error in " + path + ": " + std::string(e.what()));
  }
}

}  // namespace gvf
