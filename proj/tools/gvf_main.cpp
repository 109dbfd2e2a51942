// Command-line driver: evaluation, axiom checks, divisor calculus, exact
// feasibility, point search and essential-infimum estimation over globally
// valued fields.

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gvf/divisors.hpp"
#include "gvf/errors.hpp"
#include "gvf/feasibility.hpp"
#include "gvf/gvf.hpp"
#include "gvf/io.hpp"
#include "gvf/search.hpp"

namespace {

using namespace gvf;

// Exit codes: 0 success/verified, 1 adverse verdict (violation, infeasible,
// not effective, nothing found), 2 bad input, 3 precision exhausted.
int exit_code_for(Err code) {
  switch (code) {
    case Err::PrecisionExhausted:
    case Err::ToleranceTooTight:
      return 3;
    case Err::NoCandidate:
    case Err::Unbounded:
      return 1;
    default:
      return 2;
  }
}

int fail_with(const GvfError& e, bool json) {
  if (json) {
    Json err = Json::object();
    err["code"] = err_name(e.code());
    err["message"] = e.what();
    Json out = Json::object();
    out["error"] = err;
    std::cout << out.dump() << "\n";
  } else {
    std::cerr << "error: " << e.what() << " [" << err_name(e.code()) << "]\n";
  }
  return exit_code_for(e.code());
}

// Flag values may be inline JSON or a bare string (element/field shorthand).
Json parse_flag_json(const std::string& s) {
  try {
    return Json::parse(s);
  } catch (const nlohmann::json::parse_error&) {
    return Json(s);
  }
}

std::string dec(double x) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

std::string dec(const Rat& q) { return dec(q.get_d()); }

void print_value(const GvfValue& v, long prec, bool json) {
  if (json)
    std::cout << value_to_json(v, prec).dump() << "\n";
  else
    std::cout << v.str(prec) << "\n";
}

std::string term_at_place_str(const TermAtPlace& tp) {
  switch (tp.kind) {
    case TermAtPlace::Kind::Rational:
      return rat_to_string(tp.rat);
    case TermAtPlace::Kind::Symbolic:
      return tp.ll.str();
    case TermAtPlace::Kind::Enclosure:
      return tp.ball.str();
  }
  return "?";
}

Json residual_to_json(const Residual& r) {
  Json j = Json::object();
  j["exact_zero"] = r.exact_zero;
  if (!r.exact_zero) j["exact_part"] = r.exact_part.str();
  j["mid"] = r.enclosure.mid_str();
  j["rad"] = r.enclosure.rad_str();
  j["contains_zero"] = r.enclosure_has_zero;
  return j;
}

void print_residual_text(const char* name, const Residual& r) {
  std::cout << name << ": exact part "
            << (r.exact_zero ? std::string("0") : r.exact_part.str())
            << "; enclosure " << r.enclosure.str()
            << (r.enclosure_has_zero ? " (contains 0)" : " (excludes 0)")
            << "\n";
}

bool residual_ok(const Residual& r) {
  return r.exact_zero && r.enclosure_has_zero;
}

struct DivisorInput {
  CarrierPtr k;
  LatticeDivisor d;
};

DivisorInput resolve_divisor(const std::string& instance,
                             const std::string& field,
                             const std::string& divisor) {
  if (!instance.empty()) {
    Json j = load_json_file(instance);
    if (!j.is_object() || !j.contains("field") || !j.contains("divisor"))
      throw GvfError(Err::Input,
                     "instance file needs \"field\" and \"divisor\"");
    CarrierPtr k = carrier_from_json(j.at("field"));
    return DivisorInput{k, divisor_from_json(k, j.at("divisor"))};
  }
  if (field.empty() || divisor.empty())
    throw GvfError(Err::Input,
                   "provide --instance, or both --field and --divisor");
  CarrierPtr k = carrier_from_json(parse_flag_json(field));
  return DivisorInput{k, divisor_from_json(k, parse_flag_json(divisor))};
}

void print_point_text(const PointSpec& x) {
  for (const auto& [name, val] : x.coords)
    std::cout << "  " << name << " = " << elem_str(val) << "\n";
}

Json point_with_field(const PointSpec& x) {
  Json j = Json::object();
  j["field"] = carrier_to_json(x.k);
  j["coords"] = point_to_json(x);
  return j;
}

Json masses_to_json(const FeasibilityInstance& inst,
                    const FeasibilityReport& rep) {
  Json arr = Json::array();
  for (size_t i = 0; i < rep.masses.size(); ++i) {
    Json m = Json::object();
    m["label"] = inst.atoms[i].label;
    m["mass"] = rat_to_string(rep.masses[i]);
    m["decimal"] = dec(rep.masses[i]);
    arr.push_back(m);
  }
  return arr;
}

int report_feasibility(const FeasibilityInstance& inst,
                       const FeasibilityReport& rep, bool json,
                       bool minimized) {
  if (json) {
    Json j = Json::object();
    j["feasible"] = rep.feasible;
    if (rep.feasible) {
      if (minimized && rep.objective) {
        j["minimum"] = rat_to_string(*rep.objective);
        j["minimum_decimal"] = dec(*rep.objective);
      }
      j["masses"] = masses_to_json(inst, rep);
    } else {
      Json dual = Json::array();
      for (size_t i = 0; i < rep.dual.size(); ++i) {
        if (sgn(rep.dual[i]) == 0) continue;
        Json e = Json::object();
        e["row"] = rep.row_labels[i];
        e["value"] = rat_to_string(rep.dual[i]);
        dual.push_back(e);
      }
      j["dual"] = dual;
      j["dual_gap"] = dec(rep.dual_gap);
    }
    j["perturbation_bound"] = dec(rep.perturbation_bound);
    std::cout << j.dump() << "\n";
  } else {
    if (rep.feasible) {
      if (minimized && rep.objective)
        std::cout << "minimum = " << dec(*rep.objective) << "\n";
      std::cout << "feasible\n";
      for (size_t i = 0; i < rep.masses.size(); ++i)
        std::cout << "mass[" << inst.atoms[i].label
                  << "] = " << dec(rep.masses[i]) << "\n";
    } else {
      std::cout << "infeasible\n";
      for (size_t i = 0; i < rep.dual.size(); ++i)
        if (sgn(rep.dual[i]) != 0)
          std::cout << "dual[" << rep.row_labels[i]
                    << "] = " << rat_to_string(rep.dual[i]) << "\n";
      std::cout << "dual gap = " << dec(rep.dual_gap) << "\n";
    }
    std::cout << "perturbation bound = " << dec(rep.perturbation_bound)
              << "\n";
  }
  return rep.feasible ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact and certified computations over globally valued fields"};
  app.require_subcommand(1);
  app.fallthrough();

  long prec = kDefaultPrec;
  bool json = false;
  app.add_option("--precision", prec, "working precision in bits")
      ->envname("GVF_PRECISION");
  app.add_flag("--json", json, "machine-readable output");

  std::string field, elem, expr, args, divisor_s, template_s, point_s;
  std::string instance, t1, t2, alpha = "1", eps_s, mode, left_s, right_s;
  unsigned long seed = 0;
  int threads = 1;
  long bound = 0;
  bool with_lp = false;

  auto* s_eval = app.add_subcommand("eval", "evaluate a predicate on a tuple");
  s_eval->fallthrough();
  s_eval->add_option("--field", field, "field descriptor")->required();
  s_eval->add_option("--expr", expr, "tropical term in x1..xn")->required();
  s_eval->add_option("--args", args, "JSON array of elements")->required();

  auto* s_height = app.add_subcommand("height", "height of an element");
  s_height->fallthrough();
  s_height->add_option("--field", field, "field descriptor")->required();
  s_height->add_option("--elem", elem, "element")->required();

  auto* s_places = app.add_subcommand("places", "support places of a tuple");
  s_places->fallthrough();
  s_places->add_option("--field", field, "field descriptor")->required();
  s_places->add_option("--args", args, "JSON array of elements")->required();

  auto* s_check = app.add_subcommand("check", "verify axioms and identities");
  s_check->require_subcommand(1);
  s_check->fallthrough();
  auto* c_prod = s_check->add_subcommand("product", "product formula");
  c_prod->fallthrough();
  c_prod->add_option("--field", field, "field descriptor")->required();
  c_prod->add_option("--elem", elem, "nonzero element")->required();
  auto* c_lin = s_check->add_subcommand("linearity", "additivity/homogeneity");
  c_lin->fallthrough();
  c_lin->add_option("--field", field, "field descriptor")->required();
  c_lin->add_option("--t1", t1, "first tropical term")->required();
  c_lin->add_option("--t2", t2, "second tropical term")->required();
  c_lin->add_option("--alpha", alpha, "homogeneity scalar (rational)");
  c_lin->add_option("--args", args, "JSON array of elements")->required();
  auto* c_pos = s_check->add_subcommand("positivity", "local-global positivity");
  c_pos->fallthrough();
  c_pos->add_option("--field", field, "field descriptor")->required();
  c_pos->add_option("--expr", expr, "tropical term")->required();
  c_pos->add_option("--args", args, "JSON array of elements")->required();
  auto* c_gal = s_check->add_subcommand("galois", "conjugation invariance");
  c_gal->fallthrough();
  c_gal->add_option("--field", field, "field descriptor")->required();
  c_gal->add_option("--expr", expr, "tropical term")->required();
  c_gal->add_option("--args", args, "JSON array of elements")->required();

  auto* s_div = app.add_subcommand("divisor", "lattice divisor calculus");
  s_div->require_subcommand(1);
  s_div->fallthrough();
  auto* d_eval = s_div->add_subcommand("eval", "pairing at each support place");
  d_eval->fallthrough();
  d_eval->add_option("--field", field, "field descriptor");
  d_eval->add_option("--divisor", divisor_s, "divisor JSON");
  d_eval->add_option("--instance", instance, "instance file");
  auto* d_eff = s_div->add_subcommand("effective", "effectivity over support");
  d_eff->fallthrough();
  d_eff->add_option("--field", field, "field descriptor");
  d_eff->add_option("--divisor", divisor_s, "divisor JSON");
  d_eff->add_option("--instance", instance, "instance file");
  auto* d_wedge = s_div->add_subcommand("wedge", "minimum of two divisors");
  d_wedge->fallthrough();
  d_wedge->add_option("--field", field, "field descriptor");
  d_wedge->add_option("--left", left_s, "left divisor JSON");
  d_wedge->add_option("--right", right_s, "right divisor JSON");
  d_wedge->add_option("--instance", instance, "instance file");

  auto* s_ph = app.add_subcommand("point-height", "height template at a point");
  s_ph->fallthrough();
  s_ph->add_option("--field", field, "field descriptor");
  s_ph->add_option("--template", template_s, "height template JSON");
  s_ph->add_option("--point", point_s, "point coordinates JSON");
  s_ph->add_option("--instance", instance, "instance file");

  auto* s_feas = app.add_subcommand("feasible", "measure feasibility (exact LP)");
  s_feas->fallthrough();
  s_feas->add_option("--instance", instance, "instance file")->required();
  auto* feas_eps = s_feas->add_option("--eps", eps_s, "tolerance override");

  auto* s_min = app.add_subcommand("minimize", "minimize a functional on the cone");
  s_min->fallthrough();
  s_min->add_option("--instance", instance, "instance file")->required();
  auto* min_eps = s_min->add_option("--eps", eps_s, "tolerance override");

  auto* s_search = app.add_subcommand("search", "search for points with given heights");
  s_search->fallthrough();
  s_search->add_option("--instance", instance, "instance file")->required();
  auto* se_seed = s_search->add_option("--seed", seed, "seed to echo");
  auto* se_thr = s_search->add_option("--threads", threads, "worker threads");
  auto* se_eps = s_search->add_option("--eps", eps_s, "tolerance override");
  auto* se_bound = s_search->add_option("--bound", bound, "enumeration bound");
  auto* se_mode = s_search->add_option("--mode", mode, "first or exhaustive");

  auto* s_zeta = app.add_subcommand("zeta", "essential-infimum estimate");
  s_zeta->fallthrough();
  s_zeta->add_option("--instance", instance, "instance file")->required();
  auto* ze_seed = s_zeta->add_option("--seed", seed, "seed to echo");
  auto* ze_thr = s_zeta->add_option("--threads", threads, "worker threads");
  auto* ze_eps = s_zeta->add_option("--eps", eps_s, "tolerance override");
  auto* ze_bound = s_zeta->add_option("--bound", bound, "enumeration bound");
  auto* ze_lp = s_zeta->add_flag("--lp", with_lp, "certify a lower bound by LP");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int r = app.exit(e);
    return r == 0 ? 0 : 2;
  }

  try {
    if (prec < 16 || prec > (1L << 22))
      throw GvfError(Err::Input, "precision must be between 16 and 2^22 bits");

    if (s_eval->parsed()) {
      CarrierPtr k = carrier_from_json(parse_flag_json(field));
      std::vector<FieldElem> elems = elems_from_json(k, parse_flag_json(args));
      GvfValue v = r_t(*parse_trop(expr), elems, prec);
      print_value(v, prec, json);
      return 0;
    }

    if (s_height->parsed()) {
      CarrierPtr k = carrier_from_json(parse_flag_json(field));
      GvfValue v = height(elem_from_json(k, parse_flag_json(elem)), prec);
      print_value(v, prec, json);
      return 0;
    }

    if (s_places->parsed()) {
      CarrierPtr k = carrier_from_json(parse_flag_json(field));
      std::vector<FieldElem> elems = elems_from_json(k, parse_flag_json(args));
      std::vector<Place> places = support_places(elems, prec);
      if (json) {
        Json arr = Json::array();
        for (const Place& v : places) {
          Json e = Json::object();
          e["id"] = v.id();
          e["weight"] = v.weight().str();
          arr.push_back(e);
        }
        Json out = Json::object();
        out["places"] = arr;
        std::cout << out.dump() << "\n";
      } else {
        for (const Place& v : places)
          std::cout << v.id() << "  weight = " << v.weight().str() << "\n";
      }
      return 0;
    }

    if (s_check->parsed() && c_prod->parsed()) {
      CarrierPtr k = carrier_from_json(parse_flag_json(field));
      FieldElem x = elem_from_json(k, parse_flag_json(elem));
      ProductFormulaCheck c = check_product_formula(x, prec);
      bool ok = c.exact_zero &&
                (c.arch_certified || c.arch_residual.contains_zero());
      if (json) {
        Json j = Json::object();
        j["ok"] = ok;
        j["finite_exact_zero"] = c.exact_zero;
        if (!c.exact_zero) j["finite_residual"] = c.exact_residual.str();
        j["arch_certified"] = c.arch_certified;
        j["arch_mid"] = c.arch_residual.mid_str();
        j["arch_rad"] = c.arch_residual.rad_str();
        std::cout << j.dump() << "\n";
      } else {
        std::cout << "finite part: "
                  << (c.exact_zero ? std::string("0 (exact)")
                                   : c.exact_residual.str())
                  << "\n";
        std::cout << "archimedean part: "
                  << (c.arch_certified ? std::string("0 (certified)")
                                       : c.arch_residual.str())
                  << "\n";
        std::cout << "product formula: " << (ok ? "ok" : "VIOLATED") << "\n";
      }
      return ok ? 0 : 1;
    }

    if (s_check->parsed() && c_lin->parsed()) {
      CarrierPtr k = carrier_from_json(parse_flag_json(field));
      std::vector<FieldElem> elems = elems_from_json(k, parse_flag_json(args));
      LinearityCheck c = check_linearity(parse_trop(t1), parse_trop(t2),
                                         rat_from_string(alpha), elems, prec);
      bool ok = residual_ok(c.additivity) && residual_ok(c.homogeneity);
      if (json) {
        Json j = Json::object();
        j["ok"] = ok;
        j["additivity"] = residual_to_json(c.additivity);
        j["homogeneity"] = residual_to_json(c.homogeneity);
        std::cout << j.dump() << "\n";
      } else {
        print_residual_text("additivity", c.additivity);
        print_residual_text("homogeneity", c.homogeneity);
        std::cout << "linearity: " << (ok ? "ok" : "VIOLATED") << "\n";
      }
      return ok ? 0 : 1;
    }

    if (s_check->parsed() && c_pos->parsed()) {
      CarrierPtr k = carrier_from_json(parse_flag_json(field));
      std::vector<FieldElem> elems = elems_from_json(k, parse_flag_json(args));
      PositivityCheck c = check_positivity(parse_trop(expr), elems, prec);
      if (json) {
        Json j = Json::object();
        j["verdict"] = c.verdict == PositivityVerdict::PremiseFails
                           ? "premise_fails"
                           : (c.verdict == PositivityVerdict::Nonnegative
                                  ? "nonnegative"
                                  : "violation");
        if (c.verdict == PositivityVerdict::PremiseFails)
          j["witness"] = c.witness;
        else
          j["value"] = value_to_json(c.value, prec);
        std::cout << j.dump() << "\n";
      } else {
        switch (c.verdict) {
          case PositivityVerdict::PremiseFails:
            std::cout << "premise fails at " << c.witness << "\n";
            break;
          case PositivityVerdict::Nonnegative:
            std::cout << "value = " << c.value.str(prec) << "\n"
                      << "positivity: ok\n";
            break;
          case PositivityVerdict::Violation:
            std::cout << "value = " << c.value.str(prec) << "\n"
                      << "positivity: VIOLATED\n";
            break;
        }
      }
      return c.verdict == PositivityVerdict::Violation ? 1 : 0;
    }

    if (s_check->parsed() && c_gal->parsed()) {
      CarrierPtr k = carrier_from_json(parse_flag_json(field));
      std::vector<FieldElem> elems = elems_from_json(k, parse_flag_json(args));
      Residual r = check_galois(parse_trop(expr), elems, prec);
      bool ok = residual_ok(r);
      if (json) {
        Json j = Json::object();
        j["ok"] = ok;
        j["residual"] = residual_to_json(r);
        std::cout << j.dump() << "\n";
      } else {
        print_residual_text("conjugation residual", r);
        std::cout << "galois invariance: " << (ok ? "ok" : "VIOLATED") << "\n";
      }
      return ok ? 0 : 1;
    }

    if (s_div->parsed() && d_eval->parsed()) {
      DivisorInput in = resolve_divisor(instance, field, divisor_s);
      std::vector<Place> places = support_places(in.d.generators, prec);
      if (json) {
        Json arr = Json::array();
        for (const Place& v : places) {
          TermAtPlace tp = beta(v, in.d, prec);
          Json e = Json::object();
          e["id"] = v.id();
          switch (tp.kind) {
            case TermAtPlace::Kind::Rational:
              e["kind"] = "rational";
              e["value"] = rat_to_string(tp.rat);
              break;
            case TermAtPlace::Kind::Symbolic:
              e["kind"] = "symbolic";
              e["value"] = tp.ll.str();
              break;
            case TermAtPlace::Kind::Enclosure:
              e["kind"] = "enclosure";
              e["mid"] = tp.ball.mid_str();
              e["rad"] = tp.ball.rad_str();
              break;
          }
          arr.push_back(e);
        }
        Json out = Json::object();
        out["values"] = arr;
        std::cout << out.dump() << "\n";
      } else {
        for (const Place& v : places)
          std::cout << v.id() << "  "
                    << term_at_place_str(beta(v, in.d, prec)) << "\n";
      }
      return 0;
    }

    if (s_div->parsed() && d_eff->parsed()) {
      DivisorInput in = resolve_divisor(instance, field, divisor_s);
      EffectivityCheck c = is_effective_on_support(in.d, prec);
      if (json) {
        Json j = Json::object();
        j["effective"] = c.effective;
        if (c.effective)
          j["proven"] = c.proven;
        else
          j["witness"] = c.witness;
        std::cout << j.dump() << "\n";
      } else {
        if (c.effective)
          std::cout << "effective"
                    << (c.proven ? " (certified)" : " (numerical)") << "\n";
        else
          std::cout << "not effective at " << c.witness << "\n";
      }
      return c.effective ? 0 : 1;
    }

    if (s_div->parsed() && d_wedge->parsed()) {
      CarrierPtr k;
      LatticeDivisor l, r;
      if (!instance.empty()) {
        Json j = load_json_file(instance);
        if (!j.is_object() || !j.contains("field") || !j.contains("left") ||
            !j.contains("right"))
          throw GvfError(Err::Input,
                         "instance file needs \"field\", \"left\", \"right\"");
        k = carrier_from_json(j.at("field"));
        l = divisor_from_json(k, j.at("left"));
        r = divisor_from_json(k, j.at("right"));
      } else {
        if (field.empty() || left_s.empty() || right_s.empty())
          throw GvfError(
              Err::Input,
              "provide --instance, or --field with --left and --right");
        k = carrier_from_json(parse_flag_json(field));
        l = divisor_from_json(k, parse_flag_json(left_s));
        r = divisor_from_json(k, parse_flag_json(right_s));
      }
      LatticeDivisor w = wedge(l, r);
      if (json) {
        std::cout << divisor_to_json(w).dump() << "\n";
      } else {
        std::cout << "term: " << render_trop(*w.term) << "\n";
        for (const FieldElem& g : w.generators)
          std::cout << "generator: " << elem_str(g) << "\n";
      }
      return 0;
    }

    if (s_ph->parsed()) {
      CarrierPtr k;
      HeightTemplate t;
      PointSpec x;
      if (!instance.empty()) {
        Json j = load_json_file(instance);
        if (!j.is_object() || !j.contains("field") || !j.contains("template") ||
            !j.contains("point"))
          throw GvfError(
              Err::Input,
              "instance file needs \"field\", \"template\", \"point\"");
        k = carrier_from_json(j.at("field"));
        t = template_from_json(j.at("template"));
        x = point_from_json(k, j.at("point"));
      } else {
        if (field.empty() || template_s.empty() || point_s.empty())
          throw GvfError(
              Err::Input,
              "provide --instance, or --field with --template and --point");
        k = carrier_from_json(parse_flag_json(field));
        t = template_from_json(parse_flag_json(template_s));
        x = point_from_json(k, parse_flag_json(point_s));
      }
      try {
        GvfValue v = height_at_point(t, x, prec);
        print_value(v, prec, json);
        return 0;
      } catch (const GvfError& e) {
        if (e.code() != Err::PointOnSupport) throw;
        if (json) {
          Json j = Json::object();
          j["on_support"] = true;
          std::cout << j.dump() << "\n";
        } else {
          std::cout << "point lies on the divisor support\n";
        }
        return 1;
      }
    }

    if (s_feas->parsed() || s_min->parsed()) {
      bool minimizing = s_min->parsed();
      Json j = load_json_file(instance);
      FeasibilityInstance inst = feasibility_from_json(j, prec);
      if ((minimizing ? min_eps : feas_eps)->count() > 0) {
        inst.eps = rat_from_string(eps_s);
        if (sgn(inst.eps) <= 0)
          throw GvfError(Err::Input, "eps must be positive");
      }
      FeasibilityReport rep;
      if (minimizing) {
        if (!j.contains("objective") || !j.at("objective").is_string())
          throw GvfError(
              Err::Input,
              "minimize needs an \"objective\" term string in the instance");
        TropPtr obj = parse_trop(j.at("objective").get<std::string>());
        rep = minimize_functional(inst, obj, prec);
      } else {
        rep = solve_feasibility(inst, prec);
      }
      return report_feasibility(inst, rep, json, minimizing);
    }

    if (s_search->parsed()) {
      SearchProblem p = search_from_json(load_json_file(instance));
      if (se_seed->count() > 0) p.seed = seed;
      if (se_thr->count() > 0) {
        if (threads < 1) throw GvfError(Err::Input, "threads must be >= 1");
        p.threads = threads;
      }
      if (se_eps->count() > 0) {
        p.eps = rat_from_string(eps_s);
        if (sgn(p.eps) <= 0) throw GvfError(Err::Input, "eps must be positive");
      }
      if (se_bound->count() > 0) {
        if (bound < 1) throw GvfError(Err::Input, "bound must be positive");
        p.space.bound = bound;
      }
      if (se_mode->count() > 0) {
        if (mode == "first")
          p.exhaustive = false;
        else if (mode == "exhaustive")
          p.exhaustive = true;
        else
          throw GvfError(Err::Input, "mode must be first or exhaustive");
      }
      SearchResult r = approximate_point(p, prec);
      if (json) {
        Json out = Json::object();
        out["found"] = r.found;
        out["examined"] = r.examined;
        out["filtered"] = r.filtered;
        out["seed"] = r.seed;
        if (r.found) {
          out["point"] = point_with_field(r.best->point);
          out["worst"] = dec(r.best->worst);
          Json devs = Json::array();
          for (double d : r.best->deviations) devs.push_back(dec(d));
          out["deviations"] = devs;
          out["hits"] = static_cast<long>(r.hits.size());
        }
        std::cout << out.dump() << "\n";
      } else {
        if (r.found) {
          std::cout << "found (examined " << r.examined << ", filtered "
                    << r.filtered << ", seed " << r.seed << ")\n";
          print_point_text(r.best->point);
          std::cout << "worst deviation = " << dec(r.best->worst) << "\n";
          if (p.exhaustive)
            std::cout << "hits = " << r.hits.size() << "\n";
        } else {
          std::cout << "no point within eps (examined " << r.examined
                    << ", filtered " << r.filtered << ", seed " << r.seed
                    << ")\n";
        }
      }
      return r.found ? 0 : 1;
    }

    if (s_zeta->parsed()) {
      ZetaProblem p = zeta_from_json(load_json_file(instance));
      if (ze_seed->count() > 0) p.seed = seed;
      if (ze_thr->count() > 0) {
        if (threads < 1) throw GvfError(Err::Input, "threads must be >= 1");
        p.threads = threads;
      }
      if (ze_eps->count() > 0) {
        p.eps = rat_from_string(eps_s);
        if (sgn(p.eps) <= 0) throw GvfError(Err::Input, "eps must be positive");
      }
      if (ze_bound->count() > 0) {
        if (bound < 1) throw GvfError(Err::Input, "bound must be positive");
        p.space.bound = bound;
      }
      if (ze_lp->count() > 0) p.with_lp = with_lp;
      ZetaEstimate z = zeta_estimate(p, prec);
      if (json) {
        Json out = Json::object();
        out["upper"] = dec(z.upper);
        out["exact_zero"] = z.exact_zero;
        out["witness"] = point_with_field(z.witness);
        out["examined"] = z.examined;
        out["filtered"] = z.filtered;
        if (z.lp_lower) out["lp_lower"] = dec(*z.lp_lower);
        Json tr = Json::array();
        for (double d : z.trace) tr.push_back(dec(d));
        out["trace"] = tr;
        std::cout << out.dump() << "\n";
      } else {
        std::cout << "upper bound = " << dec(z.upper) << "\n";
        std::cout << "exact zero = " << (z.exact_zero ? "yes" : "no") << "\n";
        std::cout << "witness:\n";
        print_point_text(z.witness);
        std::cout << "examined " << z.examined << " (filtered " << z.filtered
                  << ")\n";
        if (z.lp_lower)
          std::cout << "lp lower bound = " << dec(*z.lp_lower) << "\n";
      }
      return 0;
    }

    throw GvfError(Err::Input, "no subcommand selected");
  } catch (const GvfError& e) {
    return fail_with(e, json);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
