#include "gvf/search.hpp"

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <thread>
#include <utility>

#include "gvf/errors.hpp"
#include "gvf/feasibility.hpp"
#include "gvf/gvf.hpp"
#include "gvf/poly.hpp"

namespace gvf {
namespace {

double rat_to_double(const Rat& q) { return q.get_d(); }

Rat make_rat(long n, long d) {
  Rat r(n, d);
  r.canonicalize();
  return r;
}

struct Coordinate {
  FieldElem value;
  long level;
};

// One carrier's coordinate list; levels are nondecreasing along the list and
// tuples stream grade-major (sum of levels), index-lex within a grade.
struct Group {
  CarrierPtr k;
  std::vector<Coordinate> coords;
  bool require_irrational = false;  // quadratic: some coordinate with b != 0
};

std::vector<Coordinate> rational_coords(const CarrierPtr& q, long bound) {
  std::vector<Coordinate> out;
  out.push_back({FieldElem::zero(q), 0});
  for (long l = 1; l <= bound; ++l) {
    for (long b = 1; b <= l; ++b) {
      if (std::gcd(l, b) != 1) continue;
      out.push_back({FieldElem::rational(q, make_rat(l, b)), l});
      out.push_back({FieldElem::rational(q, make_rat(-l, b)), l});
    }
    for (long a = 1; a < l; ++a) {
      if (std::gcd(a, l) != 1) continue;
      out.push_back({FieldElem::rational(q, make_rat(a, l)), l});
      out.push_back({FieldElem::rational(q, make_rat(-a, l)), l});
    }
  }
  return out;
}

std::vector<Coordinate> quadratic_coords(const CarrierPtr& k, long bound) {
  std::vector<Coordinate> out;
  for (long h = 1; h <= bound; ++h) {
    for (long a = -h; a <= h; ++a) {
      for (long b = -h; b <= h; ++b) {
        for (long c = 1; c <= h; ++c) {
          if (std::max({std::labs(a), std::labs(b), c}) != h) continue;
          if (std::gcd(std::gcd(std::labs(a), std::labs(b)), c) != 1) continue;
          out.push_back(
              {FieldElem::quadratic(k, make_rat(a, c), make_rat(b, c)), h});
        }
      }
    }
  }
  return out;
}

bool squarefree_small(long m) {
  for (const auto& [p, e] : factor_int(Int(m))) {
    (void)p;
    if (e > 1) return false;
  }
  return true;
}

std::vector<Int> quad_ds(const SearchSpace& s) {
  if (!s.ds.empty()) return s.ds;
  std::vector<Int> out;
  for (long m = 1; m <= s.bound; ++m) {
    if (!squarefree_small(m)) continue;
    if (m != 1) out.push_back(Int(m));
    out.push_back(Int(-m));
  }
  return out;
}

PolyQ cyclotomic_q(long k, std::map<long, PolyQ>& memo) {
  auto it = memo.find(k);
  if (it != memo.end()) return it->second;
  PolyQ num(static_cast<size_t>(k) + 1, Rat(0));
  num[0] = Rat(-1);
  num[static_cast<size_t>(k)] = Rat(1);
  for (long d = 1; d < k; ++d) {
    if (k % d != 0) continue;
    num = qx::divmod(num, cyclotomic_q(d, memo)).first;
  }
  memo[k] = num;
  return memo[k];
}

void cyclotomic_groups(long max_order, std::vector<Group>& out) {
  if (max_order < 1) {
    throw GvfError(Err::Input, "cyclotomic search needs max order >= 1");
  }
  CarrierPtr q = Carrier::rationals();
  std::map<long, PolyQ> memo;
  for (long k = 1; k <= max_order; ++k) {
    Group g;
    if (k == 1) {
      g.k = q;
      g.coords.push_back({FieldElem::one(q), k});
    } else if (k == 2) {
      g.k = q;
      g.coords.push_back({FieldElem::rational(q, Rat(-1)), k});
    } else if (k == 3 || k == 6) {
      CarrierPtr f = Carrier::quadratic(Int(-3));
      Rat re = k == 3 ? Rat(-1, 2) : Rat(1, 2);
      g.k = f;
      g.coords.push_back({FieldElem::quadratic(f, re, Rat(1, 2)), k});
      g.coords.push_back({FieldElem::quadratic(f, re, Rat(-1, 2)), k});
    } else if (k == 4) {
      CarrierPtr f = Carrier::quadratic(Int(-1));
      g.k = f;
      g.coords.push_back({FieldElem::quadratic(f, Rat(0), Rat(1)), k});
      g.coords.push_back({FieldElem::quadratic(f, Rat(0), Rat(-1)), k});
    } else {
      PolyQ phi = cyclotomic_q(k, memo);
      PolyZ mp;
      for (const auto& c : phi) mp.push_back(c.get_num());
      // Phi_k is irreducible over Q for every k, so the modular certificate
      // may be skipped when it is inconclusive (e.g. x^4 + 1).
      CarrierPtr f = Carrier::number_field(mp, /*trust_irreducible=*/true);
      g.k = f;
      FieldElem alpha = FieldElem::number_field(f, {Rat(0), Rat(1)});
      for (long j = 1; j < k; ++j) {
        if (std::gcd(j, k) != 1) continue;
        g.coords.push_back({pow(alpha, j), k});
      }
    }
    out.push_back(std::move(g));
  }
}

std::vector<Int> divisors_of(const Int& n) {
  std::vector<Int> out{Int(1)};
  for (const auto& [p, e] : factor_int(n)) {
    size_t base = out.size();
    Int pk(1);
    for (int i = 1; i <= e; ++i) {
      pk *= p;
      for (size_t j = 0; j < base; ++j) out.push_back(out[j] * pk);
    }
  }
  return out;
}

void custom_groups(const std::vector<Rat>& poly_in, std::vector<Group>& out) {
  PolyQ f = poly_in;
  qx::trim(f);
  int dg = qx::deg(f);
  if (dg < 1 || dg > 3) {
    throw GvfError(Err::Input,
                   "custom search needs a polynomial of degree 1 to 3");
  }
  CarrierPtr q = Carrier::rationals();

  std::vector<Rat> rational_roots;
  auto deflate_all = [&](const Rat& r) {
    PolyQ lin{-r, Rat(1)};
    for (;;) {
      auto [quo, rem] = qx::divmod(f, lin);
      if (qx::deg(rem) >= 0 && !(qx::deg(rem) == 0 && sgn(rem[0]) == 0)) break;
      f = quo;
      if (std::find(rational_roots.begin(), rational_roots.end(), r) ==
          rational_roots.end()) {
        rational_roots.push_back(r);
      }
      if (qx::deg(f) == 0) break;
      if (sgn(qx::eval(f, r)) != 0) break;
    }
  };
  while (qx::deg(f) > 0 && sgn(f[0]) == 0) deflate_all(Rat(0));
  if (qx::deg(f) > 0) {
    auto [zf, den] = qx::clear_denominators(f);
    (void)den;
    Int lead = zf.back();
    for (const auto& num : divisors_of(zf[0] == 0 ? Int(1) : zf[0])) {
      for (const auto& dnm : divisors_of(lead)) {
        for (int s : {1, -1}) {
          Rat r = Rat(s * num) / Rat(dnm);
          if (qx::deg(f) > 0 && sgn(qx::eval(f, r)) == 0) deflate_all(r);
        }
      }
    }
  }
  if (!rational_roots.empty()) {
    Group g;
    g.k = q;
    long lvl = 1;
    for (const auto& r : rational_roots) {
      g.coords.push_back({FieldElem::rational(q, r), lvl++});
    }
    out.push_back(std::move(g));
  }

  int rest = qx::deg(f);
  if (rest == 2) {
    auto [zf, den] = qx::clear_denominators(f);
    (void)den;
    Int c0 = zf[0], c1 = zf[1], c2 = zf[2];
    Int disc = c1 * c1 - 4 * c2 * c0;
    Int s(1), m(1);
    for (const auto& [p, e] : factor_int(disc)) {
      for (int i = 0; i < e / 2; ++i) s *= p;
      if (e % 2 == 1) m *= p;
    }
    Int d = sgn(Rat(disc)) < 0 ? Int(-m) : m;
    CarrierPtr k = Carrier::quadratic(d);
    Rat re = Rat(-c1) / Rat(2 * c2);
    Rat im = Rat(s) / Rat(2 * c2);
    Group g;
    g.k = k;
    g.coords.push_back({FieldElem::quadratic(k, re, im), 1});
    g.coords.push_back({FieldElem::quadratic(k, re, -im), 1});
    out.push_back(std::move(g));
  } else if (rest == 3) {
    auto [zf, den] = qx::clear_denominators(f);
    (void)den;
    Int e0 = zf[0], e1 = zf[1], e2 = zf[2], a = zf[3];
    // beta = a * root is integral with minimal polynomial
    // y^3 + e2 y^2 + a e1 y + a^2 e0; the root itself is beta / a.
    PolyZ mp{a * a * e0, a * e1, e2, Int(1)};
    CarrierPtr k = Carrier::number_field(mp);
    Group g;
    g.k = k;
    g.coords.push_back(
        {FieldElem::number_field(k, {Rat(0), Rat(1) / Rat(a)}), 1});
    out.push_back(std::move(g));
  }
}

std::vector<Group> build_groups(const SearchSpace& s) {
  std::vector<Group> out;
  switch (s.cls) {
    case SearchSpace::Class::Rational: {
      if (s.bound < 1) throw GvfError(Err::Input, "search bound must be >= 1");
      out.push_back({Carrier::rationals(),
                     rational_coords(Carrier::rationals(), s.bound), false});
      break;
    }
    case SearchSpace::Class::Quadratic: {
      if (s.bound < 1) throw GvfError(Err::Input, "search bound must be >= 1");
      for (const auto& d : quad_ds(s)) {
        CarrierPtr k = Carrier::quadratic(d);
        out.push_back({k, quadratic_coords(k, s.bound), true});
      }
      break;
    }
    case SearchSpace::Class::Cyclotomic:
      cyclotomic_groups(s.max_order, out);
      break;
    case SearchSpace::Class::Custom:
      custom_groups(s.min_poly, out);
      break;
  }
  return out;
}

// Index tuples over the group's coordinates whose levels sum to `grade`,
// emitted in lexicographic index order.
void tuples_for_grade(const std::vector<Coordinate>& coords, int nv,
                      long grade, std::vector<std::vector<int>>& out) {
  if (coords.empty()) return;
  const long minl = coords.front().level;
  const long maxl = coords.back().level;
  std::vector<int> cur(static_cast<size_t>(nv), 0);
  std::function<void(int, long)> rec = [&](int pos, long remaining) {
    if (pos == nv) {
      if (remaining == 0) out.push_back(cur);
      return;
    }
    const long left = nv - pos - 1;
    for (int i = 0; i < static_cast<int>(coords.size()); ++i) {
      const long l = coords[static_cast<size_t>(i)].level;
      if (l > remaining - minl * left) break;
      if (remaining - l > maxl * left) continue;
      cur[static_cast<size_t>(pos)] = i;
      rec(pos + 1, remaining - l);
    }
  };
  rec(0, grade);
}

bool has_irrational(const Group& g, const std::vector<int>& idx) {
  for (int i : idx) {
    if (sgn(g.coords[static_cast<size_t>(i)].value.b) != 0) return true;
  }
  return false;
}

bool passes_filters(const std::vector<RatExprPtr>& eqs,
                    const std::vector<RatExprPtr>& neqs, const PointSpec& pt) {
  for (const auto& g : eqs) {
    auto v = eval_expr(*g, pt.k, pt.coords);
    if (!v || !v->is_zero()) return false;
  }
  for (const auto& h : neqs) {
    auto v = eval_expr(*h, pt.k, pt.coords);
    if (!v || v->is_zero()) return false;
  }
  return true;
}

struct Outcome {
  bool filtered = true;
  std::vector<double> devs;
  Rat worst;
  bool exact_zero = false;
  std::exception_ptr error;
};

// Canonical order is preserved: candidates are materialized in order, the
// workers fill disjoint slots, and the results are consumed in order, so the
// outcome is byte-identical for every thread count.
template <typename F>
void eval_batch(const std::vector<PointSpec>& pts, int threads, const F& fn,
                std::vector<Outcome>& out) {
  out.assign(pts.size(), Outcome{});
  int nt = std::max(1, std::min<int>(threads, static_cast<int>(pts.size())));
  if (nt == 1) {
    for (size_t i = 0; i < pts.size(); ++i) {
      try {
        out[i] = fn(pts[i]);
      } catch (...) {
        out[i].error = std::current_exception();
      }
    }
    return;
  }
  std::vector<std::thread> pool;
  for (int w = 0; w < nt; ++w) {
    pool.emplace_back([&, w]() {
      for (size_t i = static_cast<size_t>(w); i < pts.size();
           i += static_cast<size_t>(nt)) {
        try {
          out[i] = fn(pts[i]);
        } catch (...) {
          out[i].error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
}

std::vector<std::string> collect_vars(
    const std::vector<const HeightTemplate*>& tmpls,
    const std::vector<RatExprPtr>& eqs, const std::vector<RatExprPtr>& neqs) {
  std::set<std::string> vs;
  for (const auto* t : tmpls) {
    for (const auto& f : t->functions) {
      for (const auto& v : expr_variables(*f)) vs.insert(v);
    }
  }
  for (const auto& g : eqs) {
    for (const auto& v : expr_variables(*g)) vs.insert(v);
  }
  for (const auto& h : neqs) {
    for (const auto& v : expr_variables(*h)) vs.insert(v);
  }
  if (vs.empty()) {
    throw GvfError(Err::Input, "the problem references no point variables");
  }
  return {vs.begin(), vs.end()};
}

// Shared enumeration driver: materialize a chunk in canonical order,
// evaluate it (possibly in parallel), hand outcomes back in order. The
// consumer returns false to stop.
template <typename EvalFn, typename ConsumeFn>
void drive(const std::vector<Group>& groups,
           const std::vector<std::string>& vars, int threads,
           const EvalFn& eval_one, long* filtered, const ConsumeFn& consume) {
  const size_t kChunk = 128;
  const int nv = static_cast<int>(vars.size());
  bool stop = false;
  for (const auto& g : groups) {
    if (stop) break;
    if (g.coords.empty()) continue;
    const long lo = g.coords.front().level * nv;
    const long hi = g.coords.back().level * nv;
    for (long grade = lo; grade <= hi && !stop; ++grade) {
      std::vector<std::vector<int>> idxs;
      tuples_for_grade(g.coords, nv, grade, idxs);
      for (size_t off = 0; off < idxs.size() && !stop; off += kChunk) {
        const size_t end = std::min(idxs.size(), off + kChunk);
        std::vector<PointSpec> pts;
        for (size_t i = off; i < end; ++i) {
          if (g.require_irrational && !has_irrational(g, idxs[i])) {
            ++*filtered;
            continue;
          }
          PointSpec p;
          p.k = g.k;
          for (int j = 0; j < nv; ++j) {
            p.coords[vars[static_cast<size_t>(j)]] =
                g.coords[static_cast<size_t>(idxs[i][static_cast<size_t>(j)])]
                    .value;
          }
          pts.push_back(std::move(p));
        }
        std::vector<Outcome> outs;
        eval_batch(pts, threads, eval_one, outs);
        for (size_t i = 0; i < outs.size() && !stop; ++i) {
          if (outs[i].error) std::rethrow_exception(outs[i].error);
          if (outs[i].filtered) {
            ++*filtered;
            continue;
          }
          if (!consume(pts[i], outs[i])) stop = true;
        }
      }
    }
  }
}

Rat zeta_lp_bound(const HeightTemplate& objective, const PointSpec& w,
                  const Rat& eps, long symprec) {
  std::vector<FieldElem> gens = template_values(objective, w);
  gens.push_back(FieldElem::rational(w.k, Rat(2)));
  std::vector<Atom> atoms = atoms_from_places(gens, symprec);
  std::vector<Place> places = support_places(gens, symprec);
  int last_arch = -1;
  for (size_t i = 0; i < atoms.size(); ++i) {
    if (atoms[i].cls == AtomClass::Arch) last_arch = static_cast<int>(i);
  }
  if (last_arch < 0) {
    throw GvfError(Err::Input,
                   "the measure lower bound needs an archimedean place");
  }
  std::vector<Rat> mass(atoms.size()), lam(atoms.size(), Rat(1));
  for (size_t i = 0; i < atoms.size(); ++i) {
    LogLin wgt = places[i].weight();
    if (atoms[i].cls == AtomClass::Finite) {
      mass[i] = wgt.logs.begin()->second;
      lam[i] = Ball::log_prime(atoms[i].p, symprec).mid_rat();
    } else {
      mass[i] = wgt.c;
    }
  }
  // Snap the last archimedean coordinate so the witness measure satisfies
  // the product-formula rows exactly; the rounded coordinates move by less
  // than the symbol radius.
  for (size_t j = 0; j < gens.size(); ++j) {
    Rat acc(0);
    for (size_t i = 0; i < atoms.size(); ++i) {
      if (static_cast<int>(i) == last_arch) continue;
      acc += mass[i] * lam[i] * atoms[i].u[j];
    }
    atoms[static_cast<size_t>(last_arch)].u[j] =
        -acc / mass[static_cast<size_t>(last_arch)];
  }
  FeasibilityInstance inst;
  inst.generators = std::move(gens);
  inst.atoms = std::move(atoms);
  inst.eps = eps;
  FeasibilityReport rep = minimize_functional(inst, objective.term, symprec);
  return *rep.objective;
}

}  // namespace

SearchResult approximate_point(const SearchProblem& prob, long prec) {
  if (prob.constraints.empty()) {
    throw GvfError(Err::Input, "point search needs at least one constraint");
  }
  if (sgn(prob.eps) <= 0) {
    throw GvfError(Err::Input, "eps must be positive");
  }
  std::vector<const HeightTemplate*> tmpls;
  for (const auto& c : prob.constraints) tmpls.push_back(&c.tmpl);
  std::vector<std::string> vars =
      collect_vars(tmpls, prob.equations, prob.inequations);
  std::vector<Group> groups = build_groups(prob.space);

  auto eval_one = [&](const PointSpec& pt) -> Outcome {
    Outcome o;
    if (!passes_filters(prob.equations, prob.inequations, pt)) return o;
    std::vector<std::vector<FieldElem>> valss;
    for (const auto& c : prob.constraints) {
      try {
        valss.push_back(template_values(c.tmpl, pt));
      } catch (const GvfError& e) {
        if (e.code() == Err::PointOnSupport) return o;
        throw;
      }
    }
    o.filtered = false;
    for (size_t ci = 0; ci < prob.constraints.size(); ++ci) {
      GvfValue v = r_t(*prob.constraints[ci].tmpl.term, valss[ci], prec);
      v.exact -= prob.constraints[ci].target;
      Ball b = v.render(prec);
      Rat ub = rat_abs(b.mid_rat()) + b.rad_rat();
      o.devs.push_back(rat_to_double(ub));
      if (ci == 0 || ub > o.worst) o.worst = ub;
    }
    return o;
  };

  SearchResult res;
  res.seed = prob.seed;
  Rat best_worst;
  bool have_best = false;
  drive(groups, vars, prob.threads, eval_one, &res.filtered,
        [&](const PointSpec& pt, const Outcome& o) {
          ++res.examined;
          SearchHit h{pt, o.devs, rat_to_double(o.worst)};
          if (!have_best || o.worst < best_worst) {
            best_worst = o.worst;
            res.best = h;
            have_best = true;
          }
          if (o.worst < prob.eps) {
            res.found = true;
            res.hits.push_back(std::move(h));
            if (!prob.exhaustive) return false;
          }
          return true;
        });
  if (res.examined == 0) {
    throw GvfError(Err::NoCandidate,
                   "every candidate in the space was filtered out");
  }
  return res;
}

ZetaEstimate zeta_estimate(const ZetaProblem& prob, long prec) {
  if (sgn(prob.eps) <= 0) {
    throw GvfError(Err::Input, "eps must be positive");
  }
  std::vector<const HeightTemplate*> tmpls{&prob.objective};
  std::vector<std::string> vars =
      collect_vars(tmpls, prob.equations, prob.exclusions);
  std::vector<Group> groups = build_groups(prob.space);

  auto eval_one = [&](const PointSpec& pt) -> Outcome {
    Outcome o;
    if (!passes_filters(prob.equations, prob.exclusions, pt)) return o;
    std::vector<FieldElem> vals;
    try {
      vals = template_values(prob.objective, pt);
    } catch (const GvfError& e) {
      if (e.code() == Err::PointOnSupport) return o;
      throw;
    }
    o.filtered = false;
    GvfValue v = r_t(*prob.objective.term, vals, prec);
    Ball b = v.render(prec);
    o.worst = b.mid_rat() + b.rad_rat();  // certified upper endpoint
    o.exact_zero = v.is_exact && v.exact.is_zero();
    return o;
  };

  ZetaEstimate est;
  Rat best;
  bool have_best = false;
  drive(groups, vars, prob.threads, eval_one, &est.filtered,
        [&](const PointSpec& pt, const Outcome& o) {
          ++est.examined;
          if (!have_best || o.worst < best) {
            best = o.worst;
            have_best = true;
            est.witness = pt;
            est.exact_zero = o.exact_zero;
            est.trace.push_back(rat_to_double(best));
          }
          return true;
        });
  if (est.examined == 0) {
    throw GvfError(Err::NoCandidate,
                   "every candidate in the space was filtered out");
  }
  est.upper = rat_to_double(best);
  if (prob.with_lp) {
    est.lp_lower = zeta_lp_bound(prob.objective, est.witness, prob.eps, 256);
  }
  return est;
}

}  // namespace gvf
