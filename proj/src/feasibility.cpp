#include "gvf/feasibility.hpp"

#include <algorithm>
#include <map>
#include <utility>

#include "gvf/errors.hpp"

namespace gvf {
namespace {

// Shared directed-rounding rational intervals for the log p symbols, so
// every occurrence of the same prime (multipliers, targets, archimedean
// candidate values) is replaced by the identical rational and linear
// relations between them survive the substitution exactly.
struct SymbolTable {
  long prec;
  std::map<Int, std::pair<Rat, Rat>> logs;  // p -> (approximation, radius)

  explicit SymbolTable(long prec_in) : prec(prec_in) {}

  const std::pair<Rat, Rat>& log_of(const Int& p) {
    auto it = logs.find(p);
    if (it == logs.end()) {
      Ball b = Ball::log_prime(p, prec);
      it = logs.emplace(p, std::make_pair(b.mid_rat(), b.rad_rat())).first;
    }
    return it->second;
  }

  // c + sum q_p log p through the table; *radius accumulates sum |q_p| rad_p.
  Rat value(const LogLin& v, Rat* radius) {
    Rat out = v.c;
    for (const auto& [p, q] : v.logs) {
      const auto& entry = log_of(p);
      out += q * entry.first;
      if (radius != nullptr) *radius += rat_abs(q) * entry.second;
    }
    return out;
  }
};

Rat h2(const Rat& s) { return sgn(s) < 0 ? Rat(-s) : Rat(0); }  // -min(s,0)

// Exact dense simplex for  min c.x  s.t.  T x = b, x >= 0  with b >= 0 on
// entry. Bland's rule (smallest improving column; smallest basic column
// among minimum-ratio rows) guarantees termination.
class Simplex {
 public:
  Simplex(const std::vector<std::vector<Rat>>& rows,
          const std::vector<Rat>& rhs)
      : m_(static_cast<int>(rows.size())),
        n_(rows.empty() ? 0 : static_cast<int>(rows[0].size())),
        t_(rows),
        b_(rhs) {
    for (int i = 0; i < m_; ++i) {
      if (sgn(b_[i]) < 0) throw GvfError(Err::Internal, "rhs not normalized");
      t_[i].resize(n_ + m_, Rat(0));
      t_[i][n_ + i] = Rat(1);
      basis_.push_back(n_ + i);
    }
  }

  // Phase 1: true iff the artificial mass reaches zero.
  bool feasible() {
    std::vector<Rat> c(n_ + m_, Rat(0));
    for (int i = 0; i < m_; ++i) c[n_ + i] = Rat(1);
    if (!run(c)) throw GvfError(Err::Internal, "phase one reported unbounded");
    if (sgn(objective(c)) != 0) return false;
    drive_out_artificials();
    return true;
  }

  // After an infeasible phase 1: y = c_B B^{-1}, read off the artificial
  // columns (which started as the identity).
  std::vector<Rat> farkas_dual() const {
    std::vector<Rat> y(m_, Rat(0));
    for (int i = 0; i < m_; ++i) {
      Rat acc(0);
      for (int r = 0; r < m_; ++r) {
        if (basis_[r] >= n_) acc += t_[r][n_ + i];
      }
      y[i] = acc;
    }
    return y;
  }

  // Phase 2 over the structural/slack columns; cost is padded with zeros.
  // Returns the optimum; false return from run() means an improving column
  // has no positive entry, i.e. the objective is unbounded below.
  Rat minimize(std::vector<Rat> cost) {
    cost.resize(n_ + m_, Rat(0));
    if (!run(cost)) {
      throw GvfError(Err::Unbounded,
                     "the functional is unbounded below on the feasible set");
    }
    return objective(cost);
  }

  std::vector<Rat> solution() const {
    std::vector<Rat> x(n_, Rat(0));
    for (int i = 0; i < m_; ++i) {
      if (basis_[i] < n_) x[basis_[i]] = b_[i];
    }
    return x;
  }

 private:
  int m_, n_;
  std::vector<std::vector<Rat>> t_;
  std::vector<Rat> b_;
  std::vector<int> basis_;

  bool is_basic(int j) const {
    return std::find(basis_.begin(), basis_.end(), j) != basis_.end();
  }

  Rat objective(const std::vector<Rat>& c) const {
    Rat v(0);
    for (int i = 0; i < m_; ++i) v += c[basis_[i]] * b_[i];
    return v;
  }

  // Artificial columns never re-enter: candidates are j < n_.
  bool run(const std::vector<Rat>& c) {
    for (;;) {
      int enter = -1;
      for (int j = 0; j < n_ && enter < 0; ++j) {
        if (is_basic(j)) continue;
        Rat red = c[j];
        for (int i = 0; i < m_; ++i) {
          if (sgn(t_[i][j]) != 0) red -= c[basis_[i]] * t_[i][j];
        }
        if (sgn(red) < 0) enter = j;
      }
      if (enter < 0) return true;
      int leave = -1;
      Rat best(0);
      for (int i = 0; i < m_; ++i) {
        if (sgn(t_[i][enter]) <= 0) continue;
        Rat ratio = b_[i] / t_[i][enter];
        if (leave < 0 || ratio < best ||
            (ratio == best && basis_[i] < basis_[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
    }
  }

  // Rows whose artificial cannot be displaced are identically zero over the
  // structural columns with zero rhs; they stay inert through later pivots
  // because every entering column has a zero entry there.
  void drive_out_artificials() {
    for (int r = 0; r < m_; ++r) {
      if (basis_[r] < n_) continue;
      int j = -1;
      for (int col = 0; col < n_ && j < 0; ++col) {
        if (sgn(t_[r][col]) != 0) j = col;
      }
      if (j >= 0) pivot(r, j);
    }
  }

  void pivot(int r, int j) {
    Rat piv = t_[r][j];
    for (auto& v : t_[r]) v /= piv;
    b_[r] /= piv;
    for (int i = 0; i < m_; ++i) {
      if (i == r || sgn(t_[i][j]) == 0) continue;
      Rat f = t_[i][j];
      for (int col = 0; col < n_ + m_; ++col) {
        if (sgn(t_[r][col]) != 0) t_[i][col] -= f * t_[r][col];
      }
      b_[i] -= f * b_[r];
    }
    basis_[r] = j;
  }
};

struct Assembled {
  std::vector<std::vector<Rat>> rows;  // atom columns then slack columns
  std::vector<Rat> rhs;                // normalized nonnegative
  std::vector<std::string> labels;
  std::vector<Rat> rhs_delta;          // target-rendering radius per row
  std::vector<Rat> lam_hat, lam_del;   // per-atom multiplier interval
};

Assembled assemble(const FeasibilityInstance& inst, SymbolTable& sym) {
  const int n = static_cast<int>(inst.generators.size());
  const int natoms = static_cast<int>(inst.atoms.size());
  if (n == 0) {
    throw GvfError(Err::Input, "feasibility instance needs generators");
  }
  if (natoms == 0) {
    throw GvfError(Err::Input, "feasibility instance needs atoms");
  }
  if (sgn(inst.eps) <= 0) {
    throw GvfError(Err::Input, "tolerance must be positive");
  }
  const CarrierPtr& k0 = inst.generators[0].k;
  for (const auto& g : inst.generators) {
    if (g.is_zero()) {
      throw GvfError(Err::Input, "generators must be nonzero");
    }
    if (!g.k->same_as(*k0)) {
      throw GvfError(Err::Input, "generators live on different carriers");
    }
  }
  int j2 = -1;
  FieldElem two = FieldElem::rational(k0, Rat(2));
  for (int j = 0; j < n && j2 < 0; ++j) {
    if (inst.generators[j].equals(two)) j2 = j;
  }
  if (j2 < 0) {
    throw GvfError(Err::MissingGenerator2,
                   "the literal generator 2 is required so the measure can "
                   "be normalized to height(2) = log 2");
  }
  bool has_arch = false;
  for (const auto& a : inst.atoms) {
    if (a.u.size() != static_cast<size_t>(n)) {
      throw GvfError(Err::Input,
                     "atom vector length must match the generator count");
    }
    if (a.cls == AtomClass::Arch) has_arch = true;
    if (a.cls == AtomClass::Finite &&
        mpz_probab_prime_p(a.p.get_mpz_t(), 40) == 0) {
      throw GvfError(Err::Input, "finite atoms need a prime symbol");
    }
  }
  if (!has_arch) {
    throw GvfError(Err::Input, "at least one archimedean atom is required");
  }
  for (const auto& d : inst.divisors) {
    if (!d.term) throw GvfError(Err::Input, "divisor constraint without term");
    if (arity(*d.term) > n) {
      throw GvfError(Err::ArityMismatch,
                     "divisor term uses more variables than generators");
    }
  }

  Assembled out;
  for (const auto& a : inst.atoms) {
    if (a.cls == AtomClass::Finite) {
      const auto& entry = sym.log_of(a.p);
      out.lam_hat.push_back(entry.first);
      out.lam_del.push_back(entry.second);
    } else {
      out.lam_hat.push_back(Rat(1));
      out.lam_del.push_back(Rat(0));
    }
  }

  // Structural bodies first; slack columns appended once the count is known.
  enum class Rel { Eq, Le, Ge };
  struct RawRow {
    std::vector<Rat> c;
    Rel rel;
    Rat rhs, delta;
    std::string label;
  };
  std::vector<RawRow> raw;

  for (int j = 0; j < n; ++j) {
    RawRow r;
    r.rel = Rel::Eq;
    r.rhs = Rat(0);
    r.delta = Rat(0);
    r.label = "generator " + std::to_string(j + 1);
    for (const auto& a : inst.atoms) r.c.push_back(a.u[j]);
    raw.push_back(std::move(r));
  }
  auto add_range = [&](const std::vector<Rat>& c, const Rat& target,
                       const Rat& delta, const std::string& what) {
    RawRow hi{c, Rel::Le, target + inst.eps, delta, what + " upper"};
    RawRow lo{c, Rel::Ge, target - inst.eps, delta, what + " lower"};
    raw.push_back(std::move(hi));
    raw.push_back(std::move(lo));
  };
  for (size_t i = 0; i < inst.divisors.size(); ++i) {
    const auto& d = inst.divisors[i];
    std::vector<Rat> c;
    for (const auto& a : inst.atoms) c.push_back(eval_trop_rat(*d.term, a.u));
    Rat delta(0);
    Rat target = sym.value(d.target, &delta);
    add_range(c, target, delta, "divisor " + std::to_string(i + 1));
  }
  {
    std::vector<Rat> c;
    for (const auto& a : inst.atoms) c.push_back(h2(a.u[j2]));
    Rat delta(0);
    Rat target = sym.value(LogLin::log_of_prime(Int(2)), &delta);
    add_range(c, target, delta, "normalization");
  }

  int nslack = 0;
  for (const auto& r : raw) {
    if (r.rel != Rel::Eq) ++nslack;
  }
  int ncols = natoms + nslack;
  int slot = natoms;
  for (auto& r : raw) {
    r.c.resize(ncols, Rat(0));
    if (r.rel == Rel::Le) r.c[slot++] = Rat(1);
    if (r.rel == Rel::Ge) r.c[slot++] = Rat(-1);
    if (sgn(r.rhs) < 0) {
      for (auto& v : r.c) v = -v;
      r.rhs = -r.rhs;
    }
    out.rows.push_back(std::move(r.c));
    out.rhs.push_back(r.rhs);
    out.rhs_delta.push_back(r.delta);
    out.labels.push_back(std::move(r.label));
  }
  return out;
}

FeasibilityReport solve_core(const FeasibilityInstance& inst,
                             const TropPtr& objective, long prec) {
  SymbolTable sym(prec);
  if (objective && arity(*objective) > static_cast<int>(inst.generators.size())) {
    throw GvfError(Err::ArityMismatch,
                   "objective term uses more variables than generators");
  }
  Assembled lp = assemble(inst, sym);
  const int natoms = static_cast<int>(inst.atoms.size());
  const int nrows = static_cast<int>(lp.rows.size());
  Simplex sx(lp.rows, lp.rhs);
  FeasibilityReport rep;
  rep.row_labels = lp.labels;

  if (!sx.feasible()) {
    std::vector<Rat> y = sx.farkas_dual();
    if (!verify_farkas(lp.rows, lp.rhs, y)) {
      throw GvfError(Err::Internal, "dual certificate failed verification");
    }
    Rat scale(0);
    for (const auto& v : y) scale += rat_abs(v);
    for (auto& v : y) v /= scale;
    Rat gap(0);
    for (int i = 0; i < nrows; ++i) gap += y[i] * lp.rhs[i];
    Rat bound(0);
    for (int i = 0; i < nrows; ++i) bound += rat_abs(y[i]) * lp.rhs_delta[i];
    Rat worst(0);
    for (int k = 0; k < natoms; ++k) {
      if (sgn(lp.lam_del[k]) == 0) continue;
      Rat col(0);
      for (int i = 0; i < nrows; ++i) {
        col += rat_abs(y[i]) * rat_abs(lp.rows[i][k]);
      }
      col *= lp.lam_del[k] / lp.lam_hat[k];
      if (col > worst) worst = col;
    }
    rep.feasible = false;
    rep.dual = std::move(y);
    rep.dual_gap = gap;
    rep.lp_rows = std::move(lp.rows);
    rep.lp_rhs = std::move(lp.rhs);
    rep.perturbation_bound = bound + worst;
    if (!(inst.eps > rep.perturbation_bound)) {
      throw GvfError(Err::ToleranceTooTight,
                     "tolerance does not exceed the substitution drift; "
                     "raise eps or the symbol precision");
    }
    return rep;
  }

  rep.feasible = true;
  if (objective) {
    std::vector<Rat> cost;
    for (const auto& a : inst.atoms) cost.push_back(eval_trop_rat(*objective, a.u));
    rep.objective = sx.minimize(std::move(cost));
  }
  std::vector<Rat> wt = sx.solution();
  rep.masses.resize(natoms);
  for (int k = 0; k < natoms; ++k) rep.masses[k] = wt[k] / lp.lam_hat[k];
  Rat bound(0);
  for (int i = 0; i < nrows; ++i) {
    Rat row = lp.rhs_delta[i];
    for (int k = 0; k < natoms; ++k) {
      if (sgn(lp.lam_del[k]) == 0) continue;
      row += rep.masses[k] * rat_abs(lp.rows[i][k]) * lp.lam_del[k];
    }
    if (row > bound) bound = row;
  }
  rep.perturbation_bound = bound;
  if (!(inst.eps > rep.perturbation_bound)) {
    throw GvfError(Err::ToleranceTooTight,
                   "tolerance does not exceed the substitution drift; "
                   "raise eps or the symbol precision");
  }
  return rep;
}

}  // namespace

FeasibilityReport solve_feasibility(const FeasibilityInstance& inst,
                                    long prec) {
  return solve_core(inst, nullptr, prec);
}

FeasibilityReport minimize_functional(const FeasibilityInstance& inst,
                                      const TropPtr& objective, long prec) {
  if (!objective) throw GvfError(Err::Input, "minimization needs a term");
  return solve_core(inst, objective, prec);
}

std::vector<Atom> atoms_from_places(const std::vector<FieldElem>& generators,
                                    long prec) {
  SymbolTable sym(prec);
  std::vector<Atom> out;
  for (const auto& v : support_places(generators, prec)) {
    Atom a;
    a.label = v.id();
    if (v.kind == Place::Kind::Arch) {
      a.cls = AtomClass::Arch;
      for (const auto& g : generators) {
        ArchVal av = arch_valuation(v, g, prec);
        a.u.push_back(av.exact ? sym.value(av.ll, nullptr) : av.b.mid_rat());
      }
    } else {
      // Function-field places have exact rational masses, so their
      // multiplier is 1 and the mass absorbs deg(pi).
      a.cls = v.kind == Place::Kind::Finite ? AtomClass::Finite
                                            : AtomClass::Free;
      if (v.kind == Place::Kind::Finite) a.p = v.p;
      for (const auto& g : generators) a.u.push_back(finite_valuation(v, g));
    }
    out.push_back(std::move(a));
  }
  return out;
}

bool verify_farkas(const std::vector<std::vector<Rat>>& rows,
                   const std::vector<Rat>& rhs, const std::vector<Rat>& y) {
  if (rows.empty() || y.size() != rows.size() || rhs.size() != rows.size()) {
    return false;
  }
  Rat yb(0);
  for (size_t i = 0; i < rows.size(); ++i) yb += y[i] * rhs[i];
  if (sgn(yb) <= 0) return false;
  for (size_t j = 0; j < rows[0].size(); ++j) {
    Rat v(0);
    for (size_t i = 0; i < rows.size(); ++i) v += y[i] * rows[i][j];
    if (sgn(v) > 0) return false;
  }
  return true;
}

}  // namespace gvf
