#include "gvf/roots.hpp"

#include <algorithm>
#include <utility>
#include <vector>

namespace gvf {

namespace {

// Minimal complex mpfr value for the Aberth iteration.
struct MpC {
  mpfr_t re, im;
  explicit MpC(long prec) {
    mpfr_init2(re, prec);
    mpfr_init2(im, prec);
    mpfr_set_zero(re, 1);
    mpfr_set_zero(im, 1);
  }
  MpC(const MpC&) = delete;
  MpC& operator=(const MpC&) = delete;
  MpC(MpC&& o) noexcept {
    mpfr_init2(re, mpfr_get_prec(o.re));
    mpfr_init2(im, mpfr_get_prec(o.im));
    mpfr_swap(re, o.re);
    mpfr_swap(im, o.im);
  }
  ~MpC() {
    mpfr_clear(re);
    mpfr_clear(im);
  }
};

struct CtxC {
  mpfr_t t1, t2, t3, t4;
  explicit CtxC(long p) {
    mpfr_inits2(p, t1, t2, t3, t4, static_cast<mpfr_ptr>(nullptr));
  }
  ~CtxC() { mpfr_clears(t1, t2, t3, t4, static_cast<mpfr_ptr>(nullptr)); }

  void set(MpC& out, const MpC& a) {
    mpfr_set(out.re, a.re, MPFR_RNDN);
    mpfr_set(out.im, a.im, MPFR_RNDN);
  }
  void add(MpC& out, const MpC& a, const MpC& b) {
    mpfr_add(out.re, a.re, b.re, MPFR_RNDN);
    mpfr_add(out.im, a.im, b.im, MPFR_RNDN);
  }
  // out must alias neither input for sub/mul/div
  void sub(MpC& out, const MpC& a, const MpC& b) {
    mpfr_sub(out.re, a.re, b.re, MPFR_RNDN);
    mpfr_sub(out.im, a.im, b.im, MPFR_RNDN);
  }
  void mul(MpC& out, const MpC& a, const MpC& b) {
    mpfr_mul(t1, a.re, b.re, MPFR_RNDN);
    mpfr_mul(t2, a.im, b.im, MPFR_RNDN);
    mpfr_sub(out.re, t1, t2, MPFR_RNDN);
    mpfr_mul(t1, a.re, b.im, MPFR_RNDN);
    mpfr_mul(t2, a.im, b.re, MPFR_RNDN);
    mpfr_add(out.im, t1, t2, MPFR_RNDN);
  }
  void div(MpC& out, const MpC& a, const MpC& b) {
    mpfr_mul(t3, b.re, b.re, MPFR_RNDN);
    mpfr_mul(t4, b.im, b.im, MPFR_RNDN);
    mpfr_add(t3, t3, t4, MPFR_RNDN);  // |b|^2
    mpfr_mul(t1, a.re, b.re, MPFR_RNDN);
    mpfr_mul(t2, a.im, b.im, MPFR_RNDN);
    mpfr_add(t1, t1, t2, MPFR_RNDN);
    mpfr_div(out.re, t1, t3, MPFR_RNDN);
    mpfr_mul(t1, a.im, b.re, MPFR_RNDN);
    mpfr_mul(t2, a.re, b.im, MPFR_RNDN);
    mpfr_sub(t1, t1, t2, MPFR_RNDN);
    mpfr_div(out.im, t1, t3, MPFR_RNDN);
  }
  void abs2(mpfr_t out, const MpC& a) {
    mpfr_mul(t1, a.re, a.re, MPFR_RNDN);
    mpfr_mul(t2, a.im, a.im, MPFR_RNDN);
    mpfr_add(out, t1, t2, MPFR_RNDN);
  }
  bool is_zero(const MpC& a) { return mpfr_zero_p(a.re) && mpfr_zero_p(a.im); }
};

// Ehrlich-Aberth at working precision W. Returns uncertified approximations;
// false means the iteration degenerated and the caller should raise precision.
bool aberth(const PolyZ& f, long W, std::vector<MpC>& z) {
  int n = zx::deg(f);
  CtxC cx(W);
  std::vector<MpC> coeff;
  coeff.reserve(f.size());
  for (const auto& c : f) {
    MpC v(W);
    mpfr_set_z(v.re, c.get_mpz_t(), MPFR_RNDN);
    coeff.push_back(std::move(v));
  }
  // Cauchy bound 1 + max |a_i| / |a_n| for the initial circle
  mpfr_t R, tmp;
  mpfr_init2(R, 64);
  mpfr_init2(tmp, 64);
  mpfr_set_ui(R, 0, MPFR_RNDN);
  for (int i = 0; i < n; ++i) {
    mpfr_abs(tmp, coeff[i].re, MPFR_RNDU);
    if (mpfr_cmp(tmp, R) > 0) mpfr_set(R, tmp, MPFR_RNDU);
  }
  mpfr_abs(tmp, coeff[n].re, MPFR_RNDD);
  mpfr_div(R, R, tmp, MPFR_RNDU);
  mpfr_add_ui(R, R, 1, MPFR_RNDU);

  z.clear();
  mpfr_t pi, angle, s, c;
  mpfr_inits2(W, pi, angle, s, c, static_cast<mpfr_ptr>(nullptr));
  mpfr_const_pi(pi, MPFR_RNDN);
  for (int k = 0; k < n; ++k) {
    MpC p(W);
    // offset 0.4/n breaks the conjugate symmetry of the start set
    mpfr_mul_ui(angle, pi, 2 * static_cast<unsigned long>(k), MPFR_RNDN);
    mpfr_div_ui(angle, angle, static_cast<unsigned long>(n), MPFR_RNDN);
    mpfr_set_d(s, 0.4 / n, MPFR_RNDN);
    mpfr_add(angle, angle, s, MPFR_RNDN);
    mpfr_sin_cos(s, c, angle, MPFR_RNDN);
    mpfr_mul(p.re, c, R, MPFR_RNDN);
    mpfr_mul(p.im, s, R, MPFR_RNDN);
    z.push_back(std::move(p));
  }
  mpfr_clears(pi, angle, s, c, static_cast<mpfr_ptr>(nullptr));
  mpfr_clear(R);
  mpfr_clear(tmp);

  mpfr_t tol2, corr2, scale2;
  mpfr_inits2(64, tol2, corr2, scale2, static_cast<mpfr_ptr>(nullptr));
  mpfr_set_ui_2exp(tol2, 1, -2 * (W - 8), MPFR_RNDN);
  bool ok = true;
  bool converged = false;
  {
    MpC fv(W), dv(W), t(W), w(W), ssum(W), diff(W), inv(W), one(W), corr(W);
    mpfr_set_ui(one.re, 1, MPFR_RNDN);
    int maxit = 80 + 10 * n;
    for (int it = 0; it < maxit && !converged && ok; ++it) {
      converged = true;
      for (int i = 0; i < n && ok; ++i) {
        cx.set(fv, coeff[n]);
        mpfr_set_zero(dv.re, 1);
        mpfr_set_zero(dv.im, 1);
        for (int k = n - 1; k >= 0; --k) {
          cx.mul(t, dv, z[i]);
          cx.add(dv, t, fv);
          cx.mul(t, fv, z[i]);
          cx.add(fv, t, coeff[k]);
        }
        if (cx.is_zero(dv)) {
          ok = false;
          break;
        }
        cx.div(w, fv, dv);
        mpfr_set_zero(ssum.re, 1);
        mpfr_set_zero(ssum.im, 1);
        for (int j = 0; j < n; ++j) {
          if (j == i) continue;
          cx.sub(diff, z[i], z[j]);
          if (cx.is_zero(diff)) {
            ok = false;
            break;
          }
          cx.div(inv, one, diff);
          cx.add(ssum, ssum, inv);
        }
        if (!ok) break;
        cx.mul(t, w, ssum);
        cx.sub(t, one, t);
        if (cx.is_zero(t)) {
          ok = false;
          break;
        }
        cx.div(corr, w, t);
        cx.sub(t, z[i], corr);
        cx.set(z[i], t);
        cx.abs2(corr2, corr);
        cx.abs2(scale2, z[i]);
        if (mpfr_cmp_ui(scale2, 1) < 0) mpfr_set_ui(scale2, 1, MPFR_RNDN);
        mpfr_mul(scale2, scale2, tol2, MPFR_RNDU);
        if (mpfr_cmp(corr2, scale2) > 0) converged = false;
      }
    }
  }
  mpfr_clears(tol2, corr2, scale2, static_cast<mpfr_ptr>(nullptr));
  return ok && converged;
}

struct Disk {
  Ball re, im;  // exact centers (zero radius)
  Ball radius;  // certified inclusion radius (use its upper endpoint)
};

Ball center_distance(const Disk& a, const Disk& b) {
  Ball dx = sub(a.re, b.re), dy = sub(a.im, b.im);
  return sqrt_ball(add(mul(dx, dx), mul(dy, dy)));
}

bool certainly_separated(const Disk& a, const Disk& b) {
  return add(a.radius, b.radius).certainly_less(center_distance(a, b));
}

// Gerschgorin-style inclusion disks from Weierstrass corrections: the disk
// centered at z_i with radius n*|f(z_i)| / (|lc| * prod_{j!=i} |z_i - z_j|)
// covers at least one root, their union covers all roots, so pairwise
// disjoint disks isolate exactly one root each. Conjugate pairing follows
// because conj(disk_i) must meet the disk of the conjugate root.
bool certify(const PolyZ& f, const std::vector<MpC>& z, long W,
             std::vector<Disk>& disks, std::vector<int>& conj_of) {
  int n = zx::deg(f);
  disks.clear();
  conj_of.assign(n, -1);
  std::vector<Ball> cre, cim;
  cre.reserve(n);
  cim.reserve(n);
  for (int i = 0; i < n; ++i) {
    cre.push_back(Ball::from_mpfr(z[i].re, W));
    cim.push_back(Ball::from_mpfr(z[i].im, W));
  }
  for (int i = 0; i < n; ++i) {
    CBall zi(cre[i], cim[i]);
    CBall val(W);
    for (int k = n; k >= 0; --k) {
      CBall t = mul(val, zi);
      val = CBall(add(t.re, Ball::from_rat(Rat(f[k]), W)), t.im);
    }
    Ball num = val.abs().mul_rat(Rat(n));
    Ball den = Ball::from_rat(Rat(abs(f[n])), W);
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      Ball dx = sub(cre[i], cre[j]), dy = sub(cim[i], cim[j]);
      Ball d = sqrt_ball(add(mul(dx, dx), mul(dy, dy)));
      if (!d.certainly_positive()) return false;
      den = mul(den, d);
    }
    if (!den.certainly_positive()) return false;
    disks.push_back(Disk{cre[i], cim[i], abs_ball(div_ball(num, den))});
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (!certainly_separated(disks[i], disks[j])) return false;
  for (int i = 0; i < n; ++i) {
    Disk mirror{disks[i].re, neg(disks[i].im), disks[i].radius};
    int candidate = -1;
    for (int j = 0; j < n; ++j) {
      if (certainly_separated(mirror, disks[j])) continue;
      if (candidate >= 0) return false;  // ambiguous pairing
      candidate = j;
    }
    if (candidate < 0) return false;
    conj_of[i] = candidate;
  }
  for (int i = 0; i < n; ++i)
    if (conj_of[conj_of[i]] != i) return false;
  return true;
}

}  // namespace

std::vector<RootBox> complex_roots(const PolyQ& f_in, long prec) {
  PolyQ f = f_in;
  qx::trim(f);
  int n = qx::deg(f);
  if (n < 1)
    throw GvfError(Err::Input, "complex_roots: positive degree required");
  auto [fz, den] = qx::clear_denominators(f);
  (void)den;
  if (n == 1) {
    Rat root(-fz[0], fz[1]);
    root.canonicalize();
    return {RootBox{CBall(Ball::from_rat(root, prec), Ball(prec)), true, 0}};
  }
  for (long W = std::max(prec, 64L); W <= kMaxPrec; W *= 2) {
    std::vector<MpC> z;
    if (!aberth(fz, W, z)) continue;
    std::vector<Disk> disks;
    std::vector<int> conj_of;
    if (!certify(fz, z, W, disks, conj_of)) continue;

    std::vector<int> reals, reps;
    for (int i = 0; i < n; ++i) {
      if (conj_of[i] == i)
        reals.push_back(i);
      else if (mpfr_sgn(disks[i].im.mid()) > 0)
        reps.push_back(i);
    }
    // disjointness makes all these center comparisons strict
    std::sort(reals.begin(), reals.end(), [&](int a, int b) {
      return mpfr_cmp(disks[a].re.mid(), disks[b].re.mid()) < 0;
    });
    std::sort(reps.begin(), reps.end(), [&](int a, int b) {
      int c = mpfr_cmp(disks[a].re.mid(), disks[b].re.mid());
      if (c != 0) return c < 0;
      return mpfr_cmp(disks[a].im.mid(), disks[b].im.mid()) < 0;
    });

    std::vector<RootBox> out;
    out.reserve(n);
    for (int i : reals) {
      // a real root inside disk i projects into [re - r, re + r]
      Ball re = Ball::centered(disks[i].re.mid(), disks[i].radius, W);
      out.push_back(
          RootBox{CBall(re, Ball(W)), true, static_cast<int>(out.size())});
    }
    for (int i : reps) {
      Ball re = Ball::centered(disks[i].re.mid(), disks[i].radius, W);
      Ball im = Ball::centered(disks[i].im.mid(), disks[i].radius, W);
      int k = static_cast<int>(out.size());
      out.push_back(RootBox{CBall(re, im), false, k + 1});
      out.push_back(RootBox{CBall(re, neg(im)), false, k});
    }
    return out;
  }
  throw GvfError(Err::PrecisionExhausted,
                 "complex_roots: could not certify disjoint root disks");
}

}  // namespace gvf
