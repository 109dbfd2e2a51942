#include "gvf/ball.hpp"

#include <algorithm>
#include <cstdio>
#include <vector>

namespace gvf {

namespace {
constexpr long kRadPrec = 32;

// scratch mpfr with RAII
struct Scratch {
  mpfr_t x;
  explicit Scratch(long prec) { mpfr_init2(x, prec); }
  ~Scratch() { mpfr_clear(x); }
};
}  // namespace

Ball::Ball(long prec) : prec_(prec) {
  mpfr_init2(mid_, prec);
  mpfr_init2(rad_, kRadPrec);
  mpfr_set_zero(mid_, 1);
  mpfr_set_zero(rad_, 1);
}

Ball::Ball(const Ball& o) : prec_(o.prec_) {
  mpfr_init2(mid_, o.prec_);
  mpfr_init2(rad_, kRadPrec);
  mpfr_set(mid_, o.mid_, MPFR_RNDN);
  mpfr_set(rad_, o.rad_, MPFR_RNDU);
}

Ball::Ball(Ball&& o) noexcept : prec_(o.prec_) {
  mpfr_init2(mid_, 2);
  mpfr_init2(rad_, 2);
  mpfr_swap(mid_, o.mid_);
  mpfr_swap(rad_, o.rad_);
}

Ball& Ball::operator=(const Ball& o) {
  if (this != &o) {
    mpfr_set_prec(mid_, o.prec_);
    mpfr_set(mid_, o.mid_, MPFR_RNDN);
    mpfr_set(rad_, o.rad_, MPFR_RNDU);
    prec_ = o.prec_;
  }
  return *this;
}

Ball& Ball::operator=(Ball&& o) noexcept {
  mpfr_swap(mid_, o.mid_);
  mpfr_swap(rad_, o.rad_);
  std::swap(prec_, o.prec_);
  return *this;
}

Ball::~Ball() {
  mpfr_clear(mid_);
  mpfr_clear(rad_);
}

void Ball::bump_rad_half_ulp(int ternary) {
  if (ternary == 0) return;
  if (mpfr_zero_p(mid_))
    throw GvfError(Err::Internal, "ball: inexact zero midpoint");
  mpfr_exp_t e = mpfr_get_exp(mid_) - prec_;  // ulp exponent
  Scratch t(kRadPrec);
  mpfr_set_ui_2exp(t.x, 1, e - 1, MPFR_RNDU);
  mpfr_add(rad_, rad_, t.x, MPFR_RNDU);
}

Ball Ball::from_rat(const Rat& q, long prec) {
  Ball r(prec);
  int t = mpfr_set_q(r.mid_, q.get_mpq_t(), MPFR_RNDN);
  r.bump_rad_half_ulp(t);
  return r;
}

Ball Ball::from_int(long v, long prec) {
  Ball r(prec);
  mpfr_set_si(r.mid_, v, MPFR_RNDN);
  return r;
}

Ball Ball::log_prime(const Int& p, long prec) {
  Ball r(prec);
  int t = mpfr_set_z(r.mid_, p.get_mpz_t(), MPFR_RNDN);
  r.bump_rad_half_ulp(t);
  return log_ball(r);
}

Ball Ball::from_mpfr(const mpfr_t x, long prec) {
  Ball r(prec);
  int t = mpfr_set(r.mid_, x, MPFR_RNDN);
  r.bump_rad_half_ulp(t);
  return r;
}

Ball Ball::centered(const mpfr_t mid, const Ball& rad_upper, long prec) {
  Ball r = Ball::from_mpfr(mid, prec);
  Scratch u(kRadPrec);
  mpfr_abs(u.x, rad_upper.mid_, MPFR_RNDU);
  mpfr_add(u.x, u.x, rad_upper.rad_, MPFR_RNDU);
  mpfr_add(r.rad_, r.rad_, u.x, MPFR_RNDU);
  return r;
}

namespace {
// |x| rounded up into out (radius precision)
void abs_upper(mpfr_t out, const mpfr_t x) { mpfr_abs(out, x, MPFR_RNDU); }
}  // namespace

Ball add(const Ball& a, const Ball& b) {
  Ball r(std::max(a.prec_, b.prec_));
  int t = mpfr_add(r.mid_, a.mid_, b.mid_, MPFR_RNDN);
  mpfr_add(r.rad_, a.rad_, b.rad_, MPFR_RNDU);
  r.bump_rad_half_ulp(t);
  return r;
}

Ball sub(const Ball& a, const Ball& b) {
  Ball r(std::max(a.prec_, b.prec_));
  int t = mpfr_sub(r.mid_, a.mid_, b.mid_, MPFR_RNDN);
  mpfr_add(r.rad_, a.rad_, b.rad_, MPFR_RNDU);
  r.bump_rad_half_ulp(t);
  return r;
}

Ball neg(const Ball& a) {
  Ball r = a;
  mpfr_neg(r.mid_, r.mid_, MPFR_RNDN);  // exact
  return r;
}

Ball abs_ball(const Ball& a) {
  Ball r = a;
  mpfr_abs(r.mid_, r.mid_, MPFR_RNDN);  // exact; radius valid by reverse triangle
  return r;
}

Ball mul(const Ball& a, const Ball& b) {
  Ball r(std::max(a.prec_, b.prec_));
  int t = mpfr_mul(r.mid_, a.mid_, b.mid_, MPFR_RNDN);
  // |a||rb| + |b||ra| + ra*rb
  Scratch am(kRadPrec), bm(kRadPrec), acc(kRadPrec), term(kRadPrec);
  abs_upper(am.x, a.mid_);
  abs_upper(bm.x, b.mid_);
  mpfr_mul(acc.x, am.x, b.rad_, MPFR_RNDU);
  mpfr_mul(term.x, bm.x, a.rad_, MPFR_RNDU);
  mpfr_add(acc.x, acc.x, term.x, MPFR_RNDU);
  mpfr_mul(term.x, a.rad_, b.rad_, MPFR_RNDU);
  mpfr_add(r.rad_, acc.x, term.x, MPFR_RNDU);
  r.bump_rad_half_ulp(t);
  return r;
}

Ball div_ball(const Ball& a, const Ball& b) {
  if (b.contains_zero())
    throw GvfError(Err::PrecisionExhausted, "ball division by interval containing 0");
  Ball r(std::max(a.prec_, b.prec_));
  int t = mpfr_div(r.mid_, a.mid_, b.mid_, MPFR_RNDN);
  // |(a+da)/(b+db) - a/b| <= (ra|b| + |a|rb) / (|b| * (|b| - rb))
  Scratch am(kRadPrec), bm(kRadPrec), lb(kRadPrec), num(kRadPrec), term(kRadPrec);
  abs_upper(am.x, a.mid_);
  mpfr_abs(bm.x, b.mid_, MPFR_RNDD);          // |b| lower
  mpfr_sub(lb.x, bm.x, b.rad_, MPFR_RNDD);    // |b| - rb lower
  abs_upper(bm.x, b.mid_);                    // |b| upper for numerator
  mpfr_mul(num.x, a.rad_, bm.x, MPFR_RNDU);
  mpfr_mul(term.x, am.x, b.rad_, MPFR_RNDU);
  mpfr_add(num.x, num.x, term.x, MPFR_RNDU);
  mpfr_abs(term.x, b.mid_, MPFR_RNDD);
  mpfr_mul(term.x, term.x, lb.x, MPFR_RNDD);  // |b| * (|b| - rb) lower
  mpfr_div(r.rad_, num.x, term.x, MPFR_RNDU);
  r.bump_rad_half_ulp(t);
  return r;
}

Ball Ball::from_endpoints(const mpfr_t lo, const mpfr_t hi, long prec) {
  Ball r(prec);
  int t = mpfr_add(r.mid_, lo, hi, MPFR_RNDN);
  t |= mpfr_div_2ui(r.mid_, r.mid_, 1, MPFR_RNDN);
  // rad = max(hi - mid, mid - lo) rounded up
  Scratch d1(kRadPrec), d2(kRadPrec);
  mpfr_sub(d1.x, hi, r.mid_, MPFR_RNDU);
  mpfr_sub(d2.x, r.mid_, lo, MPFR_RNDU);
  if (mpfr_cmp(d1.x, d2.x) < 0) mpfr_swap(d1.x, d2.x);
  if (mpfr_sgn(d1.x) < 0) mpfr_set_zero(d1.x, 1);
  mpfr_set(r.rad_, d1.x, MPFR_RNDU);
  r.bump_rad_half_ulp(t);
  return r;
}

namespace {
void lower_end(mpfr_t out, const Ball& a) {
  mpfr_sub(out, a.mid(), a.rad(), MPFR_RNDD);
}
void upper_end(mpfr_t out, const Ball& a) {
  mpfr_add(out, a.mid(), a.rad(), MPFR_RNDU);
}
}  // namespace

Ball min_ball(const Ball& a, const Ball& b) {
  long prec = std::max(a.prec(), b.prec());
  Scratch la(prec + 8), ha(prec + 8), lb(prec + 8), hb(prec + 8);
  lower_end(la.x, a);
  upper_end(ha.x, a);
  lower_end(lb.x, b);
  upper_end(hb.x, b);
  if (mpfr_cmp(lb.x, la.x) < 0) mpfr_swap(la.x, lb.x);
  if (mpfr_cmp(hb.x, ha.x) < 0) mpfr_swap(ha.x, hb.x);
  return Ball::from_endpoints(la.x, ha.x, prec);
}

Ball log_ball(const Ball& a) {
  Scratch lo(a.prec() + 8);
  lower_end(lo.x, a);
  if (mpfr_sgn(lo.x) <= 0)
    throw GvfError(Err::PrecisionExhausted, "log of interval reaching 0");
  Ball r(a.prec());
  int t = mpfr_log(r.mid_, a.mid_, MPFR_RNDN);
  Scratch q(kRadPrec), lo32(kRadPrec);
  mpfr_set(lo32.x, lo.x, MPFR_RNDD);
  mpfr_div(q.x, a.rad_, lo32.x, MPFR_RNDU);  // rad / lower(a)
  mpfr_set(r.rad_, q.x, MPFR_RNDU);
  r.bump_rad_half_ulp(t);
  return r;
}

Ball sqrt_ball(const Ball& a) {
  long prec = a.prec();
  Scratch lo(prec + 8), hi(prec + 8);
  lower_end(lo.x, a);
  upper_end(hi.x, a);
  if (mpfr_sgn(hi.x) < 0)
    throw GvfError(Err::Internal, "sqrt of certainly negative interval");
  if (mpfr_sgn(lo.x) < 0) mpfr_set_zero(lo.x, 1);
  mpfr_sqrt(lo.x, lo.x, MPFR_RNDD);
  mpfr_sqrt(hi.x, hi.x, MPFR_RNDU);
  return Ball::from_endpoints(lo.x, hi.x, prec);
}

Ball Ball::mul_rat(const Rat& q) const {
  Ball r(prec_);
  int t = mpfr_mul_q(r.mid_, mid_, q.get_mpq_t(), MPFR_RNDN);
  Rat aq = rat_abs(q);
  mpfr_mul_q(r.rad_, rad_, aq.get_mpq_t(), MPFR_RNDU);
  r.bump_rad_half_ulp(t);
  return r;
}

Ball Ball::round_to(long prec) const {
  Ball r(prec);
  int t = mpfr_set(r.mid_, mid_, MPFR_RNDN);
  mpfr_set(r.rad_, rad_, MPFR_RNDU);
  r.bump_rad_half_ulp(t);
  return r;
}

bool Ball::is_exact_zero() const {
  return mpfr_zero_p(mid_) && mpfr_zero_p(rad_);
}

bool Ball::contains_zero() const {
  Scratch lo(prec_ + 8), hi(prec_ + 8);
  lower_end(lo.x, *this);
  upper_end(hi.x, *this);
  return mpfr_sgn(lo.x) <= 0 && mpfr_sgn(hi.x) >= 0;
}

bool Ball::certainly_positive() const {
  Scratch lo(prec_ + 8);
  lower_end(lo.x, *this);
  return mpfr_sgn(lo.x) > 0;
}

bool Ball::certainly_nonneg() const {
  Scratch lo(prec_ + 8);
  lower_end(lo.x, *this);
  return mpfr_sgn(lo.x) >= 0;
}

bool Ball::certainly_negative() const {
  Scratch hi(prec_ + 8);
  upper_end(hi.x, *this);
  return mpfr_sgn(hi.x) < 0;
}

bool Ball::certainly_less(const Ball& other) const {
  Scratch hi(prec_ + 8), lo(other.prec() + 8);
  upper_end(hi.x, *this);
  lower_end(lo.x, other);
  return mpfr_cmp(hi.x, lo.x) < 0;
}

double Ball::mid_d() const { return mpfr_get_d(mid_, MPFR_RNDN); }
double Ball::rad_d() const { return mpfr_get_d(rad_, MPFR_RNDU); }

namespace {
Rat mpfr_to_rat(const mpfr_t x) {
  if (mpfr_zero_p(x)) return Rat(0);
  Int z;
  mpfr_exp_t e = mpfr_get_z_2exp(z.get_mpz_t(), x);
  Rat out(z);
  if (e >= 0) {
    mpq_mul_2exp(out.get_mpq_t(), out.get_mpq_t(), static_cast<mp_bitcnt_t>(e));
  } else {
    mpq_div_2exp(out.get_mpq_t(), out.get_mpq_t(), static_cast<mp_bitcnt_t>(-e));
  }
  return out;
}
}  // namespace

Rat Ball::mid_rat() const { return mpfr_to_rat(mid_); }
Rat Ball::rad_rat() const { return mpfr_to_rat(rad_); }

bool Ball::abs_bounded_by(double bound) const {
  Scratch t(kRadPrec);
  mpfr_abs(t.x, mid_, MPFR_RNDU);
  mpfr_add(t.x, t.x, rad_, MPFR_RNDU);
  return mpfr_cmp_d(t.x, bound) <= 0;
}

std::string Ball::mid_str(int sig) const {
  char buf[256];
  mpfr_snprintf(buf, sizeof buf, "%.*Rg", sig, mid_);
  return buf;
}

std::string Ball::rad_str() const {
  if (mpfr_zero_p(rad_)) return "0";
  char buf[64];
  mpfr_snprintf(buf, sizeof buf, "%.2Re", rad_);
  return buf;
}

std::string Ball::str(int sig) const {
  return mid_str(sig) + " ± " + rad_str();
}

// ---- complex balls ----

CBall add(const CBall& a, const CBall& b) {
  return CBall(add(a.re, b.re), add(a.im, b.im));
}

CBall sub(const CBall& a, const CBall& b) {
  return CBall(sub(a.re, b.re), sub(a.im, b.im));
}

CBall mul(const CBall& a, const CBall& b) {
  Ball r = sub(mul(a.re, b.re), mul(a.im, b.im));
  Ball i = add(mul(a.re, b.im), mul(a.im, b.re));
  return CBall(std::move(r), std::move(i));
}

CBall CBall::conj() const { return CBall(re, neg(im)); }

Ball CBall::abs2() const { return add(mul(re, re), mul(im, im)); }

Ball CBall::abs() const { return sqrt_ball(abs2()); }

}  // namespace gvf
