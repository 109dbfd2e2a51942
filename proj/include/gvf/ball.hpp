#pragma once

#include <mpfr.h>

#include <string>

#include "gvf/numeric.hpp"

namespace gvf {

// Real ball: mpfr midpoint at a given precision plus a low-precision radius
// kept in mpfr (never double, so radii survive beyond double's exponent range).
// Every operation produces a radius that is an upper bound for the true error.
class Ball {
 public:
  explicit Ball(long prec = kDefaultPrec);  // exact zero
  Ball(const Ball&);
  Ball(Ball&&) noexcept;
  Ball& operator=(const Ball&);
  Ball& operator=(Ball&&) noexcept;
  ~Ball();

  static Ball from_rat(const Rat& q, long prec);
  static Ball from_int(long v, long prec);
  static Ball log_prime(const Int& p, long prec);  // log p, tight radius
  // midpoint copied from x (half-ulp slack if rounding occurs), radius 0
  static Ball from_mpfr(const mpfr_t x, long prec);
  // ball centered at mid whose radius is the upper endpoint of rad_upper
  static Ball centered(const mpfr_t mid, const Ball& rad_upper, long prec);

  long prec() const { return prec_; }

  friend Ball add(const Ball& a, const Ball& b);
  friend Ball sub(const Ball& a, const Ball& b);
  friend Ball neg(const Ball& a);
  friend Ball mul(const Ball& a, const Ball& b);
  friend Ball div_ball(const Ball& a, const Ball& b);  // b must exclude 0
  friend Ball abs_ball(const Ball& a);
  friend Ball min_ball(const Ball& a, const Ball& b);  // interval min
  friend Ball log_ball(const Ball& a);   // a must be certainly positive
  friend Ball sqrt_ball(const Ball& a);  // clamps negative lower ends to 0
  Ball mul_rat(const Rat& q) const;      // exact rational scaling
  Ball round_to(long prec) const;

  bool is_exact_zero() const;
  bool contains_zero() const;
  bool certainly_positive() const;  // lower endpoint > 0
  bool certainly_nonneg() const;    // lower endpoint >= 0
  bool certainly_negative() const;
  // certainly |this| < |other|'s lower end, endpoint comparison
  bool certainly_less(const Ball& other) const;

  double mid_d() const;
  double rad_d() const;
  // Exact dyadic rational equal to the midpoint / radius (mpfr values are
  // binary floats, so the conversion is lossless).
  Rat mid_rat() const;
  Rat rad_rat() const;
  // |mid| + rad <= bound?
  bool abs_bounded_by(double bound) const;

  // "m ± r" with deterministic formatting (sig significant digits for m).
  std::string str(int sig = 30) const;
  std::string mid_str(int sig = 30) const;
  std::string rad_str() const;

  const mpfr_t& mid() const { return mid_; }
  const mpfr_t& rad() const { return rad_; }

 private:
  mpfr_t mid_;
  mpfr_t rad_;  // fixed low precision, always >= 0
  long prec_;
  friend class CBall;
  void bump_rad_half_ulp(int ternary);
  static Ball from_endpoints(const mpfr_t lo, const mpfr_t hi, long prec);
};

Ball add(const Ball& a, const Ball& b);
Ball sub(const Ball& a, const Ball& b);
Ball neg(const Ball& a);
Ball mul(const Ball& a, const Ball& b);
Ball div_ball(const Ball& a, const Ball& b);
Ball abs_ball(const Ball& a);
Ball min_ball(const Ball& a, const Ball& b);
Ball log_ball(const Ball& a);
Ball sqrt_ball(const Ball& a);

// Complex ball as a pair of real balls (rectangular).
class CBall {
 public:
  explicit CBall(long prec = kDefaultPrec) : re(prec), im(prec) {}
  CBall(Ball r, Ball i) : re(std::move(r)), im(std::move(i)) {}
  Ball re, im;

  friend CBall add(const CBall& a, const CBall& b);
  friend CBall sub(const CBall& a, const CBall& b);
  friend CBall mul(const CBall& a, const CBall& b);
  CBall conj() const;
  Ball abs2() const;  // re^2 + im^2
  Ball abs() const;   // sqrt(abs2)
};

CBall add(const CBall& a, const CBall& b);
CBall sub(const CBall& a, const CBall& b);
CBall mul(const CBall& a, const CBall& b);

}  // namespace gvf
