#pragma once

#include <map>
#include <string>

#include "gvf/ball.hpp"
#include "gvf/numeric.hpp"

namespace gvf {

// Exact value c + sum_p q_p * log p with p prime and q_p, c rational, kept
// with no zero coefficients. {1} together with {log p} is linearly
// independent over Q (unique factorization plus Lindemann), so equality is
// structural and the sign of a nonzero value is decidable by certified
// numerics at high enough precision.
struct LogLin {
  std::map<Int, Rat> logs;
  Rat c;

  LogLin() : c(0) {}

  static LogLin constant(Rat q);
  static LogLin log_of_prime(const Int& p, const Rat& coeff = Rat(1));
  // coeff * log n for an integer n >= 1 (factored exactly)
  static LogLin log_of_int(const Int& n, const Rat& coeff = Rat(1));
  // coeff * log q for a positive rational q
  static LogLin log_of_rat(const Rat& q, const Rat& coeff = Rat(1));

  void normalize();
  bool is_zero() const;
  bool is_rational() const { return logs.empty(); }

  LogLin& operator+=(const LogLin& o);
  LogLin& operator-=(const LogLin& o);
  friend LogLin operator+(LogLin a, const LogLin& b) { return a += b; }
  friend LogLin operator-(LogLin a, const LogLin& b) { return a -= b; }
  friend LogLin operator-(const LogLin& a) { return a.scaled(Rat(-1)); }
  LogLin scaled(const Rat& q) const;
  bool operator==(const LogLin& o) const;
  bool operator!=(const LogLin& o) const { return !(*this == o); }

  Ball render(long prec) const;
  // -1, 0, +1; exact when structural, otherwise certified numeric sign with
  // doubling precision (terminates because a nonzero value stays away from 0)
  int sign(long start_prec = kDefaultPrec) const;
  // "2*log(2) - log(3) + 1/2": primes ascending, constant last
  std::string str() const;
};

int cmp(const LogLin& a, const LogLin& b);
LogLin min_loglin(const LogLin& a, const LogLin& b);

struct LogLinOps {
  LogLin zero() const { return LogLin(); }
  LogLin add(const LogLin& a, const LogLin& b) const { return a + b; }
  LogLin scale(const Rat& q, const LogLin& v) const { return v.scaled(q); }
  LogLin vmin(const LogLin& a, const LogLin& b) const {
    return min_loglin(a, b);
  }
};

struct BallOps {
  long prec = kDefaultPrec;
  Ball zero() const { return Ball(prec); }
  Ball add(const Ball& a, const Ball& b) const { return gvf::add(a, b); }
  Ball scale(const Rat& q, const Ball& v) const { return v.mul_rat(q); }
  Ball vmin(const Ball& a, const Ball& b) const { return min_ball(a, b); }
};

}  // namespace gvf
