#include "gvf/loglin.hpp"

#include <utility>

namespace gvf {

LogLin LogLin::constant(Rat q) {
  LogLin v;
  q.canonicalize();
  v.c = std::move(q);
  return v;
}

LogLin LogLin::log_of_prime(const Int& p, const Rat& coeff) {
  LogLin v;
  if (coeff != 0) v.logs[p] = coeff;
  return v;
}

LogLin LogLin::log_of_int(const Int& n, const Rat& coeff) {
  if (n < 1) throw GvfError(Err::Input, "log_of_int: n must be >= 1");
  LogLin v;
  if (n == 1 || coeff == 0) return v;
  for (const auto& [p, e] : factor_int(n)) v.logs[p] = coeff * e;
  return v;
}

LogLin LogLin::log_of_rat(const Rat& q, const Rat& coeff) {
  if (sgn(q) <= 0) throw GvfError(Err::Input, "log_of_rat: q must be > 0");
  LogLin v = log_of_int(Int(q.get_num()), coeff);
  v -= log_of_int(Int(q.get_den()), coeff);
  return v;
}

void LogLin::normalize() {
  for (auto it = logs.begin(); it != logs.end();) {
    if (it->second == 0)
      it = logs.erase(it);
    else
      ++it;
  }
}

bool LogLin::is_zero() const {
  if (c != 0) return false;
  for (const auto& [p, q] : logs)
    if (q != 0) return false;
  return true;
}

LogLin& LogLin::operator+=(const LogLin& o) {
  c += o.c;
  for (const auto& [p, q] : o.logs) {
    auto [it, fresh] = logs.emplace(p, q);
    if (!fresh) it->second += q;
  }
  normalize();
  return *this;
}

LogLin& LogLin::operator-=(const LogLin& o) {
  c -= o.c;
  for (const auto& [p, q] : o.logs) {
    auto [it, fresh] = logs.emplace(p, -q);
    if (!fresh) it->second -= q;
  }
  normalize();
  return *this;
}

LogLin LogLin::scaled(const Rat& q) const {
  LogLin v;
  if (q == 0) return v;
  v.c = c * q;
  for (const auto& [p, w] : logs) v.logs[p] = w * q;
  return v;
}

bool LogLin::operator==(const LogLin& o) const { return (*this - o).is_zero(); }

Ball LogLin::render(long prec) const {
  Ball acc = Ball::from_rat(c, prec);
  for (const auto& [p, q] : logs)
    acc = add(acc, Ball::log_prime(p, prec).mul_rat(q));
  return acc;
}

int LogLin::sign(long start_prec) const {
  LogLin v = *this;
  v.normalize();
  if (v.logs.empty()) return sgn(v.c);
  for (long prec = start_prec; prec <= kMaxPrec; prec *= 2) {
    Ball b = v.render(prec);
    if (b.certainly_positive()) return 1;
    if (b.certainly_negative()) return -1;
  }
  throw GvfError(Err::PrecisionExhausted,
                 "sign of log-linear value undecided at precision cap");
}

std::string LogLin::str() const {
  LogLin v = *this;
  v.normalize();
  std::string out;
  auto append = [&out](const std::string& piece, bool negative) {
    if (out.empty()) {
      out = negative ? "-" + piece : piece;
    } else {
      out += negative ? " - " : " + ";
      out += piece;
    }
  };
  for (const auto& [p, q] : v.logs) {
    Rat a = rat_abs(q);
    std::string piece = "log(" + p.get_str() + ")";
    if (a != 1) piece = rat_to_string(a) + "*" + piece;
    append(piece, sgn(q) < 0);
  }
  if (v.c != 0 || out.empty())
    append(rat_to_string(rat_abs(v.c)), sgn(v.c) < 0);
  return out;
}

int cmp(const LogLin& a, const LogLin& b) { return (a - b).sign(); }

LogLin min_loglin(const LogLin& a, const LogLin& b) {
  return cmp(a, b) <= 0 ? a : b;
}

}  // namespace gvf
