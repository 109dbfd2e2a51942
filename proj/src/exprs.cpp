#include "gvf/exprs.hpp"

#include <cctype>
#include <set>

namespace gvf {

namespace {

RatExprPtr mk(RatExpr node) { return std::make_shared<const RatExpr>(std::move(node)); }

RatExprPtr mk_binary(RatExpr::Kind kind, RatExprPtr a, RatExprPtr b) {
  RatExpr n;
  n.kind = kind;
  n.lhs = std::move(a);
  n.rhs = std::move(b);
  return mk(std::move(n));
}

struct ExprParser {
  const std::string& s;
  std::size_t pos = 0;

  explicit ExprParser(const std::string& text) : s(text) {}

  [[noreturn]] void fail(const std::string& what, std::size_t at) {
    throw GvfError(Err::Syntax, what + " at byte " + std::to_string(at), at);
  }

  void ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }

  char peek() {
    ws();
    return pos < s.size() ? s[pos] : '\0';
  }

  bool eat(char c) {
    if (peek() != c) return false;
    ++pos;
    return true;
  }

  std::string digits() {
    std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == start) fail("expected digits", start);
    return s.substr(start, pos - start);
  }

  long integer_token() {
    ws();
    bool negate = eat('-');
    ws();
    std::string d = digits();
    if (d.size() > 9) fail("exponent too large", pos - d.size());
    long v = std::stol(d);
    return negate ? -v : v;
  }

  RatExprPtr base() {
    ws();
    if (pos >= s.size()) fail("unexpected end of input", pos);
    char c = s[pos];
    if (c == '(') {
      ++pos;
      RatExprPtr e = expr();
      if (!eat(')')) fail("expected ')'", pos);
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string d = digits();
      RatExpr n;
      n.kind = RatExpr::Kind::Const;
      n.value = Rat(Int(d));
      return mk(std::move(n));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos;
      while (pos < s.size() &&
             (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
        ++pos;
      RatExpr n;
      n.kind = RatExpr::Kind::Var;
      n.name = s.substr(start, pos - start);
      return mk(std::move(n));
    }
    fail("unexpected character", pos);
  }

  RatExprPtr factor() {
    ws();
    if (eat('-')) {
      RatExpr n;
      n.kind = RatExpr::Kind::Neg;
      n.lhs = factor();
      return mk(std::move(n));
    }
    RatExprPtr b = base();
    if (eat('^')) {
      RatExpr n;
      n.kind = RatExpr::Kind::Pow;
      n.lhs = std::move(b);
      n.exponent = integer_token();
      return mk(std::move(n));
    }
    return b;
  }

  RatExprPtr term() {
    RatExprPtr acc = factor();
    for (;;) {
      if (eat('*'))
        acc = mk_binary(RatExpr::Kind::Mul, std::move(acc), factor());
      else if (eat('/'))
        acc = mk_binary(RatExpr::Kind::Div, std::move(acc), factor());
      else
        return acc;
    }
  }

  RatExprPtr expr() {
    RatExprPtr acc = term();
    for (;;) {
      if (eat('+'))
        acc = mk_binary(RatExpr::Kind::Add, std::move(acc), term());
      else if (eat('-'))
        acc = mk_binary(RatExpr::Kind::Sub, std::move(acc), term());
      else
        return acc;
    }
  }
};

void collect_vars(const RatExpr& e, std::set<std::string>& out) {
  switch (e.kind) {
    case RatExpr::Kind::Var:
      out.insert(e.name);
      return;
    case RatExpr::Kind::Const:
      return;
    default:
      if (e.lhs) collect_vars(*e.lhs, out);
      if (e.rhs) collect_vars(*e.rhs, out);
  }
}

}  // namespace

RatExprPtr parse_expr(const std::string& text) {
  ExprParser p(text);
  RatExprPtr e = p.expr();
  p.ws();
  if (p.pos != text.size()) p.fail("trailing input", p.pos);
  return e;
}

std::vector<std::string> expr_variables(const RatExpr& e) {
  std::set<std::string> names;
  collect_vars(e, names);
  return {names.begin(), names.end()};
}

std::optional<FieldElem> eval_expr(const RatExpr& e, const CarrierPtr& k,
                                   const std::map<std::string, FieldElem>& point) {
  switch (e.kind) {
    case RatExpr::Kind::Const:
      return FieldElem::rational(k, e.value);
    case RatExpr::Kind::Var: {
      auto it = point.find(e.name);
      if (it == point.end())
        throw GvfError(Err::Input, "variable '" + e.name + "' is not assigned");
      if (!it->second.k->same_as(*k))
        throw GvfError(Err::Input, "variable '" + e.name + "' lives in another carrier");
      return it->second;
    }
    case RatExpr::Kind::Neg: {
      auto a = eval_expr(*e.lhs, k, point);
      if (!a) return std::nullopt;
      return neg(*a);
    }
    case RatExpr::Kind::Pow: {
      auto a = eval_expr(*e.lhs, k, point);
      if (!a) return std::nullopt;
      if (e.exponent < 0 && a->is_zero()) return std::nullopt;
      return pow(*a, e.exponent);
    }
    case RatExpr::Kind::Add:
    case RatExpr::Kind::Sub:
    case RatExpr::Kind::Mul:
    case RatExpr::Kind::Div: {
      auto a = eval_expr(*e.lhs, k, point);
      if (!a) return std::nullopt;
      auto b = eval_expr(*e.rhs, k, point);
      if (!b) return std::nullopt;
      switch (e.kind) {
        case RatExpr::Kind::Add:
          return add(*a, *b);
        case RatExpr::Kind::Sub:
          return sub(*a, *b);
        case RatExpr::Kind::Mul:
          return mul(*a, *b);
        default:
          if (b->is_zero()) return std::nullopt;
          return div(*a, *b);
      }
    }
  }
  throw GvfError(Err::Internal, "eval_expr: bad node");
}

}  // namespace gvf
