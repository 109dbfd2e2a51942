#include "gvf/tropical.hpp"

#include <algorithm>
#include <cctype>

namespace gvf {

TropPtr TropTerm::variable(int index) {
  if (index < 1) throw GvfError(Err::Internal, "variable index must be >= 1");
  auto t = std::make_shared<TropTerm>();
  t->kind = Kind::Var;
  t->var = index;
  return t;
}

TropPtr TropTerm::zero() {
  auto t = std::make_shared<TropTerm>();
  t->kind = Kind::Zero;
  return t;
}

TropPtr TropTerm::scale(Rat coeff, TropPtr inner) {
  auto t = std::make_shared<TropTerm>();
  t->kind = Kind::Scale;
  coeff.canonicalize();
  t->coeff = std::move(coeff);
  t->kids = {std::move(inner)};
  return t;
}

TropPtr TropTerm::sum(TropPtr a, TropPtr b) {
  auto t = std::make_shared<TropTerm>();
  t->kind = Kind::Add;
  t->kids = {std::move(a), std::move(b)};
  return t;
}

TropPtr TropTerm::minimum(std::vector<TropPtr> kids) {
  if (kids.size() < 2)
    throw GvfError(Err::Internal, "minimum needs at least two arguments");
  auto t = std::make_shared<TropTerm>();
  t->kind = Kind::Min;
  t->kids = std::move(kids);
  return t;
}

int arity(const TropTerm& t) {
  switch (t.kind) {
    case TropTerm::Kind::Var:
      return t.var;
    case TropTerm::Kind::Zero:
      return 0;
    default: {
      int m = 0;
      for (const auto& k : t.kids) m = std::max(m, arity(*k));
      return m;
    }
  }
}

bool trop_equal(const TropTerm& a, const TropTerm& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case TropTerm::Kind::Var:
      return a.var == b.var;
    case TropTerm::Kind::Zero:
      return true;
    case TropTerm::Kind::Scale:
      if (a.coeff != b.coeff) return false;
      break;
    default:
      break;
  }
  if (a.kids.size() != b.kids.size()) return false;
  for (std::size_t i = 0; i < a.kids.size(); ++i)
    if (!trop_equal(*a.kids[i], *b.kids[i])) return false;
  return true;
}

TropPtr shift_vars(const TropPtr& t, int offset) {
  if (offset < 0) throw GvfError(Err::Internal, "shift_vars: negative offset");
  switch (t->kind) {
    case TropTerm::Kind::Var:
      return TropTerm::variable(t->var + offset);
    case TropTerm::Kind::Zero:
      return t;
    case TropTerm::Kind::Scale:
      return TropTerm::scale(t->coeff, shift_vars(t->kids[0], offset));
    case TropTerm::Kind::Add:
      return TropTerm::sum(shift_vars(t->kids[0], offset),
                           shift_vars(t->kids[1], offset));
    case TropTerm::Kind::Min: {
      std::vector<TropPtr> kids;
      kids.reserve(t->kids.size());
      for (const auto& k : t->kids) kids.push_back(shift_vars(k, offset));
      return TropTerm::minimum(std::move(kids));
    }
  }
  throw GvfError(Err::Internal, "shift_vars: bad node");
}

namespace {

constexpr int kMaxVarIndex = 1000000;

struct Parser {
  const std::string& s;
  std::size_t pos = 0;

  explicit Parser(const std::string& text) : s(text) {}

  void ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos])))
      ++pos;
  }
  [[noreturn]] void fail(const std::string& msg, std::size_t at) {
    throw GvfError(Err::Syntax, msg + " at byte " + std::to_string(at), at);
  }
  bool at_end() {
    ws();
    return pos >= s.size();
  }
  char peek() {
    ws();
    return pos < s.size() ? s[pos] : '\0';
  }
  bool eat(char c) {
    if (peek() == c) {
      ++pos;
      return true;
    }
    return false;
  }
  void expect(char c, const std::string& what) {
    if (!eat(c)) fail("expected '" + std::string(1, c) + "' " + what, pos);
  }

  std::string digits() {
    std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
      ++pos;
    if (pos == start) fail("expected digits", pos);
    return s.substr(start, pos - start);
  }

  Rat rational() {
    std::size_t start = pos;
    bool negative = false;
    if (pos < s.size() && s[pos] == '-') {
      negative = true;
      ++pos;
    }
    std::string num = digits();
    std::string den = "1";
    if (pos < s.size() && s[pos] == '/') {
      ++pos;
      den = digits();
    }
    Rat q(num + "/" + den);
    if (q.get_den() == 0) fail("zero denominator", start);
    q.canonicalize();
    return negative ? Rat(-q) : q;
  }

  TropPtr expr() {
    TropPtr acc = term(false);
    for (;;) {
      if (eat('+'))
        acc = TropTerm::sum(std::move(acc), term(false));
      else if (eat('-'))
        acc = TropTerm::sum(std::move(acc), term(true));
      else
        break;
    }
    return acc;
  }

  // negated folds a preceding binary '-' into the scale coefficient
  TropPtr term(bool negated) {
    char c = peek();
    if (c == '-' || std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos;
      Rat q = rational();
      std::size_t after = pos;
      ws();
      if (pos < s.size() && s[pos] == '*') {
        ++pos;
        Rat k = negated ? Rat(-q) : q;
        return TropTerm::scale(std::move(k), atom());
      }
      pos = after;
      if (q == 0) {
        TropPtr z = TropTerm::zero();
        return negated ? TropTerm::scale(Rat(-1), std::move(z)) : z;
      }
      throw GvfError(Err::Constant,
                     "nonzero constant at byte " + std::to_string(start) +
                         " (the term language has no nonzero constants)",
                     start);
    }
    TropPtr a = atom();
    return negated ? TropTerm::scale(Rat(-1), std::move(a)) : a;
  }

  TropPtr atom() {
    char c = peek();
    std::size_t start = pos;
    if (c == '(') {
      ++pos;
      TropPtr inner = expr();
      expect(')', "to close '('");
      return inner;
    }
    if (c == '0') {
      ++pos;
      return TropTerm::zero();
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t w = pos;
      while (w < s.size() && std::isalpha(static_cast<unsigned char>(s[w])))
        ++w;
      std::string name = s.substr(pos, w - pos);
      if (name == "min" || name == "max") {
        pos = w;
        expect('(', "after '" + name + "'");
        std::vector<TropPtr> kids;
        kids.push_back(expr());
        if (peek() == ')')
          fail(name + " needs at least 2 arguments", pos);
        while (eat(',')) kids.push_back(expr());
        expect(')', "to close '" + name + "('");
        if (name == "min") return TropTerm::minimum(std::move(kids));
        for (auto& k : kids) k = TropTerm::scale(Rat(-1), std::move(k));
        return TropTerm::scale(Rat(-1), TropTerm::minimum(std::move(kids)));
      }
      if (name == "x") {
        pos = w;
        std::size_t istart = pos;
        std::string idx = digits();
        if (idx[0] == '0') fail("variable indices start at 1", istart);
        if (idx.size() > 7) fail("variable index too large", istart);
        long v = std::stol(idx);
        if (v > kMaxVarIndex) fail("variable index too large", istart);
        return TropTerm::variable(static_cast<int>(v));
      }
      fail("unknown identifier '" + name + "'", start);
    }
    fail("expected a variable, 0, min, max, or '('", start);
  }
};

// wrap non-atom operands of '*' in parentheses
std::string render_as_atom(const TropTerm& t) {
  std::string r = render_trop(t);
  if (t.kind == TropTerm::Kind::Add || t.kind == TropTerm::Kind::Scale)
    return "(" + r + ")";
  return r;
}

}  // namespace

TropPtr parse_trop(const std::string& text) {
  Parser p(text);
  TropPtr t = p.expr();
  if (!p.at_end()) p.fail("unexpected trailing input", p.pos);
  return t;
}

std::string render_trop(const TropTerm& t) {
  switch (t.kind) {
    case TropTerm::Kind::Var:
      return "x" + std::to_string(t.var);
    case TropTerm::Kind::Zero:
      return "0";
    case TropTerm::Kind::Scale:
      return rat_to_string(t.coeff) + "*" + render_as_atom(*t.kids[0]);
    case TropTerm::Kind::Add: {
      // right operand gets parentheses when it is itself a sum so that the
      // left-associative reparse reproduces this exact tree
      std::string lhs = render_trop(*t.kids[0]);
      const TropTerm& rhs = *t.kids[1];
      std::string r = render_trop(rhs);
      if (rhs.kind == TropTerm::Kind::Add) r = "(" + r + ")";
      return lhs + " + " + r;
    }
    case TropTerm::Kind::Min: {
      std::string out = "min(";
      for (std::size_t i = 0; i < t.kids.size(); ++i) {
        if (i) out += ", ";
        out += render_trop(*t.kids[i]);
      }
      return out + ")";
    }
  }
  throw GvfError(Err::Internal, "render_trop: bad node kind");
}

Rat eval_trop_rat(const TropTerm& t, const std::vector<Rat>& args) {
  return eval_trop(t, args, RatOps{});
}

}  // namespace gvf
