#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gvf/places.hpp"

namespace gvf {

// Rational-function expressions over Q in named variables, used for divisor
// templates, point-search equations and exclusion conditions.
//
// Grammar (whitespace-insensitive):
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := '-' factor | base ('^' integer)?
//   base   := integer | ident | '(' expr ')'
//   ident  := [A-Za-z_][A-Za-z0-9_]*       integer := digits
// '^' takes an optionally negated integer exponent.
struct RatExpr;
using RatExprPtr = std::shared_ptr<const RatExpr>;

struct RatExpr {
  enum class Kind { Const, Var, Add, Sub, Mul, Div, Neg, Pow };
  Kind kind = Kind::Const;
  Rat value;         // Const
  std::string name;  // Var
  RatExprPtr lhs, rhs;
  long exponent = 0;  // Pow
};

// Throws Err::Syntax with a 0-based byte offset on malformed input.
RatExprPtr parse_expr(const std::string& text);

// variable names appearing in the expression, sorted, deduplicated
std::vector<std::string> expr_variables(const RatExpr& e);

// Evaluates over the point's carrier; nullopt when a division by zero (or a
// negative power of zero) occurs.  Unassigned variables raise Err::Input.
std::optional<FieldElem> eval_expr(const RatExpr& e, const CarrierPtr& k,
                                   const std::map<std::string, FieldElem>& point);

}  // namespace gvf
