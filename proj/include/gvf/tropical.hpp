#pragma once

#include <memory>
#include <string>
#include <vector>

#include "gvf/errors.hpp"
#include "gvf/numeric.hpp"

namespace gvf {

// Term language: variables x1, x2, ..., the constant 0, rational scaling,
// binary addition, and n-ary (n >= 2) minimum. max is surface sugar:
// max(e...) parses to -1 * min(-1*e...). There are no nonzero constants.
//
// Surface grammar:
//   expr     := term (('+' | '-') term)*
//   term     := (rational '*')? atom
//   atom     := var | '0' | ('min'|'max') '(' expr (',' expr)+ ')' | '(' expr ')'
//   var      := 'x' [1-9][0-9]*
//   rational := ['-'] digits ('/' digits)?
struct TropTerm;
using TropPtr = std::shared_ptr<const TropTerm>;

struct TropTerm {
  enum class Kind { Var, Zero, Scale, Add, Min };
  Kind kind;
  int var = 0;                // Kind::Var, 1-based index
  Rat coeff;                  // Kind::Scale
  std::vector<TropPtr> kids;  // Scale: 1, Add: 2, Min: >= 2

  static TropPtr variable(int index);
  static TropPtr zero();
  static TropPtr scale(Rat coeff, TropPtr t);
  static TropPtr sum(TropPtr a, TropPtr b);
  static TropPtr minimum(std::vector<TropPtr> kids);  // needs >= 2 entries
};

// max variable index appearing in t; 0 for variable-free terms
int arity(const TropTerm& t);

// structural equality
bool trop_equal(const TropTerm& a, const TropTerm& b);

// same term with every variable index raised by offset (offset >= 0)
TropPtr shift_vars(const TropPtr& t, int offset);

// Throws Err::Syntax (with 0-based byte offset) or Err::Constant.
TropPtr parse_trop(const std::string& text);

// Canonical rendering; parse_trop(render_trop(t)) reproduces t node for node.
std::string render_trop(const TropTerm& t);

// Evaluation over any ordered Q-vector space presented by an Ops bundle with
//   V zero() / V add(V,V) / V scale(Rat,V) / V vmin(V,V).
template <class V, class Ops>
V eval_trop(const TropTerm& t, const std::vector<V>& args, const Ops& ops) {
  switch (t.kind) {
    case TropTerm::Kind::Var:
      if (t.var > static_cast<int>(args.size()))
        throw GvfError(Err::ArityMismatch,
                       "evaluation vector has " + std::to_string(args.size()) +
                           " entries but the term uses x" +
                           std::to_string(t.var));
      return args[t.var - 1];
    case TropTerm::Kind::Zero:
      return ops.zero();
    case TropTerm::Kind::Scale:
      return ops.scale(t.coeff, eval_trop(*t.kids[0], args, ops));
    case TropTerm::Kind::Add:
      return ops.add(eval_trop(*t.kids[0], args, ops),
                     eval_trop(*t.kids[1], args, ops));
    case TropTerm::Kind::Min: {
      V acc = eval_trop(*t.kids[0], args, ops);
      for (std::size_t i = 1; i < t.kids.size(); ++i)
        acc = ops.vmin(std::move(acc), eval_trop(*t.kids[i], args, ops));
      return acc;
    }
  }
  throw GvfError(Err::Internal, "eval_trop: bad node kind");
}

struct RatOps {
  Rat zero() const { return Rat(0); }
  Rat add(const Rat& a, const Rat& b) const { return a + b; }
  Rat scale(const Rat& q, const Rat& v) const { return q * v; }
  Rat vmin(const Rat& a, const Rat& b) const { return a < b ? a : b; }
};

Rat eval_trop_rat(const TropTerm& t, const std::vector<Rat>& args);

}  // namespace gvf
