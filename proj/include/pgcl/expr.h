#pragma once

#include <cstdint>
#include <memory>
#include <string>

#include "pgcl/group.h"

namespace pgcl {

// Group expressions:
//   expr  := cprod ('x' cprod)*
//   cprod := atom ('.' atom)*
//   atom  := Cyc(q) | ElemAb(p,k) | ES(p,m,+|-) | D8 | Q8 | '(' expr ')'
// 'x' is the direct product, '.' the canonical central product (left
// derived subgroup onto the order-p subgroup of the right cyclic factor).
// Both are left associative; '.' binds tighter.
struct GroupExpr {
  enum class Kind { Cyc, ElemAb, ES, D8, Q8, Dir, CProd };
  Kind kind = Kind::Cyc;
  std::uint64_t a = 0;  // q for Cyc, p for ElemAb and ES
  unsigned b = 0;       // k for ElemAb, m for ES
  Sign sign = Sign::Plus;
  std::shared_ptr<const GroupExpr> left, right;

  friend bool operator==(const GroupExpr& x, const GroupExpr& y);
};

using ExprPtr = std::shared_ptr<const GroupExpr>;

ExprPtr make_cyc(std::uint64_t q);
ExprPtr make_elemab(std::uint64_t p, unsigned k);
ExprPtr make_es(std::uint64_t p, unsigned m, Sign sign);  // D8 / Q8 for p = 2, m = 1
ExprPtr make_dir(ExprPtr a, ExprPtr b);
ExprPtr make_cprod(ExprPtr a, ExprPtr b);

// Throws ParseError (with the offending offset) or SemanticError.
ExprPtr parse_expr(const std::string& text);

// Canonical text with minimal parentheses.
std::string to_string(const GroupExpr& e);

// Order without building the table.
std::uint64_t expr_order(const GroupExpr& e);

// Builds the group; every node's construction string is its canonical text.
Group build(const GroupExpr& e, std::size_t max_order = kDefaultMaxOrder);

}  // namespace pgcl
