#include "pgcl/expr.h"

#include <cctype>
#include <limits>
#include <vector>

#include "pgcl/errors.h"

namespace pgcl {

bool operator==(const GroupExpr& x, const GroupExpr& y) {
  if (x.kind != y.kind || x.a != y.a || x.b != y.b || x.sign != y.sign) return false;
  auto same = [](const ExprPtr& l, const ExprPtr& r) { return (!l && !r) || (l && r && *l == *r); };
  return same(x.left, y.left) && same(x.right, y.right);
}

namespace {

ExprPtr node(GroupExpr e) { return std::make_shared<const GroupExpr>(std::move(e)); }

void check_semantics(const GroupExpr& e) {
  switch (e.kind) {
    case GroupExpr::Kind::Cyc:
      if (e.a == 0) throw SemanticError("Cyc(q) needs q >= 1");
      break;
    case GroupExpr::Kind::ElemAb:
      if (!is_prime(e.a)) throw SemanticError("ElemAb(p,k) needs a prime p");
      if (e.b == 0) throw SemanticError("ElemAb(p,k) needs k >= 1");
      break;
    case GroupExpr::Kind::ES:
      if (!is_prime(e.a)) throw SemanticError("ES(p,m,s) needs a prime p");
      if (e.b == 0) throw SemanticError("ES(p,m,s) needs m >= 1");
      break;
    case GroupExpr::Kind::CProd:
      if (e.right->kind != GroupExpr::Kind::Cyc)
        throw SemanticError("right operand of '.' must be a cyclic group");
      if (prime_of_prime_power(e.right->a) == 0)
        throw SemanticError("right operand of '.' must be cyclic of prime-power order");
      break;
    default:
      break;
  }
}

}  // namespace

ExprPtr make_cyc(std::uint64_t q) {
  GroupExpr e;
  e.kind = GroupExpr::Kind::Cyc;
  e.a = q;
  check_semantics(e);
  return node(e);
}

ExprPtr make_elemab(std::uint64_t p, unsigned k) {
  GroupExpr e;
  e.kind = GroupExpr::Kind::ElemAb;
  e.a = p;
  e.b = k;
  check_semantics(e);
  return node(e);
}

ExprPtr make_es(std::uint64_t p, unsigned m, Sign sign) {
  GroupExpr e;
  if (p == 2 && m == 1) {
    e.kind = sign == Sign::Plus ? GroupExpr::Kind::D8 : GroupExpr::Kind::Q8;
    return node(e);
  }
  e.kind = GroupExpr::Kind::ES;
  e.a = p;
  e.b = m;
  e.sign = sign;
  check_semantics(e);
  return node(e);
}

ExprPtr make_dir(ExprPtr a, ExprPtr b) {
  GroupExpr e;
  e.kind = GroupExpr::Kind::Dir;
  e.left = std::move(a);
  e.right = std::move(b);
  return node(e);
}

ExprPtr make_cprod(ExprPtr a, ExprPtr b) {
  GroupExpr e;
  e.kind = GroupExpr::Kind::CProd;
  e.left = std::move(a);
  e.right = std::move(b);
  check_semantics(e);
  return node(e);
}

// ---- parser -----------------------------------------------------------------

namespace {

class Parser {
 public:
  explicit Parser(const std::string& s) : s_(s) {}

  ExprPtr parse() {
    ExprPtr e = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected trailing input");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool peek_char(char c) {
    skip();
    return pos_ < s_.size() && s_[pos_] == c;
  }

  void expect(char c) {
    if (!peek_char(c)) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  // Identifier at the cursor without consuming it.
  std::string peek_word() {
    skip();
    std::size_t end = pos_;
    while (end < s_.size() && std::isalnum(static_cast<unsigned char>(s_[end]))) ++end;
    return s_.substr(pos_, end - pos_);
  }

  std::uint64_t number() {
    skip();
    const std::size_t start = pos_;
    std::uint64_t v = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      const std::uint64_t d = static_cast<std::uint64_t>(s_[pos_] - '0');
      if (v > (std::numeric_limits<std::uint64_t>::max() - d) / 10) fail("number too large");
      v = v * 10 + d;
      ++pos_;
    }
    if (pos_ == start) fail("expected a number");
    return v;
  }

  unsigned small_number() {
    const std::size_t at = pos_;
    const std::uint64_t v = number();
    if (v > 64) throw ParseError("parameter too large", at);
    return static_cast<unsigned>(v);
  }

  ExprPtr expr() {
    ExprPtr e = cprod();
    for (;;) {
      skip();
      // No constructor starts with a lower-case letter.
      if (pos_ < s_.size() && s_[pos_] == 'x') {
        ++pos_;
        e = make_dir(e, cprod());
      } else {
        return e;
      }
    }
  }

  ExprPtr cprod() {
    ExprPtr e = atom();
    while (peek_char('.')) {
      const std::size_t at = pos_;
      ++pos_;
      ExprPtr r = atom();
      try {
        e = make_cprod(e, r);
      } catch (const SemanticError& ex) {
        throw SemanticError(std::string(ex.what()) + " (operator at position " + std::to_string(at) + ")");
      }
    }
    return e;
  }

  ExprPtr atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    if (s_[pos_] == '(') {
      ++pos_;
      ExprPtr e = expr();
      expect(')');
      return e;
    }
    const std::size_t at = pos_;
    const std::string w = peek_word();
    if (w.empty()) fail("expected a group");
    pos_ += w.size();
    try {
      if (w == "D8") return make_es(2, 1, Sign::Plus);
      if (w == "Q8") return make_es(2, 1, Sign::Minus);
      if (w == "Cyc") {
        expect('(');
        const std::uint64_t q = number();
        expect(')');
        return make_cyc(q);
      }
      if (w == "ElemAb") {
        expect('(');
        const std::uint64_t p = number();
        expect(',');
        const unsigned k = small_number();
        expect(')');
        return make_elemab(p, k);
      }
      if (w == "ES") {
        expect('(');
        const std::uint64_t p = number();
        expect(',');
        const unsigned m = small_number();
        expect(',');
        skip();
        Sign sign;
        if (pos_ < s_.size() && s_[pos_] == '+')
          sign = Sign::Plus;
        else if (pos_ < s_.size() && s_[pos_] == '-')
          sign = Sign::Minus;
        else
          fail("expected sign '+' or '-'");
        ++pos_;
        expect(')');
        GroupExpr e;
        e.kind = GroupExpr::Kind::ES;
        e.a = p;
        e.b = m;
        e.sign = sign;
        check_semantics(e);
        return make_es(p, m, sign);
      }
    } catch (const SemanticError& ex) {
      throw SemanticError(std::string(ex.what()) + " (at position " + std::to_string(at) + ")");
    }
    throw ParseError("unknown constructor '" + w + "'", at);
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

}  // namespace

ExprPtr parse_expr(const std::string& text) { return Parser(text).parse(); }

// ---- printing, order, build ---------------------------------------------------

std::string to_string(const GroupExpr& e) {
  using K = GroupExpr::Kind;
  switch (e.kind) {
    case K::Cyc: return "Cyc(" + std::to_string(e.a) + ")";
    case K::ElemAb: return "ElemAb(" + std::to_string(e.a) + "," + std::to_string(e.b) + ")";
    case K::ES:
      return "ES(" + std::to_string(e.a) + "," + std::to_string(e.b) + "," + std::string(1, sign_char(e.sign)) + ")";
    case K::D8: return "D8";
    case K::Q8: return "Q8";
    case K::Dir: {
      std::string r = to_string(*e.right);
      if (e.right->kind == K::Dir) r = "(" + r + ")";
      return to_string(*e.left) + " x " + r;
    }
    case K::CProd: {
      auto wrap = [](const GroupExpr& c, bool right) {
        const bool paren = c.kind == K::Dir || (right && c.kind == K::CProd);
        return paren ? "(" + to_string(c) + ")" : to_string(c);
      };
      return wrap(*e.left, false) + " . " + wrap(*e.right, true);
    }
  }
  return {};
}

std::uint64_t expr_order(const GroupExpr& e) {
  using K = GroupExpr::Kind;
  auto mul = [](std::uint64_t x, std::uint64_t y) {
    if (y != 0 && x > std::numeric_limits<std::uint64_t>::max() / y) throw SizeExceeded("expression order overflows");
    return x * y;
  };
  switch (e.kind) {
    case K::Cyc: return e.a;
    case K::ElemAb: {
      std::uint64_t r = 1;
      for (unsigned i = 0; i < e.b; ++i) r = mul(r, e.a);
      return r;
    }
    case K::ES: {
      std::uint64_t r = 1;
      for (unsigned i = 0; i < 2 * e.b + 1; ++i) r = mul(r, e.a);
      return r;
    }
    case K::D8:
    case K::Q8: return 8;
    case K::Dir: return mul(expr_order(*e.left), expr_order(*e.right));
    case K::CProd: return mul(expr_order(*e.left), expr_order(*e.right)) / prime_of_prime_power(e.right->a);
  }
  return 0;
}

Group build(const GroupExpr& e, std::size_t max_order) {
  using K = GroupExpr::Kind;
  if (expr_order(e) > max_order)
    throw SizeExceeded(to_string(e) + " has order " + std::to_string(expr_order(e)) + " above the bound " +
                       std::to_string(max_order));
  Group g = [&] {
    switch (e.kind) {
      case K::Cyc: return cyclic(e.a, max_order);
      case K::ElemAb: return elementary_abelian(e.a, e.b, max_order);
      case K::ES: return extraspecial(e.a, e.b, e.sign, max_order);
      case K::D8: return dihedral8();
      case K::Q8: return quaternion8();
      case K::Dir: return direct_product(build(*e.left, max_order), build(*e.right, max_order), max_order);
      case K::CProd:
        return central_product_canonical(build(*e.left, max_order), build(*e.right, max_order), max_order);
    }
    throw InvalidArgument("unknown expression kind");
  }();
  return g.with_construction(to_string(e));
}

}  // namespace pgcl
