#pragma once

#include <cctype>
#include <cmath>
#include <cstddef>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "subgeom/dual.hpp"
#include "subgeom/function.hpp"
#include "subgeom/settings.hpp"

namespace subgeom {

/// Arithmetic expression over named variables:
///   expr  := term (('+' | '-') term)*
///   term  := unary (('*' | '/') unary)*
///   unary := '-' unary | power
///   power := atom ('^' unary)?
///   atom  := number | name | func '(' expr ')' | '(' expr ')'
/// with func one of exp, sin, cos, log, sqrt. Evaluates for double and Dual.
class Expr {
 public:
  enum class Op { constant, variable, add, sub, mul, div, pow, neg, exp, sin, cos, log, sqrt };

  static Expr parse(const std::string& text, const std::vector<std::string>& variables) {
    Parser p{text, variables, 0};
    Expr e = p.expr();
    p.skip();
    if (p.pos != text.size()) p.fail("unexpected '" + std::string(1, text[p.pos]) + "'");
    e.source_ = text;
    return e;
  }

  template <class T>
  T eval(const std::vector<T>& x) const { return eval_node<T>(*node_, x); }

  const std::string& source() const { return source_; }
  bool is_constant() const { return node_->op == Op::constant; }

  /// R^n → R^1 scalar field over the given variables.
  ScalarField field(std::size_t dim) const {
    const Expr self = *this;
    return ScalarField::generic(dim, [self](const auto& x) { return self.eval(x); });
  }

 private:
  struct Node {
    Op op = Op::constant;
    double value = 0.0;
    std::size_t index = 0;
    std::shared_ptr<const Node> a, b;
  };
  using Ptr = std::shared_ptr<const Node>;

  explicit Expr(Ptr n) : node_(std::move(n)) {}

  static Ptr make(Op op, Ptr a = nullptr, Ptr b = nullptr) {
    auto n = std::make_shared<Node>();
    n->op = op;
    n->a = std::move(a);
    n->b = std::move(b);
    return n;
  }

  template <class T>
  static T eval_node(const Node& n, const std::vector<T>& x) {
    switch (n.op) {
      case Op::constant: return T(n.value);
      case Op::variable: return x.at(n.index);
      case Op::add: return eval_node(*n.a, x) + eval_node(*n.b, x);
      case Op::sub: return eval_node(*n.a, x) - eval_node(*n.b, x);
      case Op::mul: return eval_node(*n.a, x) * eval_node(*n.b, x);
      case Op::div: return eval_node(*n.a, x) / eval_node(*n.b, x);
      case Op::neg: return -eval_node(*n.a, x);
      case Op::exp: return exp(eval_node(*n.a, x));
      case Op::sin: return sin(eval_node(*n.a, x));
      case Op::cos: return cos(eval_node(*n.a, x));
      case Op::log: return log(eval_node(*n.a, x));
      case Op::sqrt: return sqrt(eval_node(*n.a, x));
      case Op::pow:
        // constant exponents keep negative bases valid
        if (n.b->op == Op::constant) return pow(eval_node(*n.a, x), n.b->value);
        return pow(eval_node(*n.a, x), eval_node(*n.b, x));
    }
    return T(0.0);
  }

  struct Parser {
    const std::string& s;
    const std::vector<std::string>& vars;
    std::size_t pos;

    [[noreturn]] void fail(const std::string& what) const {
      throw GeometryError(ErrorKind::config, "expression '" + s + "' at " + std::to_string(pos) + ": " + what);
    }
    void skip() {
      while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eat(char c) {
      skip();
      if (pos < s.size() && s[pos] == c) {
        ++pos;
        return true;
      }
      return false;
    }

    Expr expr() {
      Ptr left = term();
      for (;;) {
        if (eat('+')) left = make(Op::add, left, term());
        else if (eat('-')) left = make(Op::sub, left, term());
        else return Expr(left);
      }
    }
    Ptr term() {
      Ptr left = unary();
      for (;;) {
        if (eat('*')) left = make(Op::mul, left, unary());
        else if (eat('/')) left = make(Op::div, left, unary());
        else return left;
      }
    }
    Ptr unary() {
      if (eat('-')) return make(Op::neg, unary());
      if (eat('+')) return unary();
      return power();
    }
    Ptr power() {
      Ptr base = atom();
      if (eat('^')) return make(Op::pow, base, unary());
      return base;
    }
    Ptr atom() {
      skip();
      if (pos >= s.size()) fail("unexpected end");
      const char c = s[pos];
      if (c == '(') {
        ++pos;
        Ptr inner = expr().node_;
        if (!eat(')')) fail("expected ')'");
        return inner;
      }
      if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
        std::size_t used = 0;
        double v = 0.0;
        try {
          v = std::stod(s.substr(pos), &used);
        } catch (const std::exception&) {
          fail("bad number");
        }
        pos += used;
        auto n = std::make_shared<Node>();
        n->value = v;
        return n;
      }
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        const std::size_t start = pos;
        while (pos < s.size() && (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_')) ++pos;
        const std::string name = s.substr(start, pos - start);
        static const std::pair<const char*, Op> funcs[] = {
            {"exp", Op::exp}, {"sin", Op::sin}, {"cos", Op::cos}, {"log", Op::log}, {"sqrt", Op::sqrt}};
        for (const auto& [fname, op] : funcs) {
          if (name == fname) {
            if (!eat('(')) fail("expected '(' after " + name);
            Ptr arg = expr().node_;
            if (!eat(')')) fail("expected ')'");
            return make(op, arg);
          }
        }
        for (std::size_t i = 0; i < vars.size(); ++i) {
          if (vars[i] == name) {
            auto n = std::make_shared<Node>();
            n->op = Op::variable;
            n->index = i;
            return n;
          }
        }
        pos = start;
        fail("unknown name '" + name + "'");
      }
      fail("unexpected '" + std::string(1, c) + "'");
    }
  };

  Ptr node_;
  std::string source_;
};

}  // namespace subgeom
