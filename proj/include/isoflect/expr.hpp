#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "isoflect/error.hpp"

namespace isoflect {

/// Complex-analytic expression tree in one variable `w`.
///
/// Nodes are immutable and shared; copying an Expr copies a pointer. Log and
/// non-integer powers use the principal branch. The conj/re/im/abs/arg nodes
/// are accepted by the parser so that non-analytic input can be detected,
/// but they make `is_analytic()` false and cannot be differentiated.
class Expr {
 public:
  enum class Kind {
    Constant,
    Variable,
    Add,
    Sub,
    Mul,
    Div,
    Neg,
    Pow,  // base ^ (num/den), den > 0, reduced
    Exp,
    Log,
    Conj,
    Re,
    Im,
    Abs,
    Arg,
  };

  Expr();  // constant 0

  static Expr constant(Complex value);
  static Expr variable();
  static Expr add(Expr a, Expr b);
  static Expr sub(Expr a, Expr b);
  static Expr mul(Expr a, Expr b);
  static Expr div(Expr a, Expr b);
  static Expr neg(Expr a);
  static Expr pow(Expr base, std::int64_t num, std::int64_t den = 1);
  static Expr unary(Kind kind, Expr arg);

  Kind kind() const;
  Complex value() const;  // Constant only
  std::int64_t exp_num() const;  // Pow only
  std::int64_t exp_den() const;
  std::size_t arity() const;
  const Expr& child(std::size_t i) const;

  bool is_constant() const { return kind() == Kind::Constant; }
  bool is_analytic() const;
  std::size_t hash() const;

  Complex operator()(Complex w) const { return eval(w); }
  Complex eval(Complex w) const;

  friend bool operator==(const Expr& a, const Expr& b);

 private:
  friend struct ExprAccess;
  struct Node;
  explicit Expr(std::shared_ptr<const Node> node);
  std::shared_ptr<const Node> node_;
};

/// Parses infix text. Grammar: see docs/grammar.md. Constant subtrees are
/// folded, so "2*i" yields a single constant node.
Expr parse(std::string_view text);

/// Canonical fully parenthesised form; parse(print(e)) == e.
std::string print(const Expr& e);

/// d/dw of an analytic expression. Throws Error on non-analytic nodes.
Expr differentiate(const Expr& e);

}  // namespace isoflect
