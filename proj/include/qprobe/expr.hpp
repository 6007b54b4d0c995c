#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>

#include "qprobe/common.hpp"

namespace qprobe {

using Bindings = std::map<std::string, long long>;

// Integer expression tree. Comparisons and boolean operators evaluate to
// 0/1. Division and modulo are integer ops; dividing by zero raises a
// RunError. Nodes are immutable and shared; rewrites build new trees.
struct IntExpr;
using IntExprPtr = std::shared_ptr<const IntExpr>;

struct IntExpr {
  enum class Op {
    Literal, Param,
    Add, Sub, Mul, Div, Mod,
    Lt, Le, Eq, Ne, Gt, Ge,
    And, Or,
    Not, Neg,
  };

  Op op = Op::Literal;
  long long literal = 0;
  std::string name;  // Param
  IntExprPtr lhs, rhs;

  static IntExprPtr lit(long long v);
  static IntExprPtr param(std::string name);
  static IntExprPtr binary(Op op, IntExprPtr l, IntExprPtr r);
  static IntExprPtr unary(Op op, IntExprPtr x);

  static bool is_comparison(Op op);
  static Op flipped_comparison(Op op);
};

long long eval_int(const IntExpr& e, const Bindings& env);
std::string to_text(const IntExpr& e);

// Real-valued expression for gate angles: numeric literals, pi, integer
// parameters, + - * /, integer powers via ^, unary minus.
struct AngleExpr;
using AngleExprPtr = std::shared_ptr<const AngleExpr>;

struct AngleExpr {
  enum class Op { Literal, Pi, Param, Add, Sub, Mul, Div, Pow, Neg };

  Op op = Op::Literal;
  double literal = 0.0;
  std::string name;
  AngleExprPtr lhs, rhs;

  static AngleExprPtr lit(double v);
  static AngleExprPtr pi();
  static AngleExprPtr param(std::string name);
  static AngleExprPtr binary(Op op, AngleExprPtr l, AngleExprPtr r);
  static AngleExprPtr neg(AngleExprPtr x);
};

double eval_angle(const AngleExpr& e, const Bindings& env);
std::string to_text(const AngleExpr& e);

}  // namespace qprobe
