#include "qprobe/expr.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace qprobe {

IntExprPtr IntExpr::lit(long long v) {
  auto e = std::make_shared<IntExpr>();
  e->op = Op::Literal;
  e->literal = v;
  return e;
}

IntExprPtr IntExpr::param(std::string name) {
  auto e = std::make_shared<IntExpr>();
  e->op = Op::Param;
  e->name = std::move(name);
  return e;
}

IntExprPtr IntExpr::binary(Op op, IntExprPtr l, IntExprPtr r) {
  auto e = std::make_shared<IntExpr>();
  e->op = op;
  e->lhs = std::move(l);
  e->rhs = std::move(r);
  return e;
}

IntExprPtr IntExpr::unary(Op op, IntExprPtr x) {
  auto e = std::make_shared<IntExpr>();
  e->op = op;
  e->lhs = std::move(x);
  return e;
}

bool IntExpr::is_comparison(Op op) {
  switch (op) {
    case Op::Lt: case Op::Le: case Op::Eq:
    case Op::Ne: case Op::Gt: case Op::Ge:
      return true;
    default:
      return false;
  }
}

IntExpr::Op IntExpr::flipped_comparison(Op op) {
  switch (op) {
    case Op::Lt: return Op::Le;
    case Op::Le: return Op::Lt;
    case Op::Eq: return Op::Ne;
    case Op::Ne: return Op::Eq;
    case Op::Gt: return Op::Ge;
    case Op::Ge: return Op::Gt;
    default: throw Error("not a comparison operator");
  }
}

long long eval_int(const IntExpr& e, const Bindings& env) {
  using Op = IntExpr::Op;
  switch (e.op) {
    case Op::Literal:
      return e.literal;
    case Op::Param: {
      auto it = env.find(e.name);
      if (it == env.end()) throw RunError("unbound name: " + e.name);
      return it->second;
    }
    case Op::Not:
      return eval_int(*e.lhs, env) == 0 ? 1 : 0;
    case Op::Neg:
      return -eval_int(*e.lhs, env);
    default:
      break;
  }
  const long long a = eval_int(*e.lhs, env);
  // && and || short-circuit.
  if (e.op == Op::And) return (a != 0 && eval_int(*e.rhs, env) != 0) ? 1 : 0;
  if (e.op == Op::Or) return (a != 0 || eval_int(*e.rhs, env) != 0) ? 1 : 0;
  const long long b = eval_int(*e.rhs, env);
  switch (e.op) {
    case Op::Add: return a + b;
    case Op::Sub: return a - b;
    case Op::Mul: return a * b;
    case Op::Div:
      if (b == 0) throw RunError("division by zero");
      return a / b;
    case Op::Mod:
      if (b == 0) throw RunError("modulo by zero");
      return a % b;
    case Op::Lt: return a < b;
    case Op::Le: return a <= b;
    case Op::Eq: return a == b;
    case Op::Ne: return a != b;
    case Op::Gt: return a > b;
    case Op::Ge: return a >= b;
    default:
      throw Error("bad int expression node");
  }
}

namespace {

const char* op_token(IntExpr::Op op) {
  using Op = IntExpr::Op;
  switch (op) {
    case Op::Add: return "+";
    case Op::Sub: return "-";
    case Op::Mul: return "*";
    case Op::Div: return "/";
    case Op::Mod: return "%";
    case Op::Lt: return "<";
    case Op::Le: return "<=";
    case Op::Eq: return "==";
    case Op::Ne: return "!=";
    case Op::Gt: return ">";
    case Op::Ge: return ">=";
    case Op::And: return "&&";
    case Op::Or: return "||";
    default: return "?";
  }
}

}  // namespace

std::string to_text(const IntExpr& e) {
  using Op = IntExpr::Op;
  switch (e.op) {
    case Op::Literal:
      return std::to_string(e.literal);
    case Op::Param:
      return e.name;
    case Op::Not:
      return "!(" + to_text(*e.lhs) + ")";
    case Op::Neg:
      return "-(" + to_text(*e.lhs) + ")";
    default:
      return "(" + to_text(*e.lhs) + " " + op_token(e.op) + " " +
             to_text(*e.rhs) + ")";
  }
}

AngleExprPtr AngleExpr::lit(double v) {
  auto e = std::make_shared<AngleExpr>();
  e->op = Op::Literal;
  e->literal = v;
  return e;
}

AngleExprPtr AngleExpr::pi() {
  auto e = std::make_shared<AngleExpr>();
  e->op = Op::Pi;
  return e;
}

AngleExprPtr AngleExpr::param(std::string name) {
  auto e = std::make_shared<AngleExpr>();
  e->op = Op::Param;
  e->name = std::move(name);
  return e;
}

AngleExprPtr AngleExpr::binary(Op op, AngleExprPtr l, AngleExprPtr r) {
  auto e = std::make_shared<AngleExpr>();
  e->op = op;
  e->lhs = std::move(l);
  e->rhs = std::move(r);
  return e;
}

AngleExprPtr AngleExpr::neg(AngleExprPtr x) {
  auto e = std::make_shared<AngleExpr>();
  e->op = Op::Neg;
  e->lhs = std::move(x);
  return e;
}

double eval_angle(const AngleExpr& e, const Bindings& env) {
  using Op = AngleExpr::Op;
  switch (e.op) {
    case Op::Literal:
      return e.literal;
    case Op::Pi:
      return std::numbers::pi;
    case Op::Param: {
      auto it = env.find(e.name);
      if (it == env.end()) throw RunError("unbound name: " + e.name);
      return static_cast<double>(it->second);
    }
    case Op::Neg:
      return -eval_angle(*e.lhs, env);
    default:
      break;
  }
  const double a = eval_angle(*e.lhs, env);
  const double b = eval_angle(*e.rhs, env);
  switch (e.op) {
    case Op::Add: return a + b;
    case Op::Sub: return a - b;
    case Op::Mul: return a * b;
    case Op::Div:
      if (b == 0.0) throw RunError("division by zero in angle");
      return a / b;
    case Op::Pow:
      return std::pow(a, b);
    default:
      throw Error("bad angle expression node");
  }
}

std::string to_text(const AngleExpr& e) {
  using Op = AngleExpr::Op;
  switch (e.op) {
    case Op::Literal: {
      std::ostringstream os;
      os << e.literal;
      return os.str();
    }
    case Op::Pi:
      return "pi";
    case Op::Param:
      return e.name;
    case Op::Neg:
      return "-(" + to_text(*e.lhs) + ")";
    case Op::Add:
      return "(" + to_text(*e.lhs) + " + " + to_text(*e.rhs) + ")";
    case Op::Sub:
      return "(" + to_text(*e.lhs) + " - " + to_text(*e.rhs) + ")";
    case Op::Mul:
      return "(" + to_text(*e.lhs) + " * " + to_text(*e.rhs) + ")";
    case Op::Div:
      return "(" + to_text(*e.lhs) + " / " + to_text(*e.rhs) + ")";
    case Op::Pow:
      return "(" + to_text(*e.lhs) + " ^ " + to_text(*e.rhs) + ")";
  }
  return "?";
}

}  // namespace qprobe
