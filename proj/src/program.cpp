#include "qprobe/program.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace qprobe {

QubitRef QubitRef::all(std::string array) {
  QubitRef r;
  r.kind = Kind::All;
  r.array = std::move(array);
  return r;
}

QubitRef QubitRef::single(std::string array, IntExprPtr index) {
  QubitRef r;
  r.kind = Kind::Single;
  r.array = std::move(array);
  r.lo = std::move(index);
  return r;
}

QubitRef QubitRef::range(std::string array, IntExprPtr lo, IntExprPtr hi) {
  QubitRef r;
  r.kind = Kind::Range;
  r.array = std::move(array);
  r.lo = std::move(lo);
  r.hi = std::move(hi);
  return r;
}

StmtPtr make_stmt(Statement s) {
  return std::make_shared<Statement>(std::move(s));
}

namespace {

bool block_is_unitary(const Block& body) {
  for (const StmtPtr& s : body) {
    if (std::holds_alternative<MeasureStmt>(s->node)) return false;
    if (std::holds_alternative<ResetStmt>(s->node)) return false;
    if (const auto* f = std::get_if<ForLoop>(&s->node)) {
      if (!block_is_unitary(f->body)) return false;
    } else if (const auto* i = std::get_if<IfStmt>(&s->node)) {
      if (!block_is_unitary(i->then_body)) return false;
      if (!block_is_unitary(i->else_body)) return false;
    }
  }
  return true;
}

}  // namespace

bool SubroutineDef::supports_inverse() const {
  if (is_oracle) return oracle_adjoint;
  return block_is_unitary(body);
}

bool SubroutineDef::supports_controlled() const {
  if (is_oracle) return oracle_controlled;
  return block_is_unitary(body);
}

std::vector<const Param*> SubroutineDef::qubit_params() const {
  std::vector<const Param*> out;
  for (const Param& p : params)
    if (p.kind == ParamKind::QubitArray) out.push_back(&p);
  return out;
}

const Param* SubroutineDef::find_param(const std::string& pname) const {
  for (const Param& p : params)
    if (p.name == pname) return &p;
  return nullptr;
}

const SubroutineDef& Program::sub(const std::string& name) const {
  auto it = subs.find(name);
  if (it == subs.end()) throw Error("unknown subroutine: " + name);
  return it->second;
}

namespace {

struct Validator {
  const Program& program;
  const SubroutineDef* current = nullptr;

  [[noreturn]] void fail(const std::string& msg, int line) const {
    std::ostringstream os;
    os << "in " << current->name;
    if (line > 0) os << " (line " << line << ")";
    os << ": " << msg;
    throw Error(os.str());
  }

  void check_scalar_expr(const IntExpr& e, const std::set<std::string>& scalars,
                         int line) const {
    if (e.op == IntExpr::Op::Param) {
      if (!scalars.count(e.name)) fail("unbound name: " + e.name, line);
      return;
    }
    if (e.lhs) check_scalar_expr(*e.lhs, scalars, line);
    if (e.rhs) check_scalar_expr(*e.rhs, scalars, line);
  }

  void check_angle_expr(const AngleExpr& e, const std::set<std::string>& scalars,
                        int line) const {
    if (e.op == AngleExpr::Op::Param) {
      if (!scalars.count(e.name)) fail("unbound name: " + e.name, line);
      return;
    }
    if (e.lhs) check_angle_expr(*e.lhs, scalars, line);
    if (e.rhs) check_angle_expr(*e.rhs, scalars, line);
  }

  void check_qref(const QubitRef& r, const std::set<std::string>& scalars,
                  const std::set<std::string>& arrays, int line) const {
    if (!arrays.count(r.array))
      fail("not a qubit array: " + r.array, line);
    if (r.lo) check_scalar_expr(*r.lo, scalars, line);
    if (r.hi) check_scalar_expr(*r.hi, scalars, line);
  }

  // Resolves the callee to its definition if statically known. Subroutine
  // parameters of the enclosing subroutine are opaque.
  const SubroutineDef* resolve_callee(const std::string& name) const {
    const Param* p = current->find_param(name);
    if (p) {
      if (p->kind != ParamKind::Subroutine)
        fail("call target " + name + " is not subroutine-typed", 0);
      return nullptr;
    }
    auto it = program.subs.find(name);
    if (it != program.subs.end()) return &it->second;
    fail("unknown subroutine: " + name, 0);
  }

  void check_call(const CallStmt& c, const std::set<std::string>& scalars,
                  const std::set<std::string>& arrays, int line) const {
    const SubroutineDef* callee = nullptr;
    const Param* slot = current->find_param(c.callee);
    if (slot) {
      if (slot->kind != ParamKind::Subroutine)
        fail("call target " + c.callee + " is not subroutine-typed", line);
    } else {
      auto it = program.subs.find(c.callee);
      if (it == program.subs.end())
        fail("unknown subroutine: " + c.callee, line);
      callee = &it->second;
    }
    for (const auto& a : c.args) check_scalar_or_sub(*a, scalars, line);
    for (const auto& q : c.qubit_args) check_qref(q, scalars, arrays, line);
    if (!callee) return;  // slot: signature unknown until bound

    std::size_t want_scalar = 0, want_qubits = 0;
    for (const Param& p : callee->params) {
      if (p.kind == ParamKind::QubitArray)
        ++want_qubits;
      else
        ++want_scalar;
    }
    if (c.args.size() != want_scalar)
      fail("call to " + c.callee + " passes " + std::to_string(c.args.size()) +
               " scalar argument(s), expected " + std::to_string(want_scalar),
           line);
    if (c.qubit_args.size() != want_qubits + std::size_t(c.tag.controlled))
      fail("call to " + c.callee + " passes " +
               std::to_string(c.qubit_args.size()) +
               " qubit argument(s), expected " +
               std::to_string(want_qubits + std::size_t(c.tag.controlled)),
           line);
    // Subroutine-typed positions must receive bare names.
    std::size_t ai = 0;
    for (const Param& p : callee->params) {
      if (p.kind == ParamKind::QubitArray) continue;
      const IntExpr& a = *c.args[ai++];
      if (p.kind == ParamKind::Subroutine && a.op != IntExpr::Op::Param)
        fail("argument for slot " + p.name + " of " + c.callee +
                 " must be a subroutine name",
             line);
    }
  }

  // A bare name may be a subroutine reference when it feeds a slot; accept
  // names that are either scalars or subroutine-typed params/defs.
  void check_scalar_or_sub(const IntExpr& e, const std::set<std::string>& scalars,
                           int line) const {
    if (e.op == IntExpr::Op::Param) {
      if (scalars.count(e.name)) return;
      const Param* p = current->find_param(e.name);
      if (p && p->kind == ParamKind::Subroutine) return;
      if (program.subs.count(e.name)) return;
      fail("unbound name: " + e.name, line);
    }
    if (e.lhs) check_scalar_or_sub(*e.lhs, scalars, line);
    if (e.rhs) check_scalar_or_sub(*e.rhs, scalars, line);
  }

  void check_block(const Block& body, std::set<std::string>& scalars,
                   const std::set<std::string>& arrays) const {
    for (const StmtPtr& sp : body) {
      const int line = sp->line;
      if (const auto* g = std::get_if<GateApp>(&sp->node)) {
        if (!g->custom && !Gate::is_builtin(g->gate))
          fail("unknown gate: " + g->gate, line);
        if (g->gate == "R1" && !g->angle)
          fail("R1 requires an angle", line);
        if (g->gate != "R1" && !g->custom && g->angle)
          fail("gate " + g->gate + " takes no angle", line);
        if (g->angle) check_angle_expr(*g->angle, scalars, line);
        for (const auto& r : g->controls) check_qref(r, scalars, arrays, line);
        for (const auto& r : g->targets) check_qref(r, scalars, arrays, line);
        const int arity = g->custom ? g->custom->arity
                          : g->gate == "R1"
                              ? 1
                              : Gate::builtin(g->gate).arity;
        int singles = 0;
        for (const auto& r : g->targets)
          singles += (r.kind == QubitRef::Kind::Single) ? 1 : 0;
        // Multi-target sugar (e.g. `H qs;`) is only allowed for 1-qubit
        // gates; multi-qubit gates need exactly `arity` single refs.
        if (arity > 1 && (singles != arity ||
                          g->targets.size() != std::size_t(arity)))
          fail("gate " + g->gate + " needs exactly " + std::to_string(arity) +
                   " single-qubit operands",
               line);
        if (g->targets.empty()) fail("gate without targets", line);
      } else if (const auto* c = std::get_if<CallStmt>(&sp->node)) {
        check_call(*c, scalars, arrays, line);
      } else if (const auto* f = std::get_if<ForLoop>(&sp->node)) {
        check_scalar_expr(*f->lo, scalars, line);
        check_scalar_expr(*f->hi, scalars, line);
        const bool had = scalars.count(f->index) > 0;
        scalars.insert(f->index);
        check_block(f->body, scalars, arrays);
        if (!had) scalars.erase(f->index);
      } else if (const auto* i = std::get_if<IfStmt>(&sp->node)) {
        check_scalar_expr(*i->cond, scalars, line);
        std::set<std::string> then_scope = scalars;
        check_block(i->then_body, then_scope, arrays);
        std::set<std::string> else_scope = scalars;
        check_block(i->else_body, else_scope, arrays);
        // Names assigned in both branches are defined afterwards.
        for (const auto& n : then_scope)
          if (else_scope.count(n)) scalars.insert(n);
      } else if (const auto* m = std::get_if<MeasureStmt>(&sp->node)) {
        for (const auto& r : m->qubits) check_qref(r, scalars, arrays, line);
        scalars.insert(m->result);
      } else if (const auto* r = std::get_if<ResetStmt>(&sp->node)) {
        for (const auto& q : r->qubits) check_qref(q, scalars, arrays, line);
      } else if (const auto* a = std::get_if<AssignStmt>(&sp->node)) {
        check_scalar_expr(*a->value, scalars, line);
        scalars.insert(a->name);
      }
    }
  }

  void check_sub(const SubroutineDef& def) {
    current = &def;
    std::set<std::string> scalars;
    std::set<std::string> arrays;
    std::set<std::string> names;
    for (const Param& p : def.params) {
      if (!names.insert(p.name).second)
        fail("duplicate parameter name: " + p.name, 0);
      if (p.kind == ParamKind::Int) scalars.insert(p.name);
      if (p.kind == ParamKind::QubitArray) arrays.insert(p.name);
    }
    // Array length expressions may reference the int parameters.
    for (const Param& p : def.params)
      if (p.kind == ParamKind::QubitArray && p.length)
        check_scalar_expr(*p.length, scalars, 0);
    std::set<std::string> scope = scalars;
    check_block(def.body, scope, arrays);
  }
};

void collect_callees(const Block& body, std::set<std::string>& out) {
  for (const StmtPtr& s : body) {
    if (const auto* c = std::get_if<CallStmt>(&s->node)) {
      out.insert(c->callee);
      for (const auto& a : c->args)
        if (a->op == IntExpr::Op::Param) out.insert(a->name);
    } else if (const auto* f = std::get_if<ForLoop>(&s->node)) {
      collect_callees(f->body, out);
    } else if (const auto* i = std::get_if<IfStmt>(&s->node)) {
      collect_callees(i->then_body, out);
      collect_callees(i->else_body, out);
    }
  }
}

}  // namespace

void validate(const Program& program) {
  if (!program.entry.empty() && !program.has(program.entry))
    throw Error("entry subroutine not defined: " + program.entry);

  Validator v{program};
  for (const auto& [name, def] : program.subs) {
    if (def.is_oracle) continue;
    v.check_sub(def);
  }

  // Cycle check over direct calls between program subs.
  auto graph = dependency_graph(program);
  integration_order(graph);
}

std::map<std::string, std::set<std::string>> dependency_graph(
    const Program& program) {
  std::map<std::string, std::set<std::string>> g;
  for (const auto& [name, def] : program.subs) {
    g[name];
    std::set<std::string> mentioned;
    collect_callees(def.body, mentioned);
    for (const auto& callee : mentioned) {
      if (callee == name)
        throw Error("recursion detected: " + name + " calls itself");
      if (program.has(callee)) g[name].insert(callee);
    }
  }
  return g;
}

std::vector<std::string> integration_order(
    const std::map<std::string, std::set<std::string>>& graph) {
  // Kahn's algorithm, repeatedly emitting the lexicographically smallest
  // node whose callees are all emitted.
  std::set<std::string> done;
  std::vector<std::string> order;
  while (done.size() < graph.size()) {
    std::string next;
    for (const auto& [node, callees] : graph) {
      if (done.count(node)) continue;
      bool ready = true;
      for (const auto& c : callees)
        if (graph.count(c) && !done.count(c)) {
          ready = false;
          break;
        }
      if (ready) {
        next = node;
        break;
      }
    }
    if (next.empty()) throw Error("cycle detected in dependency graph");
    done.insert(next);
    order.push_back(next);
  }
  return order;
}

Program substitute(const Program& program, const std::string& name,
                   const SubroutineDef& replacement) {
  auto it = program.subs.find(name);
  if (it == program.subs.end())
    throw Error("substitute: unknown subroutine " + name);
  const SubroutineDef& original = it->second;
  // An oracle slot with an empty signature accepts anything; otherwise the
  // parameter kinds must line up.
  if (!original.params.empty() || !original.is_oracle) {
    if (original.params.size() != replacement.params.size())
      throw Error("substitute: signature mismatch for " + name);
    for (std::size_t i = 0; i < original.params.size(); ++i)
      if (original.params[i].kind != replacement.params[i].kind)
        throw Error("substitute: signature mismatch for " + name +
                    " at parameter " + std::to_string(i));
  }
  Program out = program;
  SubroutineDef bound = replacement;
  bound.name = name;
  out.subs[name] = std::move(bound);
  validate(out);
  return out;
}

// ---- printing ----

std::string to_text(const QubitRef& ref) {
  switch (ref.kind) {
    case QubitRef::Kind::All:
      return ref.array;
    case QubitRef::Kind::Single:
      return ref.array + "[" + to_text(*ref.lo) + "]";
    case QubitRef::Kind::Range:
      return ref.array + "[" + to_text(*ref.lo) + ".." + to_text(*ref.hi) + "]";
  }
  return "?";
}

namespace {

std::string refs_text(const std::vector<QubitRef>& refs) {
  std::string s;
  for (std::size_t i = 0; i < refs.size(); ++i) {
    if (i) s += ", ";
    s += to_text(refs[i]);
  }
  return s;
}

void print_block(const Block& body, int indent, std::string& out) {
  for (const StmtPtr& s : body) out += to_text(*s, indent);
}

}  // namespace

std::string to_text(const Statement& stmt, int indent) {
  const std::string pad(std::size_t(indent) * 2, ' ');
  std::string out;
  if (const auto* g = std::get_if<GateApp>(&stmt.node)) {
    out += pad;
    if (!g->controls.empty()) out += "ctrl(" + refs_text(g->controls) + ") ";
    out += g->custom ? "@" + g->gate : g->gate;
    if (g->angle) out += "(" + to_text(*g->angle) + ")";
    out += " " + refs_text(g->targets) + ";\n";
  } else if (const auto* c = std::get_if<CallStmt>(&stmt.node)) {
    out += pad + "call " + c->callee;
    if (!c->tag.is_base()) {
      out += "[";
      bool first = true;
      if (c->tag.inverse) {
        out += "inv";
        first = false;
      }
      for (int i = 0; i < c->tag.controlled; ++i) {
        if (!first) out += " ";
        out += "ctl";
        first = false;
      }
      out += "]";
    }
    out += "(";
    for (std::size_t i = 0; i < c->args.size(); ++i) {
      if (i) out += ", ";
      out += to_text(*c->args[i]);
    }
    out += ")(" + refs_text(c->qubit_args) + ");\n";
  } else if (const auto* f = std::get_if<ForLoop>(&stmt.node)) {
    out += pad + "for " + f->index + " in ";
    if (f->descending) out += "rev ";
    out += to_text(*f->lo) + ".." + to_text(*f->hi) + " {\n";
    print_block(f->body, indent + 1, out);
    out += pad + "}\n";
  } else if (const auto* i = std::get_if<IfStmt>(&stmt.node)) {
    out += pad + "if (" + to_text(*i->cond) + ") {\n";
    print_block(i->then_body, indent + 1, out);
    out += pad + "}";
    if (!i->else_body.empty()) {
      out += " else {\n";
      print_block(i->else_body, indent + 1, out);
      out += pad + "}";
    }
    out += "\n";
  } else if (const auto* m = std::get_if<MeasureStmt>(&stmt.node)) {
    out += pad + m->result + " = measure " + refs_text(m->qubits) + ";\n";
  } else if (const auto* r = std::get_if<ResetStmt>(&stmt.node)) {
    out += pad + "reset " + refs_text(r->qubits) + ";\n";
  } else if (const auto* a = std::get_if<AssignStmt>(&stmt.node)) {
    out += pad + a->name + " = " + to_text(*a->value) + ";\n";
  }
  return out;
}

std::string to_text(const SubroutineDef& def) {
  std::string out = def.is_oracle ? "oracle " : "sub ";
  out += def.name + "(";
  for (std::size_t i = 0; i < def.params.size(); ++i) {
    if (i) out += ", ";
    const Param& p = def.params[i];
    switch (p.kind) {
      case ParamKind::Int:
        out += "int " + p.name;
        break;
      case ParamKind::QubitArray:
        out += "qubits " + p.name + "[" + (p.length ? to_text(*p.length) : "") +
               "]";
        break;
      case ParamKind::Subroutine:
        out += "sub " + p.name;
        if (p.slot_adjoint) out += " adj";
        if (p.slot_controlled) out += " ctl";
        break;
    }
  }
  out += ")";
  if (def.is_oracle) {
    if (def.oracle_adjoint) out += " adj";
    if (def.oracle_controlled) out += " ctl";
    out += ";\n";
    return out;
  }
  out += " {\n";
  print_block(def.body, 1, out);
  out += "}\n";
  return out;
}

std::string to_text(const Program& program) {
  std::string out;
  for (const auto& [name, def] : program.subs) {
    out += to_text(def);
    out += "\n";
  }
  return out;
}

}  // namespace qprobe
