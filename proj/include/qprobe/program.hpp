#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "qprobe/expr.hpp"
#include "qprobe/gate.hpp"

namespace qprobe {

// Reference to qubits of a declared array: the whole array, one element, or
// an inclusive index range (which may be empty at runtime).
struct QubitRef {
  enum class Kind { All, Single, Range };
  Kind kind = Kind::All;
  std::string array;
  IntExprPtr lo, hi;  // Single uses lo only

  static QubitRef all(std::string array);
  static QubitRef single(std::string array, IntExprPtr index);
  static QubitRef range(std::string array, IntExprPtr lo, IntExprPtr hi);
};

// Which derived form of a callee a call statement invokes. Inverse and
// controlled compose; `controlled` counts nested control wrappings, each
// consuming one leading control-array argument.
struct VariantTag {
  bool inverse = false;
  int controlled = 0;
  bool is_base() const { return !inverse && controlled == 0; }
  bool operator==(const VariantTag&) const = default;
};

struct Statement;
using StmtPtr = std::shared_ptr<const Statement>;
using Block = std::vector<StmtPtr>;

struct GateApp {
  std::string gate;  // built-in name; custom gates carry their own matrix
  AngleExprPtr angle;
  std::vector<QubitRef> controls;
  std::vector<QubitRef> targets;
  std::shared_ptr<const Gate> custom;  // API-built programs only
};

struct CallStmt {
  std::string callee;
  VariantTag tag;
  // Classical and subroutine arguments in the callee's parameter order;
  // a subroutine argument is a bare name (a Param node).
  std::vector<IntExprPtr> args;
  std::vector<QubitRef> qubit_args;
};

struct ForLoop {
  std::string index;
  IntExprPtr lo, hi;  // inclusive; empty when hi < lo
  bool descending = false;
  Block body;
};

struct IfStmt {
  IntExprPtr cond;
  Block then_body;
  Block else_body;
};

struct MeasureStmt {
  std::string result;
  std::vector<QubitRef> qubits;
};

struct ResetStmt {
  std::vector<QubitRef> qubits;
};

struct AssignStmt {
  std::string name;
  IntExprPtr value;
};

struct Statement {
  std::variant<GateApp, CallStmt, ForLoop, IfStmt, MeasureStmt, ResetStmt,
               AssignStmt>
      node;
  int line = 0;
};

StmtPtr make_stmt(Statement s);

enum class ParamKind { Int, QubitArray, Subroutine };

struct Param {
  ParamKind kind = ParamKind::Int;
  std::string name;
  IntExprPtr length;  // arrays only; null means any length
  // Declared capabilities of a subroutine-typed slot. A slot may only be
  // invoked through a derived variant if the matching flag is set.
  bool slot_adjoint = false;
  bool slot_controlled = false;
};

struct SubroutineDef {
  std::string name;
  std::vector<Param> params;
  Block body;
  bool is_oracle = false;  // declared `oracle ...;`, body empty
  bool oracle_adjoint = false;
  bool oracle_controlled = false;

  // True iff the body (transitively through loops/branches, not through
  // calls) contains no measurement and no reset.
  bool supports_inverse() const;
  bool supports_controlled() const;

  std::vector<const Param*> qubit_params() const;
  const Param* find_param(const std::string& name) const;
};

struct Program {
  std::map<std::string, SubroutineDef> subs;
  std::string entry;

  const SubroutineDef& sub(const std::string& name) const;
  bool has(const std::string& name) const { return subs.count(name) > 0; }
};

// Static checks: names resolve, call argument lists match signatures, gates
// exist, the call graph is acyclic. Throws Error with context.
void validate(const Program& program);

// Edge A -> B iff A's body calls B (program subs and oracle declarations).
std::map<std::string, std::set<std::string>> dependency_graph(
    const Program& program);

// Topological order with callees first; lexicographic tie-break. Throws on
// cycles.
std::vector<std::string> integration_order(
    const std::map<std::string, std::set<std::string>>& graph);

// Rebinds a definition or oracle slot, keeping its name. Checks the
// replacement's parameter kinds against the original signature.
Program substitute(const Program& program, const std::string& name,
                   const SubroutineDef& replacement);

std::string to_text(const QubitRef& ref);
std::string to_text(const Statement& stmt, int indent = 0);
std::string to_text(const SubroutineDef& def);
std::string to_text(const Program& program);

}  // namespace qprobe
