#include "qprobe/variants.hpp"

#include <algorithm>
#include <set>

namespace qprobe {

namespace {

std::string gensym(const std::string& base, const std::set<std::string>& taken) {
  if (!taken.count(base)) return base;
  for (int i = 2;; ++i) {
    std::string cand = base + std::to_string(i);
    if (!taken.count(cand)) return cand;
  }
}

std::set<std::string> names_in(const SubroutineDef& def) {
  std::set<std::string> s;
  for (const Param& p : def.params) s.insert(p.name);
  return s;
}

AngleExprPtr negate_angle(const AngleExprPtr& a) {
  if (a->op == AngleExpr::Op::Neg) return a->lhs;
  return AngleExpr::neg(a);
}

const Param* sub_param(const SubroutineDef& owner, const std::string& name) {
  const Param* p = owner.find_param(name);
  return (p && p->kind == ParamKind::Subroutine) ? p : nullptr;
}

Block invert_block(const Block& body, const SubroutineDef& owner);

StmtPtr invert_stmt(const StmtPtr& sp, const SubroutineDef& owner) {
  Statement st;
  st.line = sp->line;
  if (const auto* g = std::get_if<GateApp>(&sp->node)) {
    GateApp out = *g;
    if (out.custom) {
      out.custom = std::make_shared<Gate>(Gate::from_matrix(
          out.custom->name, out.custom->arity, out.custom->matrix.adjoint()));
    } else if (out.gate == "R1") {
      out.angle = negate_angle(out.angle);
    } else {
      out.gate = Gate::adjoint_name(out.gate);
    }
    st.node = std::move(out);
  } else if (const auto* c = std::get_if<CallStmt>(&sp->node)) {
    CallStmt out = *c;
    out.tag.inverse = !out.tag.inverse;
    if (out.tag.inverse) {
      if (const Param* slot = sub_param(owner, out.callee);
          slot && !slot->slot_adjoint)
        throw Error("derive_inverse: slot " + out.callee +
                    " is not declared adj");
    }
    st.node = std::move(out);
  } else if (const auto* f = std::get_if<ForLoop>(&sp->node)) {
    ForLoop out = *f;
    out.descending = !out.descending;
    out.body = invert_block(f->body, owner);
    st.node = std::move(out);
  } else if (const auto* i = std::get_if<IfStmt>(&sp->node)) {
    IfStmt out = *i;
    out.then_body = invert_block(i->then_body, owner);
    out.else_body = invert_block(i->else_body, owner);
    st.node = std::move(out);
  } else {
    throw Error("derive_inverse: statement cannot be inverted");
  }
  return make_stmt(std::move(st));
}

Block invert_block(const Block& body, const SubroutineDef& owner) {
  Block assigns, rest;
  std::set<std::string> assigned;
  for (const StmtPtr& s : body) {
    if (const auto* a = std::get_if<AssignStmt>(&s->node)) {
      if (!assigned.insert(a->name).second)
        throw Error("derive_inverse: " + a->name +
                    " is assigned twice in one block");
      assigns.push_back(s);
    } else {
      rest.push_back(invert_stmt(s, owner));
    }
  }
  std::reverse(rest.begin(), rest.end());
  Block out = std::move(assigns);
  out.insert(out.end(), rest.begin(), rest.end());
  return out;
}

Block controlify_block(const Block& body, const SubroutineDef& owner,
                       const std::string& ctl);

StmtPtr controlify_stmt(const StmtPtr& sp, const SubroutineDef& owner,
                        const std::string& ctl) {
  Statement st;
  st.line = sp->line;
  if (const auto* g = std::get_if<GateApp>(&sp->node)) {
    GateApp out = *g;
    out.controls.insert(out.controls.begin(), QubitRef::all(ctl));
    st.node = std::move(out);
  } else if (const auto* c = std::get_if<CallStmt>(&sp->node)) {
    CallStmt out = *c;
    if (const Param* slot = sub_param(owner, out.callee);
        slot && !slot->slot_controlled)
      throw Error("derive_controlled: slot " + out.callee +
                  " is not declared ctl");
    out.tag.controlled += 1;
    out.qubit_args.insert(out.qubit_args.begin(), QubitRef::all(ctl));
    st.node = std::move(out);
  } else if (const auto* f = std::get_if<ForLoop>(&sp->node)) {
    ForLoop out = *f;
    out.body = controlify_block(f->body, owner, ctl);
    st.node = std::move(out);
  } else if (const auto* i = std::get_if<IfStmt>(&sp->node)) {
    IfStmt out = *i;
    out.then_body = controlify_block(i->then_body, owner, ctl);
    out.else_body = controlify_block(i->else_body, owner, ctl);
    st.node = std::move(out);
  } else if (std::holds_alternative<AssignStmt>(sp->node)) {
    return sp;  // classical statements are unaffected by controls
  } else {
    throw Error("derive_controlled: statement cannot be controlled");
  }
  return make_stmt(std::move(st));
}

Block controlify_block(const Block& body, const SubroutineDef& owner,
                       const std::string& ctl) {
  Block out;
  for (const StmtPtr& s : body) out.push_back(controlify_stmt(s, owner, ctl));
  return out;
}

SubroutineDef derive_controlled_impl(const SubroutineDef& sub,
                                     std::optional<int> num_controls) {
  if (sub.is_oracle)
    throw Error("derive_controlled: " + sub.name +
                " is an oracle declaration");
  if (!sub.supports_controlled())
    throw Error("derive_controlled: " + sub.name +
                " contains measurement or reset");
  if (num_controls && *num_controls < 1)
    throw Error("derive_controlled: need at least one control qubit");

  SubroutineDef out;
  out.name = sub.name + "__ctl";
  const std::string ctl = gensym("__ctl", names_in(sub));
  Param cp;
  cp.kind = ParamKind::QubitArray;
  cp.name = ctl;
  if (num_controls) cp.length = IntExpr::lit(*num_controls);
  out.params.push_back(std::move(cp));
  out.params.insert(out.params.end(), sub.params.begin(), sub.params.end());
  out.body = controlify_block(sub.body, sub, ctl);
  return out;
}

}  // namespace

SubroutineDef derive_inverse(const SubroutineDef& sub) {
  if (sub.is_oracle)
    throw Error("derive_inverse: " + sub.name + " is an oracle declaration");
  if (!sub.supports_inverse())
    throw Error("derive_inverse: " + sub.name +
                " contains measurement or reset");
  SubroutineDef out;
  out.name = sub.name + "__inv";
  out.params = sub.params;
  out.body = invert_block(sub.body, sub);
  return out;
}

SubroutineDef derive_controlled(const SubroutineDef& sub, int num_controls) {
  return derive_controlled_impl(sub, num_controls);
}

SubroutineDef derive_controlled_dynamic(const SubroutineDef& sub) {
  return derive_controlled_impl(sub, std::nullopt);
}

SubroutineDef derive_power(const SubroutineDef& sub,
                           const SubroutineDef& inverse) {
  if (sub.is_oracle)
    throw Error("derive_power: " + sub.name + " is an oracle declaration");
  if (!sub.supports_inverse())
    throw Error("derive_power: " + sub.name + " contains measurement or reset");
  if (inverse.params.size() != sub.params.size())
    throw Error("derive_power: inverse signature mismatch for " + sub.name);
  for (std::size_t i = 0; i < sub.params.size(); ++i)
    if (inverse.params[i].kind != sub.params[i].kind)
      throw Error("derive_power: inverse signature mismatch for " + sub.name);

  const std::set<std::string> taken = names_in(sub);
  const std::string power = gensym("power", taken);
  const std::string loop_var = gensym("_k", taken);

  auto passthrough = [&](VariantTag tag) {
    CallStmt c;
    c.callee = sub.name;
    c.tag = tag;
    for (const Param& p : sub.params) {
      if (p.kind == ParamKind::QubitArray)
        c.qubit_args.push_back(QubitRef::all(p.name));
      else
        c.args.push_back(IntExpr::param(p.name));
    }
    Statement st;
    st.node = std::move(c);
    return make_stmt(std::move(st));
  };

  auto repeat = [&](IntExprPtr count, VariantTag tag) {
    ForLoop f;
    f.index = loop_var;
    f.lo = IntExpr::lit(1);
    f.hi = std::move(count);
    f.body.push_back(passthrough(tag));
    Statement st;
    st.node = std::move(f);
    return make_stmt(std::move(st));
  };

  IfStmt branch;
  branch.cond = IntExpr::binary(IntExpr::Op::Gt, IntExpr::param(power),
                                IntExpr::lit(0));
  branch.then_body.push_back(repeat(IntExpr::param(power), VariantTag{}));
  VariantTag inv_tag;
  inv_tag.inverse = true;
  branch.else_body.push_back(
      repeat(IntExpr::unary(IntExpr::Op::Neg, IntExpr::param(power)), inv_tag));

  SubroutineDef out;
  out.name = sub.name + "__pow";
  Param pp;
  pp.kind = ParamKind::Int;
  pp.name = power;
  out.params.push_back(std::move(pp));
  out.params.insert(out.params.end(), sub.params.begin(), sub.params.end());
  Statement st;
  st.node = std::move(branch);
  out.body.push_back(make_stmt(std::move(st)));
  return out;
}

}  // namespace qprobe
