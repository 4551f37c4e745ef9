#include "scoopw/frontend/program.hpp"

#include <sstream>

namespace scoopw {

std::string to_string(const Value& v) {
  switch (v.kind) {
    case Value::Kind::Void:
      return "Void";
    case Value::Kind::Integer:
      return std::to_string(v.integer);
    case Value::Kind::Boolean:
      return v.as_bool() ? "True" : "False";
    case Value::Kind::Ref:
      return "@" + std::to_string(v.handler) + "." + std::to_string(v.object);
  }
  return "?";
}

Value default_value(const TypeRef& t) {
  switch (t.base) {
    case TypeRef::Base::Integer:
      return Value::of_int(0);
    case TypeRef::Base::Boolean:
      return Value::of_bool(false);
    case TypeRef::Base::Class:
      return Value::void_value();
  }
  return {};
}

std::optional<ClassId> CompiledProgram::find_class(const std::string& name) const {
  for (ClassId i = 0; i < classes.size(); ++i) {
    if (classes[i].name == name) return i;
  }
  return std::nullopt;
}

std::optional<MethodId> CompiledProgram::find_method(ClassId cls, const std::string& name) const {
  for (MethodId m : classes[cls].methods) {
    if (methods[m].name == name) return m;
  }
  return std::nullopt;
}

std::optional<std::uint32_t> CompiledProgram::find_attribute(ClassId cls, const std::string& name) const {
  const auto& attrs = classes[cls].attributes;
  for (std::uint32_t i = 0; i < attrs.size(); ++i) {
    if (attrs[i].name == name) return i;
  }
  return std::nullopt;
}

std::string CompiledProgram::qualified_name(MethodId id) const {
  const MethodInfo& m = methods[id];
  return classes[m.owner].name + "." + m.name;
}

namespace {

std::string expr_text(const CExpr& e) {
  switch (e.op) {
    case CExpr::Op::Const:
      return to_string(e.value);
    case CExpr::Op::Local:
    case CExpr::Op::Attr:
      return e.text;
    case CExpr::Op::Field:
      return expr_text(e.kids[0]) + "." + e.text;
    case CExpr::Op::Unary:
      return std::string("(") + frontend::spelling(e.unary) + " " + expr_text(e.kids[0]) + ")";
    case CExpr::Op::Binary:
      return "(" + expr_text(e.kids[0]) + " " + frontend::spelling(e.binary) + " " + expr_text(e.kids[1]) + ")";
  }
  return "?";
}

std::string place_text(const CompiledProgram& p, const MethodInfo& m, const Place& pl) {
  if (pl.kind == Place::Kind::Local) return m.slots[pl.index].name;
  return p.classes[m.owner].attributes[pl.index].name;
}

std::string call_text(const CompiledProgram& p, const Action& a) {
  std::string s = a.target ? expr_text(*a.target) + "." : "";
  s += p.methods[a.method].name;
  if (!a.args.empty()) {
    s += " (";
    for (std::size_t i = 0; i < a.args.size(); ++i) {
      if (i) s += ", ";
      s += expr_text(a.args[i]);
    }
    s += ")";
  }
  return s;
}

}  // namespace

std::string describe(const CompiledProgram& p, MethodId mid, const Action& a) {
  const MethodInfo& m = p.methods[mid];
  switch (a.kind) {
    case Action::Kind::AssignLocal:
      return "AssignLocal " + place_text(p, m, a.lhs) + " := " + expr_text(a.expr);
    case Action::Kind::CreateObject: {
      std::string s = std::string(a.separate ? "CreateObject separate " : "CreateObject ") + place_text(p, m, a.lhs) +
                      ": " + p.classes[a.cls].name;
      if (a.method != kNoMethod) {
        Action call = a;
        call.target.reset();
        s += "." + call_text(p, call);
      }
      return s;
    }
    case Action::Kind::CommandCall:
      return std::string(a.separate ? "CommandCall separate " : "CommandCall ") + call_text(p, a);
    case Action::Kind::QueryCall:
      return std::string(a.separate ? "QueryCall separate " : "QueryCall ") + place_text(p, m, a.lhs) +
             " := " + call_text(p, a);
    case Action::Kind::EnterBlock: {
      std::string s = "EnterBlock b" + std::to_string(a.block) + " {";
      for (std::size_t i = 0; i < a.block_targets.size(); ++i) {
        if (i) s += ", ";
        s += m.slots[a.block_targets[i]].name;
      }
      return s + "}" + (a.has_wait ? " wait" : "");
    }
    case Action::Kind::ExitBlock:
      return "ExitBlock b" + std::to_string(a.block) + (a.retry ? " retry" : "");
    case Action::Kind::Guard:
      return std::string("Guard ") + (a.polarity ? "" : "not ") + expr_text(a.expr);
    case Action::Kind::Return:
      return "Return";
  }
  return "?";
}

std::string dump_cfg(const CompiledProgram& p, MethodId mid) {
  const MethodInfo& m = p.methods[mid];
  std::ostringstream os;
  os << p.qualified_name(mid) << " states=" << m.cfg.state_count << " initial=" << m.cfg.initial
     << " final=" << m.cfg.final << "\n";
  for (const Edge& e : m.cfg.edges) os << "  " << e.from << " -> " << e.to << "  " << describe(p, mid, e.action) << "\n";
  return os.str();
}

namespace {

void lint_expr(const CompiledProgram& p, const MethodInfo& m, const CExpr& e, const std::string& where,
               std::vector<std::string>& out) {
  switch (e.op) {
    case CExpr::Op::Local:
      if (e.index >= m.slots.size()) out.push_back(where + ": slot out of range");
      break;
    case CExpr::Op::Attr:
      if (e.index >= p.classes[m.owner].attributes.size()) out.push_back(where + ": attribute out of range");
      break;
    case CExpr::Op::Field: {
      auto cls = p.find_class(e.kids[0].type.class_name);
      if (!cls || e.index >= p.classes[*cls].attributes.size()) out.push_back(where + ": field out of range");
      break;
    }
    default:
      break;
  }
  for (const CExpr& k : e.kids) lint_expr(p, m, k, where, out);
}

}  // namespace

std::vector<std::string> lint(const CompiledProgram& p) {
  std::vector<std::string> out;
  for (MethodId mid = 0; mid < p.methods.size(); ++mid) {
    const MethodInfo& m = p.methods[mid];
    const Cfg& g = m.cfg;
    std::string name = p.qualified_name(mid);
    if (!g.out[g.final].empty()) out.push_back(name + ": final state has outgoing edges");
    std::vector<int> enters(m.block_count, 0);
    std::vector<int> exits(m.block_count, 0);
    for (const Edge& e : g.edges) {
      std::string where = name + " edge " + std::to_string(e.from) + "->" + std::to_string(e.to);
      if (e.from >= g.state_count || e.to >= g.state_count) out.push_back(where + ": state out of range");
      const Action& a = e.action;
      lint_expr(p, m, a.expr, where, out);
      if (a.target) lint_expr(p, m, *a.target, where, out);
      for (const CExpr& arg : a.args) lint_expr(p, m, arg, where, out);
      bool writes = a.kind == Action::Kind::AssignLocal || a.kind == Action::Kind::CreateObject ||
                    a.kind == Action::Kind::QueryCall;
      if (writes) {
        std::size_t bound = a.lhs.kind == Place::Kind::Local ? m.slots.size() : p.classes[m.owner].attributes.size();
        if (a.lhs.index >= bound) out.push_back(where + ": assignment target out of range");
      }
      if ((a.kind == Action::Kind::CommandCall || a.kind == Action::Kind::QueryCall) && a.method >= p.methods.size())
        out.push_back(where + ": unknown callee");
      if (a.kind == Action::Kind::EnterBlock || a.kind == Action::Kind::ExitBlock) {
        if (a.block >= m.block_count) {
          out.push_back(where + ": unknown block");
        } else if (a.kind == Action::Kind::EnterBlock) {
          ++enters[a.block];
          for (std::uint32_t s : a.block_targets) {
            if (s >= m.slots.size() || !m.slots[s].type.is_separate)
              out.push_back(where + ": bad block target");
          }
        } else if (!a.retry) {
          ++exits[a.block];
        }
      }
    }
    for (BlockId b = 0; b < m.block_count; ++b) {
      if (enters[b] != 1 || exits[b] != 1) out.push_back(name + ": block b" + std::to_string(b) + " not matched");
    }
  }
  return out;
}

}  // namespace scoopw
