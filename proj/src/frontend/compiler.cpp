#include "scoopw/frontend/compiler.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>

#include "scoopw/frontend/parser.hpp"

namespace scoopw::frontend {

CompileError::CompileError(std::vector<Diagnostic> diags)
    : std::runtime_error(diags.empty() ? "compile error" : format(diags.front())), diags_(std::move(diags)) {}

namespace {

TypeRef integer_type() { return {}; }
TypeRef boolean_type() { return {TypeRef::Base::Boolean, {}, false}; }
// The type of `Void`: a reference to no class, assignable to every reference.
TypeRef none_type() { return {TypeRef::Base::Class, {}, false}; }

bool is_none(const TypeRef& t) { return t.is_reference() && t.class_name.empty(); }

TypeRef as_separate(TypeRef t) {
  if (t.is_reference() && !is_none(t)) t.is_separate = true;
  return t;
}

bool assignable(const TypeRef& src, const TypeRef& dst) {
  if (src.base != dst.base) return false;
  if (!dst.is_reference()) return true;
  if (is_none(src)) return true;
  return src.class_name == dst.class_name && (!src.is_separate || dst.is_separate);
}

bool comparable(const TypeRef& a, const TypeRef& b) {
  if (a.base != b.base) return false;
  if (!a.is_reference()) return true;
  return is_none(a) || is_none(b) || a.class_name == b.class_name;
}

CExpr make_const(Value v, TypeRef t) {
  CExpr e;
  e.op = CExpr::Op::Const;
  e.value = v;
  e.type = std::move(t);
  return e;
}

CExpr make_local(std::uint32_t slot, const Slot& s) {
  CExpr e;
  e.op = CExpr::Op::Local;
  e.index = slot;
  e.type = s.type;
  e.text = s.name;
  return e;
}

// Union-find over control states, used to merge branch and loop ends.
class StateSet {
 public:
  ControlState make() {
    parent_.push_back(static_cast<ControlState>(parent_.size()));
    return parent_.back();
  }
  ControlState find(ControlState s) {
    while (parent_[s] != s) s = parent_[s] = parent_[parent_[s]];
    return s;
  }
  void alias(ControlState from, ControlState to) { parent_[find(from)] = find(to); }
  std::size_t size() const { return parent_.size(); }

 private:
  std::vector<ControlState> parent_;
};

struct Feature {
  enum class Kind { None, Local, Attribute, Method };
  Kind kind = Kind::None;
  std::uint32_t index = 0;
};

class Lowering {
 public:
  explicit Lowering(const Program& p) : ast_(p) {}

  void run() {
    declare();
    if (!errors.empty()) return;
    for (std::size_t c = 0; c < ast_.classes.size(); ++c) {
      const ClassDecl& cd = ast_.classes[c];
      for (std::size_t m = 0; m < cd.methods.size(); ++m) {
        lower_method(static_cast<ClassId>(c), cd.methods[m], out.classes[c].methods[m]);
      }
    }
  }

  CompiledProgram out;
  std::vector<Diagnostic> errors;
  std::vector<Diagnostic> warnings;

 private:
  void error(SourcePos pos, std::string msg) { errors.push_back({pos, std::move(msg)}); }

  void check_type(const TypeRef& t, SourcePos pos) {
    if (t.is_reference() && !out.find_class(t.class_name)) error(pos, "unknown class '" + t.class_name + "'");
  }

  void declare() {
    // Getters are appended while lowering; references into `methods` must stay valid.
    std::size_t capacity = 0;
    for (const ClassDecl& cd : ast_.classes) capacity += cd.methods.size() + cd.attributes.size();
    out.methods.reserve(capacity);
    for (const ClassDecl& cd : ast_.classes) {
      ClassInfo ci;
      ci.name = cd.name;
      for (const Formal& a : cd.attributes) ci.attributes.push_back({a.name, a.type, false});
      out.classes.push_back(std::move(ci));
    }
    for (std::size_t c = 0; c < ast_.classes.size(); ++c) {
      const ClassDecl& cd = ast_.classes[c];
      for (const Formal& a : cd.attributes) check_type(a.type, a.pos);
      for (const MethodDecl& md : cd.methods) {
        MethodInfo mi;
        mi.name = md.name;
        mi.owner = static_cast<ClassId>(c);
        mi.return_type = md.return_type;
        mi.formal_count = static_cast<std::uint32_t>(md.formals.size());
        for (const Formal& f : md.formals) mi.slots.push_back({f.name, f.type, false});
        out.classes[c].methods.push_back(static_cast<MethodId>(out.methods.size()));
        out.methods.push_back(std::move(mi));
        for (const Formal& f : md.formals) check_type(f.type, f.pos);
        for (const Formal& f : md.locals) check_type(f.type, f.pos);
        if (md.return_type) check_type(*md.return_type, md.pos);
      }
    }
    auto entry = out.find_class(kEntryClass);
    if (!entry) {
      error({1, 1}, std::string("missing entry class ") + kEntryClass);
      return;
    }
    out.entry_class = *entry;
    auto make = out.find_method(*entry, kEntryMethod);
    const ClassDecl& ecd = ast_.classes[*entry];
    if (!make) {
      error(ecd.pos, std::string("missing entry method ") + kEntryClass + "." + kEntryMethod);
      return;
    }
    out.entry_method = *make;
    const MethodDecl& emd = ecd.methods[*make - out.classes[*entry].methods.front()];
    if (!emd.formals.empty()) error(emd.pos, "entry method must not take arguments");
    if (emd.is_query()) error(emd.pos, "entry method must be a command");
  }

  // ---- per-method state -------------------------------------------------

  struct Ctx {
    MethodId method = 0;
    ClassId cls = 0;
    const MethodDecl* decl = nullptr;
    std::vector<std::uint32_t> controlled;  // slots, innermost last
    bool in_require = false;
    std::uint32_t declared_slots = 0;      // formals + locals + Result
    StateSet states;
    std::vector<Edge> edges;
  };

  MethodInfo& info(Ctx& c) { return out.methods[c.method]; }

  ControlState emit(Ctx& c, ControlState from, Action a) {
    ControlState to = c.states.make();
    c.edges.push_back({from, std::move(a), to});
    return to;
  }

  std::uint32_t new_temp(Ctx& c, const TypeRef& t) {
    auto& slots = info(c).slots;
    std::uint32_t idx = static_cast<std::uint32_t>(slots.size());
    slots.push_back({"$t" + std::to_string(idx - c.declared_slots), t, true});
    return idx;
  }

  std::optional<std::uint32_t> find_slot(Ctx& c, const std::string& name) {
    const auto& slots = info(c).slots;
    for (std::uint32_t i = 0; i < c.declared_slots; ++i) {
      if (slots[i].name == name) return i;
    }
    return std::nullopt;
  }

  bool is_controlled(const Ctx& c, std::uint32_t slot) const {
    return std::find(c.controlled.begin(), c.controlled.end(), slot) != c.controlled.end();
  }

  Feature resolve_unqualified(Ctx& c, const std::string& name) {
    if (auto s = find_slot(c, name)) return {Feature::Kind::Local, *s};
    if (auto a = out.find_attribute(c.cls, name)) return {Feature::Kind::Attribute, *a};
    if (auto m = out.find_method(c.cls, name)) return {Feature::Kind::Method, *m};
    return {};
  }

  Feature resolve_in(ClassId cls, const std::string& name) {
    if (auto a = out.find_attribute(cls, name)) return {Feature::Kind::Attribute, *a};
    if (auto m = out.find_method(cls, name)) return {Feature::Kind::Method, *m};
    return {};
  }

  // Conservative: true unless `e` is certainly free of query calls.
  bool may_call(Ctx& c, const Expr& e) {
    switch (e.kind) {
      case Expr::Kind::Integer:
      case Expr::Kind::Boolean:
      case Expr::Kind::Void:
        return false;
      case Expr::Kind::Feature:
        if (e.has_target || e.has_args) return true;
        return resolve_unqualified(c, e.name).kind == Feature::Kind::Method;
      case Expr::Kind::Unary:
      case Expr::Kind::Binary:
        return std::any_of(e.operands.begin(), e.operands.end(), [&](const Expr& o) { return may_call(c, o); });
    }
    return true;
  }

  // Stores `e` in a fresh temporary so later hoisted calls cannot change it.
  CExpr capture(Ctx& c, ControlState& cur, CExpr e) {
    if (e.op == CExpr::Op::Const) return e;
    std::uint32_t t = new_temp(c, e.type);
    Action a;
    a.kind = Action::Kind::AssignLocal;
    a.lhs = {Place::Kind::Local, t};
    a.expr = std::move(e);
    cur = emit(c, cur, std::move(a));
    return make_local(t, info(c).slots[t]);
  }

  using Lowered = std::optional<CExpr>;

  std::optional<std::vector<CExpr>> lower_args(Ctx& c, ControlState& cur, const Expr& call) {
    std::vector<CExpr> args;
    bool ok = true;
    for (std::size_t i = call.first_arg(); i < call.operands.size(); ++i) {
      Lowered a = lower_expr(c, cur, call.operands[i]);
      if (!a) {
        ok = false;
        continue;
      }
      bool later_call = false;
      for (std::size_t j = i + 1; j < call.operands.size(); ++j) later_call = later_call || may_call(c, call.operands[j]);
      args.push_back(later_call ? capture(c, cur, std::move(*a)) : std::move(*a));
    }
    if (!ok) return std::nullopt;
    return args;
  }

  bool check_args(const MethodInfo& callee, const std::vector<CExpr>& args, bool separate_call, SourcePos pos) {
    if (args.size() != callee.formal_count) {
      error(pos, "'" + callee.name + "' expects " + std::to_string(callee.formal_count) + " argument(s), got " +
                     std::to_string(args.size()));
      return false;
    }
    bool ok = true;
    for (std::size_t i = 0; i < args.size(); ++i) {
      const Slot& f = callee.slots[i];
      if (!assignable(args[i].type, f.type)) {
        error(pos, "argument " + std::to_string(i + 1) + " of '" + callee.name + "': cannot pass " +
                       to_string(args[i].type) + " as " + to_string(f.type));
        ok = false;
      } else if (separate_call && f.type.is_reference() && !f.type.is_separate) {
        error(pos, "formal '" + f.name + "' of '" + callee.name + "' must be separate to be passed across handlers");
        ok = false;
      }
    }
    return ok;
  }

  // A separate-typed call target must be a locally controlled name.
  bool check_controlled(Ctx& c, const CExpr& target, SourcePos pos) {
    if (!target.type.is_separate) return true;
    if (target.op == CExpr::Op::Local && is_controlled(c, target.index)) return true;
    error(pos, "uncontrolled separate call");
    return false;
  }

  MethodId getter_for(ClassId cls, std::uint32_t attr) {
    auto key = std::make_pair(cls, attr);
    if (auto it = getters_.find(key); it != getters_.end()) return it->second;
    const Slot& a = out.classes[cls].attributes[attr];
    MethodInfo mi;
    mi.name = a.name;
    mi.owner = cls;
    mi.return_type = a.type;
    mi.is_getter = true;
    mi.slots.push_back({"Result", a.type, false});
    mi.result_slot = 0;
    Cfg& g = mi.cfg;
    g.state_count = 3;
    g.initial = 0;
    g.final = 2;
    Action assign;
    assign.kind = Action::Kind::AssignLocal;
    assign.lhs = {Place::Kind::Local, 0};
    assign.expr.op = CExpr::Op::Attr;
    assign.expr.index = attr;
    assign.expr.type = a.type;
    assign.expr.text = a.name;
    g.edges.push_back({0, std::move(assign), 1});
    g.edges.push_back({1, Action{}, 2});
    g.out = {{0}, {1}, {}};
    g.dead_temps.assign(3, {});
    MethodId id = static_cast<MethodId>(out.methods.size());
    out.methods.push_back(std::move(mi));
    getters_[key] = id;
    return id;
  }

  // Emits QueryCall(temp := target.method(args)) and returns the temp.
  CExpr hoist_query(Ctx& c, ControlState& cur, std::optional<CExpr> target, MethodId m, std::vector<CExpr> args,
                    bool separate) {
    TypeRef rt = *out.methods[m].return_type;
    if (separate) rt = as_separate(rt);
    std::uint32_t t = new_temp(c, rt);
    Action a;
    a.kind = Action::Kind::QueryCall;
    a.lhs = {Place::Kind::Local, t};
    a.target = std::move(target);
    a.method = m;
    a.args = std::move(args);
    a.separate = separate;
    cur = emit(c, cur, std::move(a));
    CExpr r = make_local(t, info(c).slots[t]);
    r.text = out.methods[m].name;
    return r;
  }

  Lowered lower_feature(Ctx& c, ControlState& cur, const Expr& e) {
    if (!e.has_target) {
      Feature f = resolve_unqualified(c, e.name);
      switch (f.kind) {
        case Feature::Kind::None:
          error(e.pos, "unknown name '" + e.name + "'");
          return std::nullopt;
        case Feature::Kind::Local: {
          if (e.has_args) {
            error(e.pos, "'" + e.name + "' is not a method");
            return std::nullopt;
          }
          if (c.in_require && f.index >= info(c).formal_count) {
            error(e.pos, "precondition may only reference formals and attributes");
            return std::nullopt;
          }
          return make_local(f.index, info(c).slots[f.index]);
        }
        case Feature::Kind::Attribute: {
          if (e.has_args) {
            error(e.pos, "'" + e.name + "' is not a method");
            return std::nullopt;
          }
          const Slot& a = out.classes[c.cls].attributes[f.index];
          CExpr r;
          r.op = CExpr::Op::Attr;
          r.index = f.index;
          r.type = a.type;
          r.text = a.name;
          return r;
        }
        case Feature::Kind::Method: {
          const MethodInfo& callee = out.methods[f.index];
          if (!callee.is_query()) {
            error(e.pos, "command '" + e.name + "' used as an expression");
            return std::nullopt;
          }
          if (c.in_require) {
            error(e.pos, "precondition may only query controlled formals");
            return std::nullopt;
          }
          auto args = lower_args(c, cur, e);
          if (!args || !check_args(callee, *args, false, e.pos)) return std::nullopt;
          return hoist_query(c, cur, std::nullopt, f.index, std::move(*args), false);
        }
      }
      return std::nullopt;
    }

    const Expr& te = *e.target();
    Lowered target = lower_expr(c, cur, te);
    if (!target) return std::nullopt;
    if (!target->type.is_reference() || is_none(target->type)) {
      error(te.pos, "feature call on a non-object value");
      return std::nullopt;
    }
    ClassId cls = *out.find_class(target->type.class_name);
    Feature f = resolve_in(cls, e.name);
    bool separate = target->type.is_separate;
    if (f.kind == Feature::Kind::None) {
      error(e.pos, "class " + target->type.class_name + " has no feature '" + e.name + "'");
      return std::nullopt;
    }
    if (f.kind == Feature::Kind::Attribute) {
      if (e.has_args) {
        error(e.pos, "'" + e.name + "' is not a method");
        return std::nullopt;
      }
      if (!separate) {
        if (c.in_require) {
          error(e.pos, "precondition may only query controlled formals");
          return std::nullopt;
        }
        CExpr r;
        r.op = CExpr::Op::Field;
        r.index = f.index;
        r.type = out.classes[cls].attributes[f.index].type;
        r.text = e.name;
        r.kids.push_back(std::move(*target));
        return r;
      }
      if (!check_controlled(c, *target, e.pos)) return std::nullopt;
      return hoist_query(c, cur, std::move(*target), getter_for(cls, f.index), {}, true);
    }
    const MethodInfo& callee = out.methods[f.index];
    if (!callee.is_query()) {
      error(e.pos, "command '" + e.name + "' used as an expression");
      return std::nullopt;
    }
    if (c.in_require && !separate) {
      error(e.pos, "precondition may only query controlled formals");
      return std::nullopt;
    }
    if (!check_controlled(c, *target, e.pos)) return std::nullopt;
    CExpr tgt = std::move(*target);
    if (!separate && e.operands.size() > 1 &&
        std::any_of(e.operands.begin() + 1, e.operands.end(), [&](const Expr& a) { return may_call(c, a); })) {
      tgt = capture(c, cur, std::move(tgt));
    }
    auto args = lower_args(c, cur, e);
    if (!args || !check_args(callee, *args, separate, e.pos)) return std::nullopt;
    return hoist_query(c, cur, std::move(tgt), f.index, std::move(*args), separate);
  }

  Lowered lower_expr(Ctx& c, ControlState& cur, const Expr& e) {
    switch (e.kind) {
      case Expr::Kind::Integer:
        return make_const(Value::of_int(e.integer), integer_type());
      case Expr::Kind::Boolean:
        return make_const(Value::of_bool(e.boolean), boolean_type());
      case Expr::Kind::Void:
        return make_const(Value::void_value(), none_type());
      case Expr::Kind::Feature:
        return lower_feature(c, cur, e);
      case Expr::Kind::Unary: {
        Lowered x = lower_expr(c, cur, e.operands[0]);
        if (!x) return std::nullopt;
        TypeRef want = e.unary == UnaryOp::Not ? boolean_type() : integer_type();
        if (x->type != want) {
          error(e.pos, std::string("operand of '") + spelling(e.unary) + "' must be " + to_string(want));
          return std::nullopt;
        }
        CExpr r;
        r.op = CExpr::Op::Unary;
        r.unary = e.unary;
        r.type = want;
        r.kids.push_back(std::move(*x));
        return r;
      }
      case Expr::Kind::Binary: {
        Lowered l = lower_expr(c, cur, e.operands[0]);
        if (l && may_call(c, e.operands[1])) l = capture(c, cur, std::move(*l));
        Lowered r = lower_expr(c, cur, e.operands[1]);
        if (!l || !r) return std::nullopt;
        TypeRef result;
        bool ok = true;
        switch (e.binary) {
          case BinaryOp::Add:
          case BinaryOp::Sub:
          case BinaryOp::Mul:
            ok = l->type == integer_type() && r->type == integer_type();
            result = integer_type();
            break;
          case BinaryOp::Lt:
          case BinaryOp::Le:
          case BinaryOp::Gt:
          case BinaryOp::Ge:
            ok = l->type == integer_type() && r->type == integer_type();
            result = boolean_type();
            break;
          case BinaryOp::Eq:
          case BinaryOp::Ne:
            ok = comparable(l->type, r->type);
            result = boolean_type();
            break;
          case BinaryOp::And:
          case BinaryOp::Or:
            ok = l->type == boolean_type() && r->type == boolean_type();
            result = boolean_type();
            break;
        }
        if (!ok) {
          error(e.pos, std::string("operands of '") + spelling(e.binary) + "' have incompatible types " +
                           to_string(l->type) + " and " + to_string(r->type));
          return std::nullopt;
        }
        CExpr out_e;
        out_e.op = CExpr::Op::Binary;
        out_e.binary = e.binary;
        out_e.type = result;
        out_e.kids.push_back(std::move(*l));
        out_e.kids.push_back(std::move(*r));
        return out_e;
      }
    }
    return std::nullopt;
  }

  // Resolves an assignment or creation target.
  std::optional<std::pair<Place, TypeRef>> lower_place(Ctx& c, const std::string& name, SourcePos pos) {
    Feature f = resolve_unqualified(c, name);
    if (f.kind == Feature::Kind::Local) {
      if (f.index < info(c).formal_count) {
        error(pos, "cannot assign to formal '" + name + "'");
        return std::nullopt;
      }
      if (is_controlled(c, f.index)) {
        error(pos, "cannot assign to '" + name + "' inside a block controlling it");
        return std::nullopt;
      }
      return std::make_pair(Place{Place::Kind::Local, f.index}, info(c).slots[f.index].type);
    }
    if (f.kind == Feature::Kind::Attribute) {
      return std::make_pair(Place{Place::Kind::Attribute, f.index}, out.classes[c.cls].attributes[f.index].type);
    }
    error(pos, f.kind == Feature::Kind::None ? "unknown name '" + name + "'" : "cannot assign to method '" + name + "'");
    return std::nullopt;
  }

  Lowered lower_condition(Ctx& c, ControlState& cur, const Expr& e, const char* what) {
    Lowered x = lower_expr(c, cur, e);
    if (x && x->type != boolean_type()) {
      error(e.pos, std::string(what) + " must be BOOLEAN");
      return std::nullopt;
    }
    return x;
  }

  void guard(Ctx& c, ControlState from, const CExpr& cond, bool polarity, ControlState to) {
    Action a;
    a.kind = Action::Kind::Guard;
    a.expr = cond;
    a.polarity = polarity;
    c.edges.push_back({from, std::move(a), to});
  }

  void lower_call(Ctx& c, ControlState& cur, const Stmt& s) {
    const Expr& e = s.expr;
    std::optional<CExpr> target;
    ClassId cls = c.cls;
    if (e.has_target) {
      Lowered t = lower_expr(c, cur, *e.target());
      if (!t) return;
      if (!t->type.is_reference() || is_none(t->type)) {
        error(e.pos, "feature call on a non-object value");
        return;
      }
      cls = *out.find_class(t->type.class_name);
      target = std::move(*t);
    }
    Feature f = e.has_target ? resolve_in(cls, e.name) : resolve_unqualified(c, e.name);
    if (f.kind != Feature::Kind::Method) {
      error(e.pos, f.kind == Feature::Kind::None ? "unknown feature '" + e.name + "'"
                                                  : "'" + e.name + "' is not a command");
      return;
    }
    const MethodInfo& callee = out.methods[f.index];
    if (callee.is_query()) {
      error(e.pos, "query '" + e.name + "' used as an instruction");
      return;
    }
    bool separate = target && target->type.is_separate;
    if (target && !check_controlled(c, *target, e.pos)) return;
    if (target && !separate && e.operands.size() > 1 &&
        std::any_of(e.operands.begin() + 1, e.operands.end(), [&](const Expr& a) { return may_call(c, a); })) {
      target = capture(c, cur, std::move(*target));
    }
    auto args = lower_args(c, cur, e);
    if (!args || !check_args(callee, *args, separate, e.pos)) return;
    Action a;
    a.kind = Action::Kind::CommandCall;
    a.target = std::move(target);
    a.method = f.index;
    a.args = std::move(*args);
    a.separate = separate;
    cur = emit(c, cur, std::move(a));
  }

  void lower_create(Ctx& c, ControlState& cur, const Stmt& s) {
    auto place = lower_place(c, s.name, s.pos);
    if (!place) return;
    const TypeRef& t = place->second;
    if (!t.is_reference()) {
      error(s.pos, "cannot create '" + s.name + "' of type " + to_string(t));
      return;
    }
    ClassId cls = *out.find_class(t.class_name);
    MethodId ctor = kNoMethod;
    std::vector<CExpr> args;
    if (!s.creator.empty()) {
      auto m = out.find_method(cls, s.creator);
      if (!m) {
        error(s.pos, "class " + t.class_name + " has no creation procedure '" + s.creator + "'");
        return;
      }
      if (out.methods[*m].is_query()) {
        error(s.pos, "creation procedure '" + s.creator + "' must be a command");
        return;
      }
      Expr call;
      call.has_args = true;
      call.operands = s.args;
      auto lowered = lower_args(c, cur, call);
      if (!lowered || !check_args(out.methods[*m], *lowered, t.is_separate, s.pos)) return;
      ctor = *m;
      args = std::move(*lowered);
    } else if (s.has_creator_args) {
      error(s.pos, "creation arguments without a creation procedure");
      return;
    }
    Action a;
    a.kind = Action::Kind::CreateObject;
    a.lhs = place->first;
    a.cls = cls;
    a.method = ctor;
    a.args = std::move(args);
    a.separate = t.is_separate;
    cur = emit(c, cur, std::move(a));
  }

  void lower_separate(Ctx& c, ControlState& cur, const Stmt& s) {
    std::vector<std::uint32_t> slots;
    for (const std::string& name : s.targets) {
      auto slot = find_slot(c, name);
      if (!slot) {
        error(s.pos, "block target '" + name + "' must be a local or formal");
        return;
      }
      const TypeRef& t = info(c).slots[*slot].type;
      if (!t.is_reference() || !t.is_separate) {
        error(s.pos, "block target '" + name + "' must have a separate type");
        return;
      }
      if (std::find(slots.begin(), slots.end(), *slot) != slots.end()) {
        error(s.pos, "block target '" + name + "' listed twice");
        return;
      }
      slots.push_back(*slot);
    }
    BlockId b = info(c).block_count++;
    Action enter;
    enter.kind = Action::Kind::EnterBlock;
    enter.block = b;
    enter.block_targets = slots;
    cur = emit(c, cur, std::move(enter));
    std::size_t depth = c.controlled.size();
    c.controlled.insert(c.controlled.end(), slots.begin(), slots.end());
    lower_stmts(c, cur, s.body);
    c.controlled.resize(depth);
    Action exit;
    exit.kind = Action::Kind::ExitBlock;
    exit.block = b;
    cur = emit(c, cur, std::move(exit));
  }

  void lower_stmt(Ctx& c, ControlState& cur, const Stmt& s) {
    switch (s.kind) {
      case Stmt::Kind::Create:
        lower_create(c, cur, s);
        break;
      case Stmt::Kind::Assign: {
        auto place = lower_place(c, s.name, s.pos);
        Lowered v = lower_expr(c, cur, s.expr);
        if (!place || !v) return;
        if (!assignable(v->type, place->second)) {
          error(s.pos, "cannot assign " + to_string(v->type) + " to '" + s.name + "' of type " +
                           to_string(place->second));
          return;
        }
        Action a;
        a.kind = Action::Kind::AssignLocal;
        a.lhs = place->first;
        a.expr = std::move(*v);
        cur = emit(c, cur, std::move(a));
        break;
      }
      case Stmt::Kind::Call:
        lower_call(c, cur, s);
        break;
      case Stmt::Kind::If: {
        Lowered cond = lower_condition(c, cur, s.expr, "condition");
        if (!cond) return;
        ControlState then_start = c.states.make();
        ControlState else_start = c.states.make();
        guard(c, cur, *cond, true, then_start);
        guard(c, cur, *cond, false, else_start);
        ControlState then_end = then_start;
        ControlState else_end = else_start;
        lower_stmts(c, then_end, s.body);
        lower_stmts(c, else_end, s.else_body);
        c.states.alias(else_end, then_end);
        cur = then_end;
        break;
      }
      case Stmt::Kind::Loop: {
        lower_stmts(c, cur, s.init);
        ControlState head = cur;
        Lowered cond = lower_condition(c, cur, s.expr, "loop exit condition");
        if (!cond) return;
        ControlState exit = c.states.make();
        ControlState body = c.states.make();
        guard(c, cur, *cond, true, exit);
        guard(c, cur, *cond, false, body);
        lower_stmts(c, body, s.body);
        c.states.alias(body, head);
        cur = exit;
        break;
      }
      case Stmt::Kind::Separate:
        lower_separate(c, cur, s);
        break;
    }
  }

  void lower_stmts(Ctx& c, ControlState& cur, const std::vector<Stmt>& ss) {
    for (const Stmt& s : ss) lower_stmt(c, cur, s);
  }

  void lower_method(ClassId cls, const MethodDecl& md, MethodId id) {
    Ctx c;
    c.method = id;
    c.cls = cls;
    c.decl = &md;
    MethodInfo& mi = info(c);
    mi.slots.clear();
    std::set<std::string> seen;
    auto add_slot = [&](const Formal& f) {
      if (!seen.insert(f.name).second) error(f.pos, "duplicate local name '" + f.name + "'");
      mi.slots.push_back({f.name, f.type, false});
    };
    for (const Formal& f : md.formals) add_slot(f);
    mi.formal_count = static_cast<std::uint32_t>(md.formals.size());
    for (const Formal& f : md.locals) add_slot(f);
    if (md.return_type) {
      if (seen.count("Result")) error(md.pos, "'Result' cannot be declared");
      mi.result_slot = static_cast<std::uint32_t>(mi.slots.size());
      mi.slots.push_back({"Result", *md.return_type, false});
    }
    c.declared_slots = static_cast<std::uint32_t>(mi.slots.size());
    for (std::uint32_t i = 0; i < mi.formal_count; ++i) {
      if (mi.slots[i].type.is_reference() && mi.slots[i].type.is_separate) mi.controlled_formals.push_back(i);
    }
    if (md.had_ensure) warnings.push_back({md.pos, "postcondition of '" + md.name + "' ignored"});

    ControlState initial = c.states.make();
    ControlState cur = initial;
    std::optional<BlockId> block;
    if (!info(c).controlled_formals.empty()) {
      block = info(c).block_count++;
      info(c).implicit_block = block;
      Action enter;
      enter.kind = Action::Kind::EnterBlock;
      enter.block = *block;
      enter.block_targets = info(c).controlled_formals;
      enter.has_wait = !md.require.empty();
      cur = emit(c, cur, std::move(enter));
      c.controlled = info(c).controlled_formals;
      if (!md.require.empty()) {
        c.in_require = true;
        std::optional<CExpr> wait;
        bool ok = true;
        for (const Expr& clause : md.require) {
          Lowered x = lower_condition(c, cur, clause, "wait condition");
          if (!x) {
            ok = false;
            continue;
          }
          if (!wait) {
            wait = std::move(*x);
          } else {
            CExpr conj;
            conj.op = CExpr::Op::Binary;
            conj.binary = BinaryOp::And;
            conj.type = boolean_type();
            conj.kids.push_back(std::move(*wait));
            conj.kids.push_back(std::move(*x));
            wait = std::move(conj);
          }
        }
        c.in_require = false;
        if (ok && wait) {
          ControlState body = c.states.make();
          ControlState retry = c.states.make();
          guard(c, cur, *wait, true, body);
          guard(c, cur, *wait, false, retry);
          Action back;
          back.kind = Action::Kind::ExitBlock;
          back.block = *block;
          back.retry = true;
          c.edges.push_back({retry, std::move(back), initial});
          cur = body;
        }
      }
    } else if (!md.require.empty()) {
      warnings.push_back({md.pos, "precondition of '" + md.name + "' ignored: no separate formals"});
    }
    lower_stmts(c, cur, md.body);
    if (block) {
      Action exit;
      exit.kind = Action::Kind::ExitBlock;
      exit.block = *block;
      cur = emit(c, cur, std::move(exit));
    }
    ControlState final = emit(c, cur, Action{});
    finish_cfg(c, initial, final);
  }

  // Resolves aliases, renumbers states breadth-first from the initial state
  // and computes dead temporaries per state.
  void finish_cfg(Ctx& c, ControlState initial, ControlState final) {
    std::vector<std::vector<std::size_t>> by_state(c.states.size());
    for (std::size_t i = 0; i < c.edges.size(); ++i) {
      c.edges[i].from = c.states.find(c.edges[i].from);
      c.edges[i].to = c.states.find(c.edges[i].to);
      by_state[c.edges[i].from].push_back(i);
    }
    constexpr ControlState kUnset = ~ControlState{0};
    std::vector<ControlState> number(c.states.size(), kUnset);
    std::vector<ControlState> order;
    std::deque<ControlState> queue{c.states.find(initial)};
    number[queue.front()] = 0;
    while (!queue.empty()) {
      ControlState s = queue.front();
      queue.pop_front();
      order.push_back(s);
      for (std::size_t ei : by_state[s]) {
        ControlState t = c.edges[ei].to;
        if (number[t] == kUnset) {
          number[t] = static_cast<ControlState>(order.size() + queue.size());
          queue.push_back(t);
        }
      }
    }
    Cfg& g = info(c).cfg;
    g.state_count = static_cast<std::uint32_t>(order.size());
    g.initial = 0;
    g.final = number[c.states.find(final)];
    g.out.assign(g.state_count, {});
    for (ControlState s : order) {
      for (std::size_t ei : by_state[s]) {
        Edge e = std::move(c.edges[ei]);
        e.from = number[e.from];
        e.to = number[e.to];
        g.out[e.from].push_back(static_cast<std::uint32_t>(g.edges.size()));
        g.edges.push_back(std::move(e));
      }
    }
    compute_dead_temps(info(c));
  }

  static void collect_uses(const CExpr& e, std::set<std::uint32_t>& uses) {
    if (e.op == CExpr::Op::Local) uses.insert(e.index);
    for (const CExpr& k : e.kids) collect_uses(k, uses);
  }

  static void compute_dead_temps(MethodInfo& mi) {
    Cfg& g = mi.cfg;
    std::vector<std::set<std::uint32_t>> live(g.state_count);
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t i = g.edges.size(); i-- > 0;) {
        const Edge& e = g.edges[i];
        std::set<std::uint32_t> in = live[e.to];
        const Action& a = e.action;
        if ((a.kind == Action::Kind::AssignLocal || a.kind == Action::Kind::QueryCall ||
             a.kind == Action::Kind::CreateObject) &&
            a.lhs.kind == Place::Kind::Local) {
          in.erase(a.lhs.index);
        }
        collect_uses(a.expr, in);
        if (a.target) collect_uses(*a.target, in);
        for (const CExpr& arg : a.args) collect_uses(arg, in);
        for (std::uint32_t s : in) {
          if (mi.slots[s].temp && live[e.from].insert(s).second) changed = true;
        }
      }
    }
    g.dead_temps.assign(g.state_count, {});
    for (ControlState s = 0; s < g.state_count; ++s) {
      for (std::uint32_t i = 0; i < mi.slots.size(); ++i) {
        if (mi.slots[i].temp && !live[s].count(i)) g.dead_temps[s].push_back(i);
      }
    }
  }

  const Program& ast_;
  std::map<std::pair<ClassId, std::uint32_t>, MethodId> getters_;
};

}  // namespace

std::vector<Diagnostic> check(const Program& program) {
  Lowering l(program);
  l.run();
  return l.errors;
}

std::vector<Diagnostic> warnings(const Program& program) {
  Lowering l(program);
  l.run();
  return l.warnings;
}

CompiledProgram compile(const Program& program) {
  Lowering l(program);
  l.run();
  if (!l.errors.empty()) throw CompileError(std::move(l.errors));
  return std::move(l.out);
}

BuildResult build(std::string_view source) {
  BuildResult r;
  ParseResult parsed = parse(source);
  if (!parsed.ok()) {
    r.errors = parsed.errors;
    return r;
  }
  Lowering l(*parsed.program);
  l.run();
  r.warnings.insert(r.warnings.end(), l.warnings.begin(), l.warnings.end());
  if (!l.errors.empty()) {
    r.errors = std::move(l.errors);
    return r;
  }
  r.program = std::make_shared<const CompiledProgram>(std::move(l.out));
  return r;
}

}  // namespace scoopw::frontend
