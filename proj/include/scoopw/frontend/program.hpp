#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "scoopw/frontend/ast.hpp"
#include "scoopw/value.hpp"

namespace scoopw {

using frontend::BinaryOp;
using frontend::TypeRef;
using frontend::UnaryOp;

inline constexpr MethodId kNoMethod = ~MethodId{0};

// Storage location written by an action: a slot of the active frame or an
// attribute of the frame's current object.
struct Place {
  enum class Kind : std::uint8_t { Local, Attribute };
  Kind kind = Kind::Local;
  std::uint32_t index = 0;

  bool operator==(const Place&) const = default;
};

// Resolved, side-effect free expression. Query calls never appear here: the
// compiler hoists them into QueryCall actions writing temporaries.
struct CExpr {
  enum class Op : std::uint8_t { Const, Local, Attr, Field, Unary, Binary };

  Op op = Op::Const;
  Value value;              // Const
  std::uint32_t index = 0;  // Local: slot; Attr/Field: attribute index
  UnaryOp unary = UnaryOp::Not;
  BinaryOp binary = BinaryOp::Add;
  std::vector<CExpr> kids;  // Field: [object]; Unary: [x]; Binary: [l, r]
  TypeRef type;
  std::string text;         // source name, for dumps
};

struct Action {
  enum class Kind : std::uint8_t {
    AssignLocal,
    CreateObject,
    CommandCall,
    QueryCall,
    EnterBlock,
    ExitBlock,
    Guard,
    Return,
  };

  Kind kind = Kind::Return;
  Place lhs;                      // AssignLocal, CreateObject, QueryCall
  CExpr expr;                     // AssignLocal: value; Guard: condition
  std::optional<CExpr> target;    // calls; empty means the current object
  ClassId cls = 0;                // CreateObject
  MethodId method = kNoMethod;    // callee, or creation procedure
  std::vector<CExpr> args;
  bool separate = false;          // separate creation, or call on a separate-typed target
  bool polarity = true;           // Guard
  BlockId block = 0;              // Enter/ExitBlock
  std::vector<std::uint32_t> block_targets;  // EnterBlock: controlled slots
  bool has_wait = false;          // EnterBlock followed by a wait condition
  bool retry = false;             // ExitBlock taken when the wait condition failed
};

struct Edge {
  ControlState from = 0;
  Action action;
  ControlState to = 0;
};

struct Cfg {
  std::uint32_t state_count = 0;
  ControlState initial = 0;
  ControlState final = 0;
  std::vector<Edge> edges;
  std::vector<std::vector<std::uint32_t>> out;  // state -> edge indices
  // state -> temporaries that are dead there and may be reset by gc
  std::vector<std::vector<std::uint32_t>> dead_temps;
};

struct Slot {
  std::string name;
  TypeRef type;
  bool temp = false;
};

struct MethodInfo {
  std::string name;
  ClassId owner = 0;
  std::uint32_t formal_count = 0;
  std::optional<TypeRef> return_type;
  std::vector<Slot> slots;  // formals, locals, Result, temporaries
  std::optional<std::uint32_t> result_slot;
  std::vector<std::uint32_t> controlled_formals;
  std::optional<BlockId> implicit_block;
  std::uint32_t block_count = 0;
  bool is_getter = false;  // synthesized reader for a separately accessed attribute
  Cfg cfg;

  bool is_query() const { return return_type.has_value(); }
};

struct ClassInfo {
  std::string name;
  std::vector<Slot> attributes;
  std::vector<MethodId> methods;
};

struct CompiledProgram {
  std::vector<ClassInfo> classes;
  std::vector<MethodInfo> methods;
  ClassId entry_class = 0;
  MethodId entry_method = 0;

  const MethodInfo& method(MethodId id) const { return methods[id]; }
  const ClassInfo& klass(ClassId id) const { return classes[id]; }
  std::optional<ClassId> find_class(const std::string& name) const;
  std::optional<MethodId> find_method(ClassId cls, const std::string& name) const;
  std::optional<std::uint32_t> find_attribute(ClassId cls, const std::string& name) const;
  std::string qualified_name(MethodId id) const;
};

Value default_value(const TypeRef& t);

std::string describe(const CompiledProgram& p, MethodId m, const Action& a);
std::string dump_cfg(const CompiledProgram& p, MethodId m);

// Checks scoping of every action: slot and attribute indices in range,
// callees existing, blocks matched. Returns one message per problem.
std::vector<std::string> lint(const CompiledProgram& p);

}  // namespace scoopw
