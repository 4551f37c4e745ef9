#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace scoopw::frontend {

struct SourcePos {
  int line = 0;
  int column = 0;
};

struct Diagnostic {
  SourcePos pos;
  std::string message;
};

std::string format(const Diagnostic& d);

struct TypeRef {
  enum class Base { Integer, Boolean, Class };

  Base base = Base::Integer;
  std::string class_name;  // only for Base::Class
  bool is_separate = false;

  bool is_reference() const { return base == Base::Class; }
  bool operator==(const TypeRef&) const = default;
};

std::string to_string(const TypeRef& t);

enum class UnaryOp { Not, Neg };
enum class BinaryOp { Add, Sub, Mul, Eq, Ne, Lt, Le, Gt, Ge, And, Or };

const char* spelling(UnaryOp op);
const char* spelling(BinaryOp op);

// Expressions are plain value trees. A Feature is a (possibly qualified)
// name: `x`, `x.f`, `f (a, b)`, `x.f (a)`; whether it denotes a local, an
// attribute or a query call is decided by the compiler.
struct Expr {
  enum class Kind { Integer, Boolean, Void, Feature, Unary, Binary };

  Kind kind = Kind::Void;
  SourcePos pos;
  std::int64_t integer = 0;
  bool boolean = false;
  std::string name;
  bool has_target = false;
  bool has_args = false;
  UnaryOp unary = UnaryOp::Not;
  BinaryOp binary = BinaryOp::Add;
  // Feature: [target] followed by arguments. Unary: [operand]. Binary: [lhs, rhs].
  std::vector<Expr> operands;

  const Expr* target() const { return has_target ? &operands.front() : nullptr; }
  std::size_t first_arg() const { return has_target ? 1 : 0; }
};

bool same_structure(const Expr& a, const Expr& b);

struct Stmt {
  enum class Kind { Create, Assign, Call, If, Loop, Separate };

  Kind kind = Kind::Call;
  SourcePos pos;
  std::string name;                  // Create/Assign: the target variable
  std::string creator;               // Create: creation procedure, empty if none
  bool has_creator_args = false;
  std::vector<Expr> args;            // Create: creation arguments
  Expr expr;                         // Assign: rhs; Call: feature; If: cond; Loop: until
  std::vector<Stmt> body;            // If: then; Loop: body; Separate: body
  std::vector<Stmt> else_body;       // If
  std::vector<Stmt> init;            // Loop: from-part
  std::vector<std::string> targets;  // Separate
};

bool same_structure(const Stmt& a, const Stmt& b);

struct Formal {
  std::string name;
  TypeRef type;
  SourcePos pos;
};

struct MethodDecl {
  std::string name;
  SourcePos pos;
  std::vector<Formal> formals;
  std::optional<TypeRef> return_type;
  std::vector<Expr> require;  // conjunction of clauses
  std::vector<Formal> locals;
  std::vector<Stmt> body;
  bool had_ensure = false;

  bool is_query() const { return return_type.has_value(); }
};

struct ClassDecl {
  std::string name;
  SourcePos pos;
  std::vector<Formal> attributes;
  std::vector<MethodDecl> methods;
};

struct Program {
  std::vector<ClassDecl> classes;

  const ClassDecl* find_class(const std::string& name) const;
};

bool same_structure(const Program& a, const Program& b);

inline constexpr const char* kEntryClass = "APPLICATION";
inline constexpr const char* kEntryMethod = "make";

}  // namespace scoopw::frontend
