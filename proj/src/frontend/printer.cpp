#include "scoopw/frontend/printer.hpp"

#include <sstream>

namespace scoopw::frontend {

std::string format(const Diagnostic& d) {
  return std::to_string(d.pos.line) + ":" + std::to_string(d.pos.column) + ": " + d.message;
}

std::string to_string(const TypeRef& t) {
  std::string s = t.is_separate ? "separate " : "";
  switch (t.base) {
    case TypeRef::Base::Integer:
      return s + "INTEGER";
    case TypeRef::Base::Boolean:
      return s + "BOOLEAN";
    case TypeRef::Base::Class:
      return s + t.class_name;
  }
  return s;
}

const char* spelling(UnaryOp op) { return op == UnaryOp::Not ? "not" : "-"; }

const char* spelling(BinaryOp op) {
  switch (op) {
    case BinaryOp::Add: return "+";
    case BinaryOp::Sub: return "-";
    case BinaryOp::Mul: return "*";
    case BinaryOp::Eq: return "=";
    case BinaryOp::Ne: return "/=";
    case BinaryOp::Lt: return "<";
    case BinaryOp::Le: return "<=";
    case BinaryOp::Gt: return ">";
    case BinaryOp::Ge: return ">=";
    case BinaryOp::And: return "and";
    case BinaryOp::Or: return "or";
  }
  return "?";
}

const ClassDecl* Program::find_class(const std::string& name) const {
  for (const auto& c : classes) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

namespace {

template <typename T, typename Eq>
bool all_same(const std::vector<T>& a, const std::vector<T>& b, Eq eq) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!eq(a[i], b[i])) return false;
  }
  return true;
}

bool same_formals(const std::vector<Formal>& a, const std::vector<Formal>& b) {
  return all_same(a, b, [](const Formal& x, const Formal& y) { return x.name == y.name && x.type == y.type; });
}

}  // namespace

bool same_structure(const Expr& a, const Expr& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Expr::Kind::Integer:
      return a.integer == b.integer;
    case Expr::Kind::Boolean:
      return a.boolean == b.boolean;
    case Expr::Kind::Void:
      return true;
    case Expr::Kind::Feature:
      if (a.name != b.name || a.has_target != b.has_target || a.has_args != b.has_args) return false;
      break;
    case Expr::Kind::Unary:
      if (a.unary != b.unary) return false;
      break;
    case Expr::Kind::Binary:
      if (a.binary != b.binary) return false;
      break;
  }
  return all_same(a.operands, b.operands, [](const Expr& x, const Expr& y) { return same_structure(x, y); });
}

bool same_structure(const Stmt& a, const Stmt& b) {
  auto same_stmts = [](const std::vector<Stmt>& x, const std::vector<Stmt>& y) {
    return all_same(x, y, [](const Stmt& p, const Stmt& q) { return same_structure(p, q); });
  };
  auto same_exprs = [](const std::vector<Expr>& x, const std::vector<Expr>& y) {
    return all_same(x, y, [](const Expr& p, const Expr& q) { return same_structure(p, q); });
  };
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Stmt::Kind::Create:
      return a.name == b.name && a.creator == b.creator && a.has_creator_args == b.has_creator_args &&
             same_exprs(a.args, b.args);
    case Stmt::Kind::Assign:
      return a.name == b.name && same_structure(a.expr, b.expr);
    case Stmt::Kind::Call:
      return same_structure(a.expr, b.expr);
    case Stmt::Kind::If:
      return same_structure(a.expr, b.expr) && same_stmts(a.body, b.body) && same_stmts(a.else_body, b.else_body);
    case Stmt::Kind::Loop:
      return same_stmts(a.init, b.init) && same_structure(a.expr, b.expr) && same_stmts(a.body, b.body);
    case Stmt::Kind::Separate:
      return a.targets == b.targets && same_stmts(a.body, b.body);
  }
  return false;
}

bool same_structure(const Program& a, const Program& b) {
  return all_same(a.classes, b.classes, [](const ClassDecl& x, const ClassDecl& y) {
    return x.name == y.name && same_formals(x.attributes, y.attributes) &&
           all_same(x.methods, y.methods, [](const MethodDecl& m, const MethodDecl& n) {
             return m.name == n.name && same_formals(m.formals, n.formals) && m.return_type == n.return_type &&
                    same_formals(m.locals, n.locals) &&
                    all_same(m.require, n.require, [](const Expr& p, const Expr& q) { return same_structure(p, q); }) &&
                    all_same(m.body, n.body, [](const Stmt& p, const Stmt& q) { return same_structure(p, q); });
           });
  });
}

namespace {

void print_args(std::ostream& os, const Expr& e) {
  if (!e.has_args) return;
  os << " (";
  for (std::size_t i = e.first_arg(); i < e.operands.size(); ++i) {
    if (i != e.first_arg()) os << ", ";
    os << print(e.operands[i]);
  }
  os << ")";
}

class Printer {
 public:
  std::string run(const Program& p) {
    for (std::size_t i = 0; i < p.classes.size(); ++i) {
      if (i) os_ << "\n";
      print_class(p.classes[i]);
    }
    return os_.str();
  }

 private:
  void line(int depth, const std::string& text) { os_ << std::string(depth * 2, ' ') << text << "\n"; }

  static std::string formals(const std::vector<Formal>& fs, const char* sep) {
    std::string s;
    for (std::size_t i = 0; i < fs.size(); ++i) {
      if (i) s += sep;
      s += fs[i].name + ": " + to_string(fs[i].type);
    }
    return s;
  }

  void print_class(const ClassDecl& c) {
    line(0, "class " + c.name);
    for (const auto& a : c.attributes) line(1, a.name + ": " + to_string(a.type));
    for (const auto& m : c.methods) {
      os_ << "\n";
      std::string head = m.name;
      if (!m.formals.empty()) head += " (" + formals(m.formals, "; ") + ")";
      if (m.return_type) head += ": " + to_string(*m.return_type);
      line(1, head);
      if (!m.require.empty()) {
        line(2, "require");
        for (const auto& r : m.require) line(3, print(r));
      }
      if (!m.locals.empty()) {
        line(2, "local");
        for (const auto& l : m.locals) line(3, l.name + ": " + to_string(l.type));
      }
      line(2, "do");
      stmts(3, m.body);
      line(2, "end");
    }
    line(0, "end");
  }

  void stmts(int d, const std::vector<Stmt>& ss) {
    for (const auto& s : ss) stmt(d, s);
  }

  void stmt(int d, const Stmt& s) {
    switch (s.kind) {
      case Stmt::Kind::Create: {
        std::string t = "create " + s.name;
        if (!s.creator.empty()) {
          t += "." + s.creator;
          if (s.has_creator_args) {
            t += " (";
            for (std::size_t i = 0; i < s.args.size(); ++i) {
              if (i) t += ", ";
              t += print(s.args[i]);
            }
            t += ")";
          }
        }
        line(d, t);
        break;
      }
      case Stmt::Kind::Assign:
        line(d, s.name + " := " + print(s.expr));
        break;
      case Stmt::Kind::Call:
        line(d, print(s.expr));
        break;
      case Stmt::Kind::If:
        line(d, "if " + print(s.expr) + " then");
        stmts(d + 1, s.body);
        if (!s.else_body.empty()) {
          line(d, "else");
          stmts(d + 1, s.else_body);
        }
        line(d, "end");
        break;
      case Stmt::Kind::Loop:
        line(d, "from");
        stmts(d + 1, s.init);
        line(d, "until");
        line(d + 1, print(s.expr));
        line(d, "loop");
        stmts(d + 1, s.body);
        line(d, "end");
        break;
      case Stmt::Kind::Separate: {
        std::string t = "separate ";
        for (std::size_t i = 0; i < s.targets.size(); ++i) {
          if (i) t += ", ";
          t += s.targets[i];
        }
        line(d, t + " do");
        stmts(d + 1, s.body);
        line(d, "end");
        break;
      }
    }
  }

  std::ostringstream os_;
};

}  // namespace

std::string print(const Expr& e) {
  std::ostringstream os;
  switch (e.kind) {
    case Expr::Kind::Integer:
      os << e.integer;
      break;
    case Expr::Kind::Boolean:
      os << (e.boolean ? "True" : "False");
      break;
    case Expr::Kind::Void:
      os << "Void";
      break;
    case Expr::Kind::Feature:
      if (e.has_target) os << print(e.operands.front()) << ".";
      os << e.name;
      print_args(os, e);
      break;
    case Expr::Kind::Unary:
      os << "(" << spelling(e.unary) << " " << print(e.operands[0]) << ")";
      break;
    case Expr::Kind::Binary:
      os << "(" << print(e.operands[0]) << " " << spelling(e.binary) << " " << print(e.operands[1]) << ")";
      break;
  }
  return os.str();
}

std::string print(const Program& program) { return Printer{}.run(program); }

}  // namespace scoopw::frontend
