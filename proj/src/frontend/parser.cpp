#include "scoopw/frontend/parser.hpp"

#include <charconv>
#include <set>
#include <stdexcept>
#include <string>

#include "scoopw/frontend/lexer.hpp"

namespace scoopw::frontend {

namespace {

struct SyntaxError {
  Diagnostic diag;
};

std::string describe(const Token& t) {
  switch (t.kind) {
    case TokenKind::End:
      return "end of input";
    case TokenKind::Invalid:
      return "invalid character '" + t.text + "'";
    default:
      return "'" + t.text + "'";
  }
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  Program parse_program() {
    Program p;
    if (peek().kind == TokenKind::End) fail(peek(), {"'class'"});
    while (peek().kind != TokenKind::End) p.classes.push_back(parse_class());
    return p;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    std::size_t i = std::min(pos_ + ahead, toks_.size() - 1);
    return toks_[i];
  }
  const Token& next() {
    const Token& t = toks_[pos_];
    if (pos_ + 1 < toks_.size()) ++pos_;
    return t;
  }

  [[noreturn]] void fail(const Token& at, std::initializer_list<std::string> expected) {
    std::string msg = "syntax error: expected ";
    bool first = true;
    for (const auto& e : expected) {
      if (!first) msg += " or ";
      msg += e;
      first = false;
    }
    msg += ", found " + describe(at);
    throw SyntaxError{{at.pos, msg}};
  }
  [[noreturn]] void fail_msg(SourcePos pos, std::string msg) { throw SyntaxError{{pos, std::move(msg)}}; }

  const Token& expect_keyword(const char* kw) {
    if (!peek().is_keyword(kw)) fail(peek(), {std::string("'") + kw + "'"});
    return next();
  }
  const Token& expect_symbol(const char* s) {
    if (!peek().is_symbol(s)) fail(peek(), {std::string("'") + s + "'"});
    return next();
  }
  const Token& expect_identifier() {
    if (peek().kind != TokenKind::Identifier) fail(peek(), {"identifier"});
    return next();
  }
  bool accept_symbol(const char* s) {
    if (peek().is_symbol(s)) {
      next();
      return true;
    }
    return false;
  }

  ClassDecl parse_class() {
    const Token& kw = expect_keyword("class");
    ClassDecl c;
    c.pos = kw.pos;
    c.name = expect_identifier().text;
    while (!peek().is_keyword("end")) {
      if (peek().is_keyword("inherit")) fail_msg(peek().pos, "inheritance is not supported");
      if (peek().kind != TokenKind::Identifier) fail(peek(), {"feature name", "'end'"});
      parse_feature(c);
    }
    next();
    return c;
  }

  static bool starts_method_body(const Token& t) {
    return t.is_keyword("require") || t.is_keyword("local") || t.is_keyword("do");
  }

  void parse_feature(ClassDecl& c) {
    const Token& name = next();
    if (peek().is_symbol(",")) {
      // attribute list `a, b: T`
      std::vector<const Token*> names{&name};
      while (accept_symbol(",")) names.push_back(&expect_identifier());
      expect_symbol(":");
      TypeRef t = parse_type();
      for (const Token* n : names) c.attributes.push_back({n->text, t, n->pos});
      return;
    }
    MethodDecl m;
    m.name = name.text;
    m.pos = name.pos;
    if (peek().is_symbol("(")) {
      next();
      if (!peek().is_symbol(")")) {
        parse_formal_group(m.formals);
        while (accept_symbol(";") || accept_symbol(",")) parse_formal_group(m.formals);
      }
      expect_symbol(")");
      if (accept_symbol(":")) m.return_type = parse_type();
    } else if (peek().is_symbol(":")) {
      next();
      TypeRef t = parse_type();
      if (!starts_method_body(peek())) {
        c.attributes.push_back({name.text, t, name.pos});
        return;
      }
      m.return_type = t;
    } else if (!starts_method_body(peek())) {
      fail(peek(), {"':'", "'('", "'require'", "'local'", "'do'"});
    }
    parse_method_rest(m);
    c.methods.push_back(std::move(m));
  }

  // `a, b: T`. The caller handles separators between groups.
  void parse_formal_group(std::vector<Formal>& out) {
    std::vector<const Token*> names{&expect_identifier()};
    while (accept_symbol(",")) names.push_back(&expect_identifier());
    expect_symbol(":");
    TypeRef t = parse_type();
    for (const Token* n : names) out.push_back({n->text, t, n->pos});
  }

  TypeRef parse_type() {
    TypeRef t;
    SourcePos pos = peek().pos;
    if (peek().is_keyword("separate")) {
      next();
      t.is_separate = true;
    }
    if (peek().is_keyword("INTEGER")) {
      next();
      t.base = TypeRef::Base::Integer;
    } else if (peek().is_keyword("BOOLEAN")) {
      next();
      t.base = TypeRef::Base::Boolean;
    } else if (peek().kind == TokenKind::Identifier) {
      t.base = TypeRef::Base::Class;
      t.class_name = next().text;
    } else {
      fail(peek(), {"type name"});
    }
    if (t.is_separate && !t.is_reference()) fail_msg(pos, "INTEGER and BOOLEAN cannot be separate");
    return t;
  }

  void parse_method_rest(MethodDecl& m) {
    if (peek().is_keyword("require")) {
      next();
      parse_clauses(m.require, "'local' or 'do'");
      if (m.require.empty()) fail(peek(), {"precondition clause"});
    }
    if (peek().is_keyword("local")) {
      next();
      while (peek().kind == TokenKind::Identifier) {
        std::vector<const Token*> names{&next()};
        while (accept_symbol(",")) names.push_back(&expect_identifier());
        expect_symbol(":");
        TypeRef t = parse_type();
        for (const Token* n : names) m.locals.push_back({n->text, t, n->pos});
        accept_symbol(";");
      }
    }
    expect_keyword("do");
    m.body = parse_stmts();
    if (peek().is_keyword("ensure")) {
      next();
      std::vector<Expr> ignored;
      parse_clauses(ignored, "'end'");
      m.had_ensure = true;
    }
    expect_keyword("end");
  }

  void parse_clauses(std::vector<Expr>& out, const char*) {
    while (starts_expr(peek())) {
      // optional clause tag `tag: expr`
      if (peek().kind == TokenKind::Identifier && peek(1).is_symbol(":")) {
        next();
        next();
      }
      out.push_back(parse_expr());
      accept_symbol(";");
    }
  }

  static bool starts_expr(const Token& t) {
    return t.kind == TokenKind::Identifier || t.kind == TokenKind::Integer || t.is_keyword("True") ||
           t.is_keyword("False") || t.is_keyword("Void") || t.is_keyword("not") || t.is_symbol("-") ||
           t.is_symbol("(");
  }

  static bool ends_block(const Token& t) {
    return t.is_keyword("end") || t.is_keyword("else") || t.is_keyword("elseif") || t.is_keyword("until") ||
           t.is_keyword("loop") || t.is_keyword("ensure") || t.kind == TokenKind::End;
  }

  std::vector<Stmt> parse_stmts() {
    std::vector<Stmt> out;
    while (!ends_block(peek())) {
      out.push_back(parse_stmt());
      accept_symbol(";");
    }
    return out;
  }

  Stmt parse_stmt() {
    const Token& t = peek();
    Stmt s;
    s.pos = t.pos;
    if (t.is_keyword("create")) {
      next();
      s.kind = Stmt::Kind::Create;
      s.name = expect_identifier().text;
      if (accept_symbol(".")) {
        s.creator = expect_identifier().text;
        if (peek().is_symbol("(")) {
          s.has_creator_args = true;
          s.args = parse_args();
        }
      }
      return s;
    }
    if (t.is_keyword("if")) {
      next();
      return parse_if_rest(s);
    }
    if (t.is_keyword("from")) {
      next();
      s.kind = Stmt::Kind::Loop;
      s.init = parse_stmts();
      expect_keyword("until");
      s.expr = parse_expr();
      expect_keyword("loop");
      s.body = parse_stmts();
      expect_keyword("end");
      return s;
    }
    if (t.is_keyword("separate")) {
      next();
      s.kind = Stmt::Kind::Separate;
      s.targets.push_back(expect_identifier().text);
      while (accept_symbol(",")) s.targets.push_back(expect_identifier().text);
      expect_keyword("do");
      s.body = parse_stmts();
      expect_keyword("end");
      return s;
    }
    if (t.kind == TokenKind::Identifier) {
      if (peek(1).is_symbol(":=")) {
        s.kind = Stmt::Kind::Assign;
        s.name = next().text;
        const Token& assign = next();
        if (!starts_expr(peek())) {
          fail_msg(assign.pos, "syntax error: dangling ':=', expected expression, found " + describe(peek()));
        }
        s.expr = parse_expr();
        return s;
      }
      s.kind = Stmt::Kind::Call;
      s.expr = parse_feature_chain();
      return s;
    }
    fail(t, {"statement"});
  }

  Stmt parse_if_rest(Stmt& s) {
    s.kind = Stmt::Kind::If;
    s.expr = parse_expr();
    expect_keyword("then");
    s.body = parse_stmts();
    if (peek().is_keyword("elseif")) {
      Stmt nested;
      nested.pos = next().pos;
      s.else_body.push_back(parse_if_rest(nested));
      return s;  // the nested if consumed the shared `end`
    }
    if (peek().is_keyword("else")) {
      next();
      s.else_body = parse_stmts();
    }
    expect_keyword("end");
    return s;
  }

  std::vector<Expr> parse_args() {
    expect_symbol("(");
    std::vector<Expr> args;
    if (!peek().is_symbol(")")) {
      args.push_back(parse_expr());
      while (accept_symbol(",")) args.push_back(parse_expr());
    }
    expect_symbol(")");
    return args;
  }

  Expr parse_feature_chain() {
    const Token& first = expect_identifier();
    Expr e;
    e.kind = Expr::Kind::Feature;
    e.pos = first.pos;
    e.name = first.text;
    if (peek().is_symbol("(")) {
      e.has_args = true;
      e.operands = parse_args();
    }
    while (peek().is_symbol(".")) {
      next();
      const Token& n = expect_identifier();
      Expr outer;
      outer.kind = Expr::Kind::Feature;
      outer.pos = n.pos;
      outer.name = n.text;
      outer.has_target = true;
      outer.operands.push_back(std::move(e));
      if (peek().is_symbol("(")) {
        outer.has_args = true;
        for (auto& a : parse_args()) outer.operands.push_back(std::move(a));
      }
      e = std::move(outer);
    }
    return e;
  }

  Expr make_binary(BinaryOp op, SourcePos pos, Expr l, Expr r) {
    Expr e;
    e.kind = Expr::Kind::Binary;
    e.binary = op;
    e.pos = pos;
    e.operands.push_back(std::move(l));
    e.operands.push_back(std::move(r));
    return e;
  }

  Expr parse_expr() { return parse_or(); }

  Expr parse_or() {
    Expr l = parse_and();
    while (peek().is_keyword("or")) {
      SourcePos p = next().pos;
      l = make_binary(BinaryOp::Or, p, std::move(l), parse_and());
    }
    return l;
  }
  Expr parse_and() {
    Expr l = parse_cmp();
    while (peek().is_keyword("and")) {
      SourcePos p = next().pos;
      l = make_binary(BinaryOp::And, p, std::move(l), parse_cmp());
    }
    return l;
  }
  Expr parse_cmp() {
    Expr l = parse_add();
    static const std::pair<const char*, BinaryOp> ops[] = {
        {"=", BinaryOp::Eq}, {"/=", BinaryOp::Ne}, {"<", BinaryOp::Lt},
        {"<=", BinaryOp::Le}, {">", BinaryOp::Gt}, {">=", BinaryOp::Ge},
    };
    for (const auto& [sym, op] : ops) {
      if (peek().is_symbol(sym)) {
        SourcePos p = next().pos;
        return make_binary(op, p, std::move(l), parse_add());
      }
    }
    return l;
  }
  Expr parse_add() {
    Expr l = parse_mul();
    while (peek().is_symbol("+") || peek().is_symbol("-")) {
      const Token& t = next();
      l = make_binary(t.text == "+" ? BinaryOp::Add : BinaryOp::Sub, t.pos, std::move(l), parse_mul());
    }
    return l;
  }
  Expr parse_mul() {
    Expr l = parse_unary();
    while (peek().is_symbol("*")) {
      SourcePos p = next().pos;
      l = make_binary(BinaryOp::Mul, p, std::move(l), parse_unary());
    }
    return l;
  }
  Expr parse_unary() {
    if (peek().is_keyword("not") || peek().is_symbol("-")) {
      const Token& t = next();
      Expr e;
      e.kind = Expr::Kind::Unary;
      e.unary = t.text == "not" ? UnaryOp::Not : UnaryOp::Neg;
      e.pos = t.pos;
      e.operands.push_back(parse_unary());
      return e;
    }
    return parse_primary();
  }
  Expr parse_primary() {
    const Token& t = peek();
    Expr e;
    e.pos = t.pos;
    if (t.kind == TokenKind::Integer) {
      next();
      e.kind = Expr::Kind::Integer;
      auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), e.integer);
      if (ec != std::errc()) fail_msg(t.pos, "integer literal out of range");
      return e;
    }
    if (t.is_keyword("True") || t.is_keyword("False")) {
      next();
      e.kind = Expr::Kind::Boolean;
      e.boolean = t.text == "True";
      return e;
    }
    if (t.is_keyword("Void")) {
      next();
      e.kind = Expr::Kind::Void;
      return e;
    }
    if (t.is_symbol("(")) {
      next();
      Expr inner = parse_expr();
      expect_symbol(")");
      return inner;
    }
    if (t.kind == TokenKind::Identifier) return parse_feature_chain();
    fail(t, {"expression"});
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

void check_duplicates(const Program& p, std::vector<Diagnostic>& errors) {
  std::set<std::string> classes;
  for (const auto& c : p.classes) {
    if (!classes.insert(c.name).second) errors.push_back({c.pos, "duplicate class '" + c.name + "'"});
    std::set<std::string> features;
    for (const auto& a : c.attributes) {
      if (!features.insert(a.name).second) {
        errors.push_back({a.pos, "duplicate feature '" + a.name + "' in class " + c.name});
      }
    }
    for (const auto& m : c.methods) {
      if (!features.insert(m.name).second) {
        errors.push_back({m.pos, "duplicate feature '" + m.name + "' in class " + c.name});
      }
    }
  }
}

}  // namespace

ParseResult parse(std::string_view source) {
  ParseResult result;
  Parser parser(tokenize(source));
  try {
    Program p = parser.parse_program();
    check_duplicates(p, result.errors);
    if (result.errors.empty()) result.program = std::move(p);
  } catch (const SyntaxError& e) {
    result.errors.push_back(e.diag);
  }
  return result;
}

}  // namespace scoopw::frontend
