#include <algorithm>

#include "scoopw/frontend/parser.hpp"
#include "scoopw/frontend/printer.hpp"
#include "support.hpp"

using namespace scoopw;
using namespace scoopw::frontend;

namespace {

const char* kPhilosopher = R"(
class APPLICATION
  make do end
end

class FORK
  use do end
end

class PHILOSOPHER
  left_fork, right_fork: separate FORK
  times_to_eat: INTEGER

  live
    do
      from until times_to_eat < 1 loop
        eat (left_fork, right_fork)
        times_to_eat := times_to_eat - 1
      end
    end

  eat (left, right: separate FORK)
    do
      left.use
      right.use
    end

  eat_no_statements (left, right: separate FORK)
    do
    end

  bad_eat
    do
      pickup_left_then_right (left_fork)
    end

  pickup_left_then_right (left: separate FORK)
    do
      pickup_right_and_eat (left, right_fork)
    end

  pickup_right_and_eat (left, right: separate FORK)
    do
      left.use
      right.use
    end
end
)";

const MethodDecl* find_decl(const Program& p, const std::string& cls, const std::string& m) {
  const ClassDecl* c = p.find_class(cls);
  if (!c) return nullptr;
  for (const MethodDecl& d : c->methods) {
    if (d.name == m) return &d;
  }
  return nullptr;
}

std::vector<Action::Kind> kinds_in_order(const Cfg& g) {
  std::vector<Action::Kind> out;
  ControlState s = g.initial;
  while (s != g.final) {
    REQUIRE(g.out[s].size() == 1);
    const Edge& e = g.edges[g.out[s][0]];
    out.push_back(e.action.kind);
    s = e.to;
  }
  return out;
}

std::vector<std::string> errors_of(std::string_view src) {
  BuildResult r = build(src);
  std::vector<std::string> out;
  for (const auto& d : r.errors) out.push_back(d.message);
  return out;
}

bool has_error(std::string_view src, std::string_view fragment) {
  for (const auto& e : errors_of(src)) {
    if (e.find(fragment) != std::string::npos) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("minimal program parses with entry APPLICATION.make") {
  ParseResult r = parse("class APPLICATION make do end end");
  REQUIRE(r.ok());
  CHECK(r.program->classes.size() == 1);
  auto p = testing::compile_ok("class APPLICATION make do end end");
  CHECK(p->klass(p->entry_class).name == "APPLICATION");
  CHECK(p->method(p->entry_method).name == "make");
}

TEST_CASE("philosopher listing parses with the expected formals") {
  ParseResult r = parse(kPhilosopher);
  REQUIRE(r.ok());
  const Program& p = *r.program;
  REQUIRE(find_decl(p, "PHILOSOPHER", "eat"));
  CHECK(find_decl(p, "PHILOSOPHER", "eat")->formals.size() == 2);
  CHECK(find_decl(p, "PHILOSOPHER", "eat")->formals[0].type.is_separate);
  CHECK(find_decl(p, "PHILOSOPHER", "bad_eat")->formals.empty());
  CHECK(find_decl(p, "PHILOSOPHER", "pickup_left_then_right")->formals.size() == 1);
  CHECK(check(p).empty());
}

TEST_CASE("dangling assignment is a syntax error with a position") {
  ParseResult r = parse("class C m do x := end end");
  REQUIRE_FALSE(r.ok());
  REQUIRE_FALSE(r.errors.empty());
  CHECK(r.errors[0].pos.line == 1);
  CHECK(r.errors[0].pos.column == 16);
  CHECK(r.errors[0].message.find(":=") != std::string::npos);
}

TEST_CASE("duplicate names are rejected") {
  CHECK_FALSE(errors_of("class APPLICATION make do end end class APPLICATION end").empty());
  CHECK_FALSE(errors_of("class APPLICATION make do end make do end end").empty());
  CHECK_FALSE(errors_of("class APPLICATION x: INTEGER x: BOOLEAN make do end end").empty());
}

TEST_CASE("inheritance is rejected") {
  CHECK_FALSE(parse("class APPLICATION inherit B make do end end").ok());
}

TEST_CASE("separate call outside a block is uncontrolled") {
  const char* src = R"(
class APPLICATION
  f: separate FORK
  make do f.use end
end
class FORK use do end end
)";
  CHECK(has_error(src, "uncontrolled separate call"));
}

TEST_CASE("separate call inside an explicit block is controlled") {
  const char* src = R"(
class APPLICATION
  make
    local f: separate FORK
    do
      create f
      separate f do f.use end
    end
end
class FORK use do end end
)";
  CHECK(errors_of(src).empty());
}

TEST_CASE("wait condition must be boolean") {
  const char* src = R"(
class APPLICATION
  make do end
  m (f: separate FORK) require 1 + 2 do end
end
class FORK use do end end
)";
  CHECK(has_error(src, "wait condition must be BOOLEAN"));
}

TEST_CASE("entry method checks") {
  CHECK(has_error("class MAIN make do end end", "missing entry class APPLICATION"));
  CHECK(has_error("class APPLICATION make (x: INTEGER) do end end", "entry method must not take arguments"));
  CHECK(has_error("class APPLICATION make: INTEGER do end end", "entry method must be a command"));
  CHECK(has_error("class APPLICATION make local x: FOO do end end", "unknown class 'FOO'"));
}

TEST_CASE("misuse of queries and commands") {
  const char* q = R"(
class APPLICATION
  make do value end
  value: INTEGER do Result := 1 end
end
)";
  CHECK(has_error(q, "used as an instruction"));
  const char* c = R"(
class APPLICATION
  make local x: INTEGER do x := go end
  go do end
end
)";
  CHECK(has_error(c, "used as an expression"));
}

TEST_CASE("references crossing handlers must be separate formals") {
  const char* src = R"(
class APPLICATION
  make
    local f: separate FORK  o: THING
    do
      create f
      create o
      separate f do f.take (o) end
    end
end
class THING end
class FORK take (t: THING) do end end
)";
  CHECK(has_error(src, "must be separate to be passed across handlers"));
}

TEST_CASE("preconditions may only query controlled formals") {
  const char* src = R"(
class APPLICATION
  g: separate FORK
  make do end
  m (f: separate FORK) require g.ready do end
end
class FORK ready: BOOLEAN do Result := True end end
)";
  CHECK_FALSE(errors_of(src).empty());
}

TEST_CASE("postconditions are ignored with a warning") {
  BuildResult r = build(R"(
class APPLICATION
  make do end
  m (f: separate FORK) do ensure True end
end
class FORK end
)");
  REQUIRE(r.ok());
  REQUIRE(r.warnings.size() == 1);
  CHECK(r.warnings[0].message.find("postcondition") != std::string::npos);
}

TEST_CASE("eat lowers to five sequential edges") {
  auto p = testing::compile_ok(kPhilosopher);
  auto cls = p->find_class("PHILOSOPHER");
  REQUIRE(cls);
  auto eat = p->find_method(*cls, "eat");
  REQUIRE(eat);
  const Cfg& g = p->method(*eat).cfg;
  CHECK(g.edges.size() == 5);
  CHECK(kinds_in_order(g) == std::vector<Action::Kind>{Action::Kind::EnterBlock, Action::Kind::CommandCall,
                                                       Action::Kind::CommandCall, Action::Kind::ExitBlock,
                                                       Action::Kind::Return});
  const Action& enter = g.edges[g.out[g.initial][0]].action;
  CHECK(enter.block_targets == std::vector<std::uint32_t>{0, 1});
  CHECK_FALSE(enter.has_wait);
}

TEST_CASE("empty block body lowers to enter, exit, return") {
  auto p = testing::compile_ok(kPhilosopher);
  auto m = p->find_method(*p->find_class("PHILOSOPHER"), "eat_no_statements");
  REQUIRE(m);
  CHECK(kinds_in_order(p->method(*m).cfg) ==
        std::vector<Action::Kind>{Action::Kind::EnterBlock, Action::Kind::ExitBlock, Action::Kind::Return});
}

TEST_CASE("straight-line assignments") {
  auto p = testing::compile_ok(R"(
class APPLICATION
  make local x: INTEGER do x := 1 x := x + 1 end
end
)");
  const Cfg& g = p->method(p->entry_method).cfg;
  auto kinds = kinds_in_order(g);
  REQUIRE(kinds.size() == 3);
  CHECK(kinds[0] == Action::Kind::AssignLocal);
  CHECK(kinds[1] == Action::Kind::AssignLocal);
  CHECK(kinds[2] == Action::Kind::Return);
  // The body fragment spans three states; Return leads into the final state.
  CHECK(g.state_count == 4);
}

TEST_CASE("loops become guard back edges") {
  auto p = testing::compile_ok(kPhilosopher);
  auto live = p->find_method(*p->find_class("PHILOSOPHER"), "live");
  const Cfg& g = p->method(*live).cfg;
  std::size_t guards = 0;
  bool back_edge = false;
  for (const Edge& e : g.edges) {
    guards += e.action.kind == Action::Kind::Guard;
    back_edge = back_edge || e.to == g.initial;
  }
  CHECK(guards == 2);
  CHECK(back_edge);
}

TEST_CASE("wait conditions retry from the method entry") {
  auto p = testing::bench_program("producer_consumer_5");
  auto m = p->find_method(*p->find_class("PRODUCER"), "put_on_buffer");
  REQUIRE(m);
  const Cfg& g = p->method(*m).cfg;
  const Action& enter = g.edges[g.out[g.initial][0]].action;
  CHECK(enter.kind == Action::Kind::EnterBlock);
  CHECK(enter.has_wait);
  bool retry = false;
  for (const Edge& e : g.edges) {
    if (e.action.kind == Action::Kind::ExitBlock && e.action.retry) {
      retry = true;
      CHECK(e.to == g.initial);
    }
  }
  CHECK(retry);
}

TEST_CASE("query calls in expressions are hoisted left to right") {
  auto p = testing::compile_ok(R"(
class APPLICATION
  make
    local x: INTEGER
    do
      x := a + b
    end
  a: INTEGER do Result := 1 end
  b: INTEGER do Result := 2 end
end
)");
  const Cfg& g = p->method(p->entry_method).cfg;
  std::vector<std::string> calls;
  ControlState s = g.initial;
  while (s != g.final) {
    const Edge& e = g.edges[g.out[s][0]];
    if (e.action.kind == Action::Kind::QueryCall) calls.push_back(p->method(e.action.method).name);
    s = e.to;
  }
  CHECK(calls == std::vector<std::string>{"a", "b"});
}

TEST_CASE("every benchmark compiles cleanly, lints cleanly and round-trips through the printer") {
  for (const auto& b : bench::all()) {
    CAPTURE(b.id);
    BuildResult r = build(b.source);
    CHECK(r.errors.empty());
    CHECK(r.warnings.empty());
    REQUIRE(r.ok());
    CHECK(lint(*r.program).empty());
    for (MethodId m = 0; m < r.program->methods.size(); ++m) {
      const Cfg& g = r.program->method(m).cfg;
      CHECK(g.out[g.final].empty());
    }

    ParseResult first = parse(b.source);
    REQUIRE(first.ok());
    std::string printed = print(*first.program);
    ParseResult second = parse(printed);
    REQUIRE(second.ok());
    CHECK(same_structure(*first.program, *second.program));
    CHECK(print(*second.program) == printed);
  }
}

TEST_CASE("compilation is deterministic") {
  for (const char* id : {"dp_lazy_2", "producer_consumer_5", "colours"}) {
    auto a = testing::bench_program(id);
    auto b = testing::bench_program(id);
    REQUIRE(a->methods.size() == b->methods.size());
    for (MethodId m = 0; m < a->methods.size(); ++m) CHECK(dump_cfg(*a, m) == dump_cfg(*b, m));
  }
}

TEST_CASE("every CFG state is reachable from the initial state") {
  for (const auto& b : bench::all()) {
    auto p = testing::compile_ok(b.source);
    for (MethodId m = 0; m < p->methods.size(); ++m) {
      const Cfg& g = p->method(m).cfg;
      std::vector<bool> seen(g.state_count, false);
      std::vector<ControlState> todo{g.initial};
      seen[g.initial] = true;
      while (!todo.empty()) {
        ControlState s = todo.back();
        todo.pop_back();
        for (auto i : g.out[s]) {
          if (!seen[g.edges[i].to]) {
            seen[g.edges[i].to] = true;
            todo.push_back(g.edges[i].to);
          }
        }
      }
      CHECK(std::all_of(seen.begin(), seen.end(), [](bool x) { return x; }));
    }
  }
}
