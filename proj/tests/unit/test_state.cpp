#include <map>

#include "scoopw/state/canonical.hpp"
#include "scoopw/state/dump.hpp"
#include "scoopw/state/eval.hpp"
#include "support.hpp"

using namespace scoopw;

TEST_CASE("initial configuration shape") {
  for (const auto& b : bench::all()) {
    CAPTURE(b.id);
    auto p = testing::compile_ok(b.source);
    Configuration cfg = load_initial(*p);
    REQUIRE(cfg.handlers.size() == 1);
    CHECK(cfg.topology.node_count == 1);
    CHECK(cfg.handlers[0].node == 0);
    CHECK(cfg.handlers[0].heap.size() == 1);
    CHECK(cfg.handlers[0].heap[0].cls == p->entry_class);
    REQUIRE(cfg.handlers[0].stack.size() == 1);
    CHECK(cfg.handlers[0].stack[0].method == p->entry_method);
    CHECK(cfg.handlers[0].stack[0].state == p->method(p->entry_method).cfg.initial);
    CHECK(inbox_empty(cfg.handlers[0].inbox));
    CHECK_FALSE(cfg.error);
    CHECK(validate(cfg).empty());
  }
}

TEST_CASE("locals start at their type's default") {
  auto p = testing::compile_ok(R"(
class APPLICATION
  make
    local n: INTEGER  b: BOOLEAN  o: THING  s: separate THING
    do
    end
end
class THING end
)");
  Configuration cfg = load_initial(*p);
  const Frame& f = cfg.handlers[0].stack[0];
  REQUIRE(f.locals.size() == 4);
  CHECK(f.locals[0] == Value::of_int(0));
  CHECK(f.locals[1] == Value::of_bool(false));
  CHECK(f.locals[2].is_void());
  CHECK(f.locals[3].is_void());
}

TEST_CASE("loading twice gives the same key") {
  auto p = testing::bench_program("dp_lazy_2");
  CHECK(canonical_key(load_initial(*p)) == canonical_key(load_initial(*p)));
  CHECK(dump(load_initial(*p)) == dump(load_initial(*p)));
}

TEST_CASE("keys separate configurations that differ") {
  auto p = testing::bench_program("colours");
  Configuration a = load_initial(*p);
  Configuration b = a;
  b.handlers[0].stack[0].state += 1;
  CHECK(canonical_key(a) != canonical_key(b));
  Configuration c = a;
  c.error = ErrorMarker{};
  CHECK(canonical_key(a) != canonical_key(c));
  Configuration d = load_initial(*p, InboxRQ{});
  CHECK(canonical_key(a) != canonical_key(d));
}

TEST_CASE("equal keys mean equal configurations over a whole state space") {
  auto engine = testing::bench_engine("stack", "qoq");
  std::map<std::string, Configuration> seen;
  std::vector<Configuration> todo{engine.initial()};
  while (!todo.empty()) {
    Configuration c = std::move(todo.back());
    todo.pop_back();
    std::string k = canonical_key(c);
    auto [it, fresh] = seen.emplace(k, c);
    if (!fresh) {
      CHECK(it->second == c);
      continue;
    }
    for (auto& s : engine.enumerate_sync_steps(c)) todo.push_back(std::move(s.config));
  }
  CHECK(seen.size() > 100);
}

TEST_CASE("checked arithmetic") {
  CHECK(checked_add(2, 3) == 5);
  CHECK_THROWS_AS(checked_add(INT64_MAX, 1), RuntimeFault);
  CHECK_THROWS_AS(checked_sub(INT64_MIN, 1), RuntimeFault);
  CHECK_THROWS_AS(checked_mul(INT64_MAX, 2), RuntimeFault);
  try {
    checked_mul(INT64_MAX, 2);
  } catch (const RuntimeFault& f) {
    CHECK(f.kind() == ErrorKind::Overflow);
  }
}

TEST_CASE("gc drops closed drained subqueues only") {
  auto p = testing::bench_program("colours");
  Configuration cfg = load_initial(*p);
  auto& inbox = std::get<InboxQoQ>(cfg.handlers[0].inbox);
  Subqueue open;
  Subqueue closed;
  closed.open = false;
  Subqueue closed_busy;
  closed_busy.open = false;
  closed_busy.requests.push_back(Request{});
  inbox.subqueues = {closed, open, closed_busy};
  gc(cfg);
  REQUIRE(inbox.subqueues.size() == 2);
  CHECK(inbox.subqueues[0].open);
  CHECK(inbox.subqueues[1].requests.size() == 1);
}

TEST_CASE("block instance ids take the smallest free id") {
  auto p = testing::bench_program("colours");
  Configuration cfg = load_initial(*p);
  CHECK(allocate_block_instance(cfg, 0) == 0);
  cfg.handlers[0].stack[0].blocks.push_back({0, 0, {}});
  CHECK(allocate_block_instance(cfg, 0) == 1);
  Subqueue sq;
  sq.client = 0;
  sq.block = 1;
  Handler other;
  other.inbox = InboxQoQ{{sq}};
  cfg.handlers.push_back(other);
  CHECK(allocate_block_instance(cfg, 0) == 2);
  cfg.handlers[0].stack[0].blocks.clear();
  CHECK(allocate_block_instance(cfg, 0) == 0);
  CHECK(allocate_block_instance(cfg, 1) == 0);
}

TEST_CASE("dump lists handlers, frames and queues") {
  auto engine = testing::bench_engine("colours", "rq");
  Configuration cfg = engine.initial();
  std::string text = dump(cfg);
  CHECK(text.find("handler h0 node 0") != std::string::npos);
  CHECK(text.find("frame APPLICATION.make") != std::string::npos);
  CHECK(text.find("queue") != std::string::npos);
}
