#include <algorithm>
#include <set>

#include "scoopw/explore/explorer.hpp"
#include "scoopw/state/canonical.hpp"
#include "support.hpp"

using namespace scoopw;

namespace {

ExploreOptions with(Strategy s, std::vector<ErrorRule> rules = {}) {
  ExploreOptions o;
  o.strategy = s;
  o.rules = std::move(rules);
  return o;
}

std::set<std::string> final_keys(const StateSpace& s) {
  std::set<std::string> out;
  for (StateId id : s.finals()) out.insert(s.states[id].key);
  return out;
}

// A client that keeps poking a cell forever: no final state is reachable.
// The query keeps the inbox bounded.
const char* kForever = R"(
class APPLICATION
  make
    local c: separate CELL  v: INTEGER
    do
      create c
      from until False loop
        separate c do
          c.poke
          v := c.value
        end
      end
    end
end
class CELL
  n: INTEGER
  poke do n := 1 - n end
  value: INTEGER do Result := n end
end
)";

}  // namespace

TEST_CASE("initial fixpoint is configuration one") {
  auto engine = testing::bench_engine("colours", "rq");
  ExploreOptions o;
  o.limits.max_states = 1;
  StateSpace s = explore(engine, o);
  CHECK(s.stats.configurations == 1);
  CHECK(s.truncated);
  CHECK(s.truncation == "max_states");
  CHECK(s.states[0].key == canonical_key(engine.initial()));
  CHECK(verdict(s, "deadlock") == Verdict::Unknown);
}

TEST_CASE("depth and time limits truncate") {
  auto engine = testing::bench_engine("dp_lazy_2", "qoq");
  ExploreOptions o;
  o.limits.max_depth = 3;
  StateSpace s = explore(engine, o);
  CHECK(s.truncated);
  for (const auto& r : s.states) CHECK(r.depth <= 3);
  ExploreOptions t;
  t.limits.time_budget = std::chrono::milliseconds(1);
  t.strategy = Strategy::Dfs;
  CHECK(explore(testing::bench_engine("dp_eager_3", "dscoop"), t).truncated);
}

TEST_CASE("strategies agree") {
  for (const char* id : {"dp_lazy_2", "colours", "producer_consumer_5"}) {
    CAPTURE(id);
    auto engine = testing::bench_engine(id, "qoq");
    auto rules = parse_builtin_rules("deadlock,stuck");
    StateSpace bfs = explore(engine, with(Strategy::Bfs, rules));
    StateSpace dfs = explore(engine, with(Strategy::Dfs, rules));
    StateSpace par = explore(engine, with(Strategy::Parallel, rules));
    CHECK(bfs.sorted_keys() == dfs.sorted_keys());
    CHECK(bfs.sorted_keys() == par.sorted_keys());
    CHECK(final_keys(bfs) == final_keys(dfs));
    CHECK(final_keys(bfs) == final_keys(par));
    CHECK(bfs.stats.transitions == dfs.stats.transitions);
    CHECK(bfs.stats.transitions == par.stats.transitions);
    for (const auto& r : rules) {
      CHECK(verdict(bfs, r.name) == verdict(dfs, r.name));
      CHECK(verdict(bfs, r.name) == verdict(par, r.name));
    }
  }
}

TEST_CASE("parallel exploration numbers states like BFS") {
  auto engine = testing::bench_engine("stack", "dscoop");
  StateSpace bfs = explore(engine, with(Strategy::Bfs));
  for (unsigned w : {1u, 2u, 7u}) {
    ExploreOptions o = with(Strategy::Parallel);
    o.workers = w;
    StateSpace par = explore(engine, o);
    REQUIRE(par.states.size() == bfs.states.size());
    bool same = true;
    for (std::size_t i = 0; i < bfs.states.size(); ++i) same = same && bfs.states[i].key == par.states[i].key;
    CHECK(same);
  }
}

TEST_CASE("witnesses replay to the state they name") {
  auto engine = testing::bench_engine("dp_lazy_2", "rq");
  StateSpace s = explore(engine, with(Strategy::Bfs, {deadlock_rule_spec()}));
  auto id = s.first_error("deadlock");
  REQUIRE(id);
  Configuration c = engine.initial();
  for (const TransitionLabel& l : s.witness(*id)) {
    bool found = false;
    for (auto& succ : engine.successors(c)) {
      if (succ.label == l) {
        c = std::move(succ.config);
        found = true;
        break;
      }
    }
    REQUIRE(found);
  }
  CHECK_FALSE(c.error);
  c.error = s.states[*id].error;
  CHECK(canonical_key(c) == s.states[*id].key);
  CHECK(s.witness(*id).size() == s.states[*id].depth);
}

TEST_CASE("error states are final and never expanded") {
  auto engine = testing::bench_engine("dp_eager_2", "qoq");
  StateSpace s = explore(engine, with(Strategy::Bfs, parse_builtin_rules("mutex:eat")));
  REQUIRE_FALSE(s.error_states.empty());
  std::set<StateId> errors(s.error_states.begin(), s.error_states.end());
  for (const Transition& t : s.transitions) CHECK(errors.count(t.from) == 0);
  for (StateId e : errors) {
    CHECK(s.states[e].final);
    CHECK_FALSE(s.states[e].expanded);
    CHECK(s.states[e].config);
  }
  CHECK(s.stats.errors.size() == errors.size());
}

TEST_CASE("collision checking finds none") {
  ExploreOptions o;
  o.check_collisions = true;
  StateSpace s = explore(testing::bench_engine("bank_transfer", "dscoop"), o);
  CHECK(s.stats.configurations == s.states.size());
}

TEST_CASE("on_state sees every state once") {
  std::size_t calls = 0;
  ExploreOptions o = with(Strategy::Parallel);
  o.on_state = [&](StateId, const Configuration&) { ++calls; };
  StateSpace s = explore(testing::bench_engine("colours", "qoq"), o);
  CHECK(calls == s.states.size());
}

TEST_CASE("terminal SCCs without finals are reported") {
  auto engine = testing::make_engine(testing::compile_ok(kForever), "qoq");
  StateSpace s = explore(engine);
  CHECK_FALSE(s.truncated);
  CHECK(s.finals().empty());
  auto report = terminal_scc_report(s);
  REQUIRE_FALSE(report.empty());

  // Brute force: a state is in a terminal SCC iff everything it reaches
  // reaches it back.
  const std::size_t n = s.states.size();
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) reach[i][i] = true;
  for (const Transition& t : s.transitions) reach[t.from][t.to] = true;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (reach[i][k])
        for (std::size_t j = 0; j < n; ++j)
          if (reach[k][j]) reach[i][j] = true;
  std::set<StateId> expected;
  for (std::size_t i = 0; i < n; ++i) {
    bool closed = true;
    for (std::size_t j = 0; j < n; ++j) closed = closed && (!reach[i][j] || reach[j][i]);
    if (closed) expected.insert(static_cast<StateId>(i));
  }
  std::set<StateId> got;
  for (const auto& scc : report) got.insert(scc.states.begin(), scc.states.end());
  CHECK(got == expected);
  CHECK(std::find(report[0].rules.begin(), report[0].rules.end(), Rule::Reserve) != report[0].rules.end());

  CHECK(terminal_scc_report(explore(testing::bench_engine("colours", "rq"))).empty());
}

TEST_CASE("stats_diff subtracts and pairs verdicts") {
  auto p = testing::bench_program("dp_lazy_2");
  auto rules = std::vector<ErrorRule>{deadlock_rule_spec()};
  StateSpace rq = explore(testing::make_engine(p, "rq"), with(Strategy::Bfs, rules));
  StateSpace qoq = explore(testing::make_engine(p, "qoq"), with(Strategy::Bfs, rules));
  DiffRecord d = stats_diff(rq, qoq, rules);
  CHECK(d.configurations ==
        static_cast<std::int64_t>(qoq.stats.configurations) - static_cast<std::int64_t>(rq.stats.configurations));
  CHECK(d.finals == static_cast<std::int64_t>(qoq.stats.finals) - static_cast<std::int64_t>(rq.stats.finals));
  REQUIRE(d.verdicts.size() == 1);
  CHECK(d.verdicts[0].a == Verdict::Yes);
  CHECK(d.verdicts[0].b == Verdict::No);

  ExploreOptions cut = with(Strategy::Bfs, rules);
  cut.limits.max_states = 10;
  DiffRecord u = stats_diff(explore(testing::make_engine(p, "qoq"), cut), qoq, rules);
  CHECK(u.verdicts[0].a == Verdict::Unknown);
}

TEST_CASE("dscoop without separate creations is qoq") {
  const char* src = R"(
class APPLICATION
  make
    local c: COUNTER  i: INTEGER
    do
      create c
      from i := 0 until i = 3 loop
        c.bump (i)
        i := i + 1
      end
    end
end
class COUNTER
  total: INTEGER
  bump (k: INTEGER) do total := total + k end
end
)";
  auto p = testing::compile_ok(src);
  StateSpace q = explore(testing::make_engine(p, "qoq"));
  StateSpace d = explore(testing::make_engine(p, "dscoop"));
  CHECK(q.sorted_keys() == d.sorted_keys());
}
