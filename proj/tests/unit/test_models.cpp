#include "support.hpp"

using namespace scoopw;

namespace {

// Root handler plus `extra` idle handlers, created by the root.
Configuration world(const ExecutionModel& m, std::size_t extra) {
  static auto p = testing::bench_program("colours");
  Configuration cfg = load_initial(*p, m.make_inbox());
  for (std::size_t i = 0; i < extra; ++i) {
    Handler h;
    h.inbox = m.make_inbox();
    h.node = m.on_create_separate(cfg, 0);
    cfg.handlers.push_back(std::move(h));
  }
  return cfg;
}

Request req(HandlerId client, BlockInstanceId block, std::uint32_t seq) {
  Request r;
  r.client = client;
  r.block = block;
  r.seq = seq;
  return r;
}

ActiveBlock block_of(const ReserveRequest& r) {
  ActiveBlock b;
  b.id = r.instance;
  for (HandlerId t : r.targets) b.targets.push_back({t, 0});
  return b;
}

}  // namespace

TEST_CASE("make_model knows three models") {
  CHECK(model_ids() == std::vector<std::string>{"rq", "qoq", "dscoop"});
  for (const auto& id : model_ids()) CHECK(make_model(id)->id() == id);
  CHECK_THROWS_AS(make_model("scoop"), std::invalid_argument);
}

TEST_CASE("rq reservations take all locks or none") {
  RqModel m;
  Configuration cfg = world(m, 3);
  ReserveRequest a{0, 0, {1, 2}};
  std::vector<ReserveStep> steps;
  m.reserve_steps(cfg, a, steps);
  REQUIRE(steps.size() == 1);
  CHECK(steps[0].rule == Rule::Reserve);
  CHECK(steps[0].entered);
  Configuration held = steps[0].config;
  CHECK(std::get<InboxRQ>(held.handlers[1].inbox).lock_owner == 0);
  CHECK(std::get<InboxRQ>(held.handlers[2].inbox).lock_owner == 0);
  CHECK(std::get<InboxRQ>(held.handlers[3].inbox).lock_owner == kNoHandler);

  // Another client wanting 2 and 3 gets nothing, not even 3.
  ReserveRequest b{1, 0, {3, 2}};
  steps.clear();
  m.reserve_steps(held, b, steps);
  CHECK(steps.empty());
  auto edges = m.reserve_blockers(held, b);
  REQUIRE(edges.size() == 1);
  CHECK(edges[0] == WaitEdge{1, "lock", 2, 0});
  CHECK(m.reserve_blockers(cfg, b).empty());

  m.release(held, 0, block_of(a));
  CHECK(std::get<InboxRQ>(held.handlers[1].inbox).lock_owner == kNoHandler);
  steps.clear();
  m.reserve_steps(held, b, steps);
  CHECK(steps.size() == 1);
}

TEST_CASE("rq queues are FIFO unless the fault hook is on") {
  for (bool newest : {false, true}) {
    RqModel m({newest, PrelockOrder::Ascending});
    Configuration cfg = world(m, 1);
    std::vector<ReserveStep> steps;
    m.reserve_steps(cfg, {0, 0, {1}}, steps);
    cfg = steps.at(0).config;
    m.enqueue(cfg, 1, req(0, 0, 0));
    m.enqueue(cfg, 1, req(0, 0, 1));
    auto r = m.take_request(cfg, 1);
    REQUIRE(r);
    CHECK(r->seq == (newest ? 1u : 0u));
    CHECK(m.take_request(cfg, 1));
    CHECK_FALSE(m.take_request(cfg, 1));
  }
}

TEST_CASE("qoq reservations never block") {
  QoqModel m;
  Configuration cfg = world(m, 2);
  std::vector<ReserveStep> steps;
  m.reserve_steps(cfg, {0, 0, {1, 2}}, steps);
  REQUIRE(steps.size() == 1);
  cfg = steps[0].config;
  steps.clear();
  m.reserve_steps(cfg, {3, 0, {2, 1}}, steps);
  REQUIRE(steps.size() == 1);
  CHECK(steps[0].entered);
  cfg = steps[0].config;
  CHECK(m.reserve_blockers(cfg, {3, 1, {1}}).empty());
  const auto& sq = std::get<InboxQoQ>(cfg.handlers[1].inbox).subqueues;
  REQUIRE(sq.size() == 2);
  CHECK(sq[0].client == 0);
  CHECK(sq[1].client == 3);
  CHECK(sq[0].open);
}

TEST_CASE("qoq serves subqueues one at a time") {
  QoqModel m;
  Configuration cfg = world(m, 1);
  std::vector<ReserveStep> steps;
  ReserveRequest a{0, 0, {1}};
  ReserveRequest b{2, 0, {1}};
  m.reserve_steps(cfg, a, steps);
  m.reserve_steps(steps.back().config, b, steps);
  cfg = steps.back().config;
  m.enqueue(cfg, 1, req(2, 0, 0));

  // The head subqueue is open and empty: the supplier must wait for client 0.
  CHECK_FALSE(m.take_request(cfg, 1));
  auto edges = m.idle_edges(cfg, 1);
  REQUIRE(edges.size() == 1);
  CHECK(edges[0] == WaitEdge{1, "subqueue", 0, 0});

  m.enqueue(cfg, 1, req(0, 0, 0));
  auto r = m.take_request(cfg, 1);
  REQUIRE(r);
  CHECK(r->client == 0);
  CHECK_FALSE(m.take_request(cfg, 1));

  // Closing the drained head lets the next subqueue through, and gc drops it.
  m.release(cfg, 0, block_of(a));
  r = m.take_request(cfg, 1);
  REQUIRE(r);
  CHECK(r->client == 2);
  gc(cfg);
  CHECK(std::get<InboxQoQ>(cfg.handlers[1].inbox).subqueues.size() == 1);
  CHECK(m.idle_edges(cfg, 1).size() == 1);
  m.release(cfg, 2, block_of(b));
  gc(cfg);
  CHECK(std::get<InboxQoQ>(cfg.handlers[1].inbox).subqueues.empty());
  CHECK(m.idle_edges(cfg, 1).empty());
}

TEST_CASE("dscoop gives every separate handler its own node") {
  DscoopModel m;
  Configuration cfg = world(m, 3);
  CHECK(cfg.topology.node_count == 4);
  for (HandlerId h = 0; h < 4; ++h) CHECK(cfg.handlers[h].node == h);
  CHECK(cfg.topology.prelock_owner.size() == 4);

  QoqModel q;
  Configuration shared = world(q, 3);
  CHECK(shared.topology.node_count == 1);
}

TEST_CASE("dscoop prelocks node by node, then locks") {
  DscoopModel m;
  Configuration cfg = world(m, 3);
  ReserveRequest r{0, 0, {3, 1}};
  CHECK(m.prelock_plan(cfg, r) == std::vector<NodeId>{1, 3});

  std::vector<Rule> rules;
  std::vector<NodeId> nodes;
  for (int i = 0; i < 5; ++i) {
    std::vector<ReserveStep> steps;
    m.reserve_steps(cfg, r, steps);
    REQUIRE(steps.size() == 1);
    rules.push_back(steps[0].rule);
    nodes.push_back(steps[0].node);
    cfg = steps[0].config;
    if (steps[0].entered) break;
  }
  CHECK(rules == std::vector<Rule>{Rule::Prelock, Rule::Prelock, Rule::Lock});
  CHECK(nodes[0] == 1);
  CHECK(nodes[1] == 3);
  for (NodeId n = 0; n < 4; ++n) CHECK(cfg.topology.prelock_owner[n] == kNoHandler);
  CHECK(cfg.handlers[0].prelocks.empty());
  CHECK(std::get<InboxQoQ>(cfg.handlers[1].inbox).subqueues.size() == 1);
  CHECK(std::get<InboxQoQ>(cfg.handlers[3].inbox).subqueues.size() == 1);
  CHECK(validate(cfg).empty());
}

TEST_CASE("dscoop prelock conflicts block and report the owner") {
  DscoopModel m;
  Configuration cfg = world(m, 3);
  ReserveRequest a{2, 0, {1}};
  std::vector<ReserveStep> steps;
  m.reserve_steps(cfg, a, steps);
  REQUIRE(steps.size() == 1);
  cfg = steps[0].config;
  CHECK(cfg.topology.prelock_owner[1] == 2);

  ReserveRequest b{3, 0, {1}};
  steps.clear();
  m.reserve_steps(cfg, b, steps);
  CHECK(steps.empty());
  auto edges = m.reserve_blockers(cfg, b);
  REQUIRE(edges.size() == 1);
  CHECK(edges[0] == WaitEdge{3, "prelock", 1, 2});
}

TEST_CASE("prelock order hooks") {
  Configuration base;
  ReserveRequest r{0, 0, {3, 1, 2}};
  {
    DscoopModel m;
    base = world(m, 3);
    CHECK(m.prelock_plan(base, r) == std::vector<NodeId>{1, 2, 3});
  }
  CHECK(DscoopModel({false, PrelockOrder::Descending}).prelock_plan(base, r) == std::vector<NodeId>{3, 2, 1});
  CHECK(DscoopModel({false, PrelockOrder::Argument}).prelock_plan(base, r) == std::vector<NodeId>{3, 1, 2});
}

TEST_CASE("the client's own node is never prelocked") {
  DscoopModel m;
  Configuration cfg = world(m, 2);
  // Handler 2 shares node 1 with its target.
  cfg.handlers[2].node = 1;
  ReserveRequest r{2, 0, {1}};
  CHECK(m.prelock_plan(cfg, r).empty());
  std::vector<ReserveStep> steps;
  m.reserve_steps(cfg, r, steps);
  REQUIRE(steps.size() == 1);
  CHECK(steps[0].rule == Rule::Lock);
}
