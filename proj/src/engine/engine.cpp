#include "scoopw/engine/engine.hpp"

#include <algorithm>
#include <stdexcept>

#include "scoopw/state/eval.hpp"

namespace scoopw {

namespace {

void write_place(Handler& h, Frame& f, const Place& p, const Value& v) {
  if (p.kind == Place::Kind::Local) {
    f.locals[p.index] = v;
  } else {
    h.heap[f.current].attributes[p.index] = v;
  }
}

Value call_target(const Handler& h, HandlerId hid, const Frame& f, const Action& a) {
  if (!a.target) return Value::ref(hid, f.current);
  Value v = eval_expr(h, hid, f, *a.target);
  if (v.is_void()) throw RuntimeFault(ErrorKind::VoidCall, "call on Void target");
  return v;
}

std::vector<Value> eval_args(const Handler& h, HandlerId hid, const Frame& f, const Action& a) {
  std::vector<Value> args;
  args.reserve(a.args.size());
  for (const CExpr& e : a.args) args.push_back(eval_expr(h, hid, f, e));
  return args;
}

bool holds(const Handler& h, HandlerId target) {
  for (const Frame& f : h.stack) {
    for (const ActiveBlock& b : f.blocks) {
      for (const BlockTarget& t : b.targets) {
        if (t.handler == target) return true;
      }
    }
  }
  return false;
}

// The block, in any frame, through which requests to `supplier` are logged.
std::pair<ActiveBlock*, BlockTarget*> owning_block(Handler& h, HandlerId supplier) {
  for (auto f = h.stack.rbegin(); f != h.stack.rend(); ++f) {
    for (auto b = f->blocks.rbegin(); b != f->blocks.rend(); ++b) {
      for (BlockTarget& t : b->targets) {
        if (t.handler == supplier) return {&*b, &t};
      }
    }
  }
  throw std::logic_error("separate call to h" + std::to_string(supplier) + " outside a block holding it");
}

void set_fault(Configuration& cfg, const RuntimeFault& f) {
  ErrorMarker m;
  m.kind = f.kind();
  m.rule = "runtime";
  m.message = f.what();
  cfg.error = std::move(m);
}

}  // namespace

Engine::Engine(std::shared_ptr<const CompiledProgram> program, std::shared_ptr<const ExecutionModel> model,
               EngineOptions options)
    : program_(std::move(program)), model_(std::move(model)), options_(options) {}

Configuration Engine::load() const { return load_initial(*program_, model_->make_inbox()); }

Configuration Engine::initial() const { return local_macro_step(load()); }

void Engine::push_frame(Handler& h, Frame f) const {
  if (h.stack.size() >= options_.max_stack_depth) throw RuntimeFault(ErrorKind::Stuck, "stack depth limit exceeded");
  h.stack.push_back(std::move(f));
}

std::vector<HandlerId> Engine::foreign_targets(const Configuration& cfg, HandlerId hid, const Action& a) const {
  const Handler& h = cfg.handlers[hid];
  const Frame& f = h.stack.back();
  std::vector<HandlerId> out;
  for (std::uint32_t slot : a.block_targets) {
    const Value& v = f.locals[slot];
    if (v.is_void()) throw RuntimeFault(ErrorKind::VoidCall, "separate block on Void target");
    if (v.handler == hid || holds(h, v.handler)) continue;
    if (std::find(out.begin(), out.end(), v.handler) == out.end()) out.push_back(v.handler);
  }
  return out;
}

const Edge* Engine::next_edge(const Configuration& cfg, HandlerId hid) const {
  const Handler& h = cfg.handlers[hid];
  if (h.stack.empty()) return nullptr;
  const Frame& f = h.stack.back();
  const Cfg& g = program_->method(f.method).cfg;
  const auto& outs = g.out[f.state];
  if (outs.empty()) throw std::logic_error("frame parked at a final state");
  const Edge* e = &g.edges[outs[0]];
  if (e->action.kind != Action::Kind::Guard) return e;
  for (std::uint32_t i : outs) {
    const Edge& ge = g.edges[i];
    if (eval_expr(h, hid, f, ge.action.expr).as_bool() == ge.action.polarity) return &ge;
  }
  throw std::logic_error("no guard enabled");
}

bool Engine::step_local(Configuration& cfg, HandlerId hid) const {
  Handler& h = cfg.handlers[hid];
  if (h.status != HandlerStatus::Executing) return false;
  const Edge& e = *next_edge(cfg, hid);
  const Action& a = e.action;
  Frame& f = h.stack.back();
  switch (a.kind) {
    case Action::Kind::Guard:
      f.state = e.to;
      return true;
    case Action::Kind::AssignLocal:
      write_place(h, f, a.lhs, eval_expr(h, hid, f, a.expr));
      f.state = e.to;
      return true;
    case Action::Kind::CreateObject: {
      if (a.separate) return false;
      std::vector<Value> args = eval_args(h, hid, f, a);
      ObjectId obj = static_cast<ObjectId>(h.heap.size());
      h.heap.push_back(make_object(*program_, a.cls));
      write_place(h, f, a.lhs, Value::ref(hid, obj));
      f.state = e.to;
      if (a.method != kNoMethod) push_frame(h, make_frame(*program_, a.method, obj, FrameOrigin::LocalCall, args));
      return true;
    }
    case Action::Kind::CommandCall:
    case Action::Kind::QueryCall: {
      Value target = call_target(h, hid, f, a);
      if (target.handler != hid) return false;
      std::vector<Value> args = eval_args(h, hid, f, a);
      if (a.kind == Action::Kind::CommandCall) f.state = e.to;
      push_frame(h, make_frame(*program_, a.method, target.object, FrameOrigin::LocalCall, args));
      return true;
    }
    case Action::Kind::EnterBlock: {
      if (!foreign_targets(cfg, hid, a).empty()) return false;
      BlockInstanceId id = allocate_block_instance(cfg, hid);
      f.blocks.push_back({a.block, id, {}});
      f.state = e.to;
      return true;
    }
    case Action::Kind::ExitBlock:
      if (a.retry || !f.blocks.back().targets.empty()) return false;
      f.blocks.pop_back();
      f.state = e.to;
      return true;
    case Action::Kind::Return: {
      if (h.stack.size() == 1) return false;
      Frame callee = std::move(h.stack.back());
      h.stack.pop_back();
      const MethodInfo& m = program_->method(callee.method);
      if (m.is_query()) {
        Frame& caller = h.stack.back();
        const Edge& call = *next_edge(cfg, hid);
        write_place(h, caller, call.action.lhs, callee.locals[*m.result_slot]);
        caller.state = call.to;
      }
      return true;
    }
  }
  return false;
}

void Engine::run_locals(Configuration& cfg, HandlerId hid) const {
  std::uint64_t steps = 0;
  while (step_local(cfg, hid)) {
    if (++steps > options_.local_budget) throw RuntimeFault(ErrorKind::Stuck, "local step budget exhausted");
  }
}

Configuration Engine::local_macro_step(Configuration cfg) const {
  if (cfg.error) return cfg;
  Configuration reverse;
  if (options_.verify_confluence) reverse = cfg;
  try {
    for (HandlerId hid = 0; hid < cfg.handlers.size(); ++hid) run_locals(cfg, hid);
  } catch (const RuntimeFault& f) {
    set_fault(cfg, f);
    return cfg;
  }
  gc(cfg);
  if (options_.verify_confluence) {
    try {
      for (HandlerId hid = static_cast<HandlerId>(reverse.handlers.size()); hid-- > 0;) run_locals(reverse, hid);
      gc(reverse);
    } catch (const RuntimeFault&) {
      throw std::logic_error("local steps are not confluent");
    }
    if (!(reverse == cfg)) throw std::logic_error("local steps are not confluent");
  }
  return cfg;
}

void Engine::sync_steps(const Configuration& cfg, HandlerId hid, std::vector<Successor>& out) const {
  const Handler& h = cfg.handlers[hid];
  auto emit = [&](TransitionLabel label, Configuration next) {
    label.handler = hid;
    out.push_back({std::move(label), std::move(next)});
  };

  if (h.status == HandlerStatus::Idle) {
    Configuration c = cfg;
    std::optional<Request> req = model_->take_request(c, hid);
    if (!req) return;
    Handler& s = c.handlers[hid];
    FrameOrigin origin = req->kind == Request::Kind::Query ? FrameOrigin::RemoteQuery : FrameOrigin::RemoteCommand;
    Frame f = make_frame(*program_, req->method, req->target, origin, req->args);
    f.client = req->client;
    s.stack.push_back(std::move(f));
    s.status = HandlerStatus::Executing;
    TransitionLabel l;
    l.rule = Rule::DequeueExecute;
    l.client = req->client;
    l.binds_block = true;
    l.block = req->block;
    l.seq = req->seq;
    l.method = req->method;
    emit(std::move(l), std::move(c));
    return;
  }
  if (h.status == HandlerStatus::WaitingQuery) return;

  const Edge& e = *next_edge(cfg, hid);
  const Action& a = e.action;
  const Frame& f = h.stack.back();
  switch (a.kind) {
    case Action::Kind::CreateObject: {
      std::vector<Value> args = eval_args(h, hid, f, a);
      Configuration c = cfg;
      NodeId node = model_->on_create_separate(c, hid);
      HandlerId nid = static_cast<HandlerId>(c.handlers.size());
      Handler created;
      created.node = node;
      created.inbox = model_->make_inbox();
      created.heap.push_back(make_object(*program_, a.cls));
      if (a.method != kNoMethod) {
        created.stack.push_back(make_frame(*program_, a.method, 0, FrameOrigin::Creation, args));
        created.status = HandlerStatus::Executing;
      }
      c.handlers.push_back(std::move(created));
      Handler& me = c.handlers[hid];
      write_place(me, me.stack.back(), a.lhs, Value::ref(nid, 0));
      me.stack.back().state = e.to;
      TransitionLabel l;
      l.rule = Rule::CreateSeparate;
      l.other = nid;
      l.method = a.method;
      emit(std::move(l), std::move(c));
      return;
    }
    case Action::Kind::CommandCall:
    case Action::Kind::QueryCall: {
      Value target = call_target(h, hid, f, a);
      std::vector<Value> args = eval_args(h, hid, f, a);
      Configuration c = cfg;
      Handler& me = c.handlers[hid];
      auto [block, slot] = owning_block(me, target.handler);
      Request r;
      r.kind = a.kind == Action::Kind::QueryCall ? Request::Kind::Query : Request::Kind::Command;
      r.method = a.method;
      r.target = target.object;
      r.args = std::move(args);
      r.client = hid;
      r.block = block->id;
      r.seq = slot->next_seq++;
      TransitionLabel l;
      l.rule = r.kind == Request::Kind::Query ? Rule::EnqueueQuery : Rule::EnqueueCommand;
      l.other = target.handler;
      l.binds_block = true;
      l.block = r.block;
      l.seq = r.seq;
      l.method = a.method;
      if (r.kind == Request::Kind::Query) {
        me.status = HandlerStatus::WaitingQuery;
        me.awaiting = target.handler;
      } else {
        me.stack.back().state = e.to;
      }
      model_->enqueue(c, target.handler, std::move(r));
      emit(std::move(l), std::move(c));
      return;
    }
    case Action::Kind::EnterBlock: {
      std::vector<HandlerId> targets = foreign_targets(cfg, hid, a);
      bool retry = h.status == HandlerStatus::WaitingCondition;
      if (targets.empty()) {
        Configuration c = cfg;
        Handler& me = c.handlers[hid];
        BlockInstanceId id = allocate_block_instance(c, hid);
        me.stack.back().blocks.push_back({a.block, id, {}});
        me.stack.back().state = e.to;
        me.status = HandlerStatus::Executing;
        TransitionLabel l;
        l.rule = Rule::WaitRetry;
        l.binds_block = true;
        l.block = id;
        emit(std::move(l), std::move(c));
        return;
      }
      ReserveRequest r{hid, allocate_block_instance(cfg, hid), targets};
      std::vector<ReserveStep> steps;
      model_->reserve_steps(cfg, r, steps);
      for (ReserveStep& step : steps) {
        Configuration c = std::move(step.config);
        Handler& me = c.handlers[hid];
        TransitionLabel l;
        l.rule = retry ? Rule::WaitRetry : step.rule;
        l.node = step.node;
        l.targets = targets;
        if (step.entered) {
          ActiveBlock b{a.block, r.instance, {}};
          for (HandlerId t : targets) b.targets.push_back({t, 0});
          me.stack.back().blocks.push_back(std::move(b));
          me.stack.back().state = e.to;
          l.binds_block = true;
          l.block = r.instance;
        }
        me.status = HandlerStatus::Executing;
        emit(std::move(l), std::move(c));
      }
      return;
    }
    case Action::Kind::ExitBlock: {
      Configuration c = cfg;
      Handler& me = c.handlers[hid];
      Frame& mf = me.stack.back();
      ActiveBlock b = std::move(mf.blocks.back());
      mf.blocks.pop_back();
      model_->release(c, hid, b);
      mf.state = e.to;
      TransitionLabel l;
      l.rule = a.retry ? Rule::Release : Rule::BlockExit;
      l.binds_block = true;
      l.block = b.id;
      for (const BlockTarget& t : b.targets) l.targets.push_back(t.handler);
      if (a.retry) me.status = HandlerStatus::WaitingCondition;
      emit(std::move(l), std::move(c));
      return;
    }
    case Action::Kind::Return: {
      Configuration c = cfg;
      Handler& me = c.handlers[hid];
      Frame done = std::move(me.stack.back());
      me.stack.pop_back();
      me.status = HandlerStatus::Idle;
      TransitionLabel l;
      l.method = done.method;
      if (done.origin == FrameOrigin::RemoteQuery) {
        const MethodInfo& m = program_->method(done.method);
        Handler& client = c.handlers[done.client];
        const Edge& call = *next_edge(c, done.client);
        write_place(client, client.stack.back(), call.action.lhs, done.locals[*m.result_slot]);
        client.stack.back().state = call.to;
        client.status = HandlerStatus::Executing;
        client.awaiting = kNoHandler;
        l.rule = Rule::QueryReply;
        l.other = done.client;
      } else {
        l.rule = Rule::HandlerIdle;
      }
      emit(std::move(l), std::move(c));
      return;
    }
    default:
      throw std::logic_error("local action left at a synchronisation point");
  }
}

std::vector<Successor> Engine::enumerate_sync_steps(const Configuration& cfg) const {
  std::vector<Successor> out;
  if (cfg.error) return out;
  for (HandlerId hid = 0; hid < cfg.handlers.size(); ++hid) {
    std::size_t before = out.size();
    try {
      sync_steps(cfg, hid, out);
    } catch (const RuntimeFault& fault) {
      out.resize(before);
      Configuration c = cfg;
      set_fault(c, fault);
      TransitionLabel l;
      l.handler = hid;
      const Edge* e = next_edge(cfg, hid);
      l.rule = e && e->action.kind == Action::Kind::EnterBlock ? Rule::Reserve
               : e && e->action.kind == Action::Kind::QueryCall ? Rule::EnqueueQuery
               : e && e->action.kind == Action::Kind::CreateObject ? Rule::CreateSeparate
                                                                   : Rule::EnqueueCommand;
      out.push_back({std::move(l), std::move(c)});
    }
  }
  for (std::size_t i = 0; i < out.size(); ++i) out[i].config = local_macro_step(std::move(out[i].config));
  return out;
}

std::vector<Successor> Engine::successors(const Configuration& cfg) const {
  if (cfg.error) return {};
  Configuration fixed = local_macro_step(cfg);
  if (fixed.error) {
    // The local phase itself faulted: that is the one successor.
    TransitionLabel l;
    l.rule = Rule::HandlerIdle;
    return {{std::move(l), std::move(fixed)}};
  }
  return enumerate_sync_steps(fixed);
}

std::pair<Configuration, Value> Engine::run_query_locally(Configuration cfg, HandlerId hid,
                                                          const Request& request) const {
  Handler& h = cfg.handlers.at(hid);
  std::size_t base = h.stack.size();
  HandlerStatus saved = h.status;
  push_frame(h, make_frame(*program_, request.method, request.target, FrameOrigin::LocalCall, request.args));
  h.status = HandlerStatus::Executing;
  std::uint64_t steps = 0;
  while (true) {
    Handler& cur = cfg.handlers[hid];
    if (cur.stack.size() == base + 1) {
      const Edge* e = next_edge(cfg, hid);
      if (e->action.kind == Action::Kind::Return) {
        Frame done = std::move(cur.stack.back());
        cur.stack.pop_back();
        cur.status = saved;
        const MethodInfo& m = program_->method(done.method);
        return {std::move(cfg), m.is_query() ? done.locals[*m.result_slot] : Value::void_value()};
      }
    }
    if (!step_local(cfg, hid)) throw std::logic_error("local execution reached a synchronisation point");
    if (++steps > options_.local_budget) throw RuntimeFault(ErrorKind::Stuck, "local step budget exhausted");
  }
}

std::vector<WaitEdge> Engine::wait_edges(const Configuration& cfg) const {
  std::vector<WaitEdge> edges;
  for (HandlerId hid = 0; hid < cfg.handlers.size(); ++hid) {
    const Handler& h = cfg.handlers[hid];
    if (h.status == HandlerStatus::WaitingQuery) {
      edges.push_back({hid, "query", h.awaiting, h.awaiting});
      continue;
    }
    if (h.status == HandlerStatus::Idle) {
      auto idle = model_->idle_edges(cfg, hid);
      edges.insert(edges.end(), idle.begin(), idle.end());
      continue;
    }
    try {
      const Edge* e = next_edge(cfg, hid);
      if (!e || e->action.kind != Action::Kind::EnterBlock) continue;
      std::vector<HandlerId> targets = foreign_targets(cfg, hid, e->action);
      if (targets.empty()) continue;
      auto blockers = model_->reserve_blockers(cfg, {hid, 0, targets});
      edges.insert(edges.end(), blockers.begin(), blockers.end());
    } catch (const RuntimeFault&) {
    }
  }
  return edges;
}

NodeId ExecutionModel::on_create_separate(Configuration& cfg, HandlerId creator) const {
  return cfg.handlers[creator].node;
}

std::vector<WaitEdge> ExecutionModel::idle_edges(const Configuration&, HandlerId) const { return {}; }

}  // namespace scoopw
