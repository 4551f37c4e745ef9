#include "scoopw/state/configuration.hpp"

#include <algorithm>
#include <set>

namespace scoopw {

const char* to_string(FrameOrigin o) {
  switch (o) {
    case FrameOrigin::Root: return "root";
    case FrameOrigin::Creation: return "creation";
    case FrameOrigin::RemoteCommand: return "command";
    case FrameOrigin::RemoteQuery: return "query";
    case FrameOrigin::LocalCall: return "local";
  }
  return "?";
}

const char* to_string(HandlerStatus s) {
  switch (s) {
    case HandlerStatus::Idle: return "Idle";
    case HandlerStatus::Executing: return "Executing";
    case HandlerStatus::WaitingQuery: return "WaitingQuery";
    case HandlerStatus::WaitingCondition: return "WaitingCondition";
  }
  return "?";
}

const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::Deadlock: return "Deadlock";
    case ErrorKind::MutexViolation: return "MutexViolation";
    case ErrorKind::OrderViolation: return "OrderViolation";
    case ErrorKind::VoidCall: return "VoidCall";
    case ErrorKind::Stuck: return "Stuck";
    case ErrorKind::Overflow: return "Overflow";
  }
  return "?";
}

std::string to_string(const WaitEdge& e) {
  return "(h" + std::to_string(e.waiter) + ", " + e.resource + "(" + std::to_string(e.resource_id) + "), h" +
         std::to_string(e.owner) + ")";
}

bool inbox_empty(const Inbox& inbox) {
  if (const auto* rq = std::get_if<InboxRQ>(&inbox)) return rq->queue.empty();
  return std::get<InboxQoQ>(inbox).subqueues.empty();
}

Object make_object(const CompiledProgram& program, ClassId cls) {
  Object o;
  o.cls = cls;
  for (const Slot& a : program.klass(cls).attributes) o.attributes.push_back(default_value(a.type));
  return o;
}

Frame make_frame(const CompiledProgram& program, MethodId method, ObjectId current, FrameOrigin origin,
                 const std::vector<Value>& args) {
  const MethodInfo& m = program.method(method);
  Frame f;
  f.method = method;
  f.state = m.cfg.initial;
  f.current = current;
  f.origin = origin;
  f.locals.reserve(m.slots.size());
  for (std::size_t i = 0; i < m.slots.size(); ++i) {
    f.locals.push_back(i < args.size() ? args[i] : default_value(m.slots[i].type));
  }
  return f;
}

Configuration load_initial(const CompiledProgram& program, const Inbox& empty_inbox) {
  Configuration cfg;
  cfg.program = &program;
  Handler root;
  root.inbox = empty_inbox;
  root.heap.push_back(make_object(program, program.entry_class));
  root.stack.push_back(make_frame(program, program.entry_method, 0, FrameOrigin::Root, {}));
  root.status = HandlerStatus::Executing;
  cfg.handlers.push_back(std::move(root));
  return cfg;
}

void gc(Configuration& cfg) {
  const CompiledProgram& p = *cfg.program;
  for (Handler& h : cfg.handlers) {
    for (Frame& f : h.stack) {
      const MethodInfo& m = p.method(f.method);
      for (std::uint32_t slot : m.cfg.dead_temps[f.state]) f.locals[slot] = default_value(m.slots[slot].type);
    }
    if (auto* qoq = std::get_if<InboxQoQ>(&h.inbox)) {
      std::erase_if(qoq->subqueues, [](const Subqueue& s) { return !s.open && s.requests.empty(); });
    }
  }
}

BlockInstanceId allocate_block_instance(const Configuration& cfg, HandlerId client) {
  std::vector<BlockInstanceId> used;
  for (const Frame& f : cfg.handlers[client].stack) {
    for (const ActiveBlock& b : f.blocks) used.push_back(b.id);
  }
  for (const Handler& h : cfg.handlers) {
    if (const auto* rq = std::get_if<InboxRQ>(&h.inbox)) {
      if (rq->lock_owner == client) used.push_back(rq->lock_block);
      for (const Request& r : rq->queue) {
        if (r.client == client) used.push_back(r.block);
      }
    } else {
      for (const Subqueue& s : std::get<InboxQoQ>(h.inbox).subqueues) {
        if (s.client == client) used.push_back(s.block);
      }
    }
  }
  std::sort(used.begin(), used.end());
  BlockInstanceId id = 0;
  for (BlockInstanceId u : used) {
    if (u == id) ++id;
    else if (u > id) break;
  }
  return id;
}

namespace {

void check_value(const Configuration& cfg, const Value& v, const std::string& where, std::vector<std::string>& out) {
  if (!v.is_ref()) return;
  if (v.handler >= cfg.handlers.size() || v.object >= cfg.handlers[v.handler].heap.size()) {
    out.push_back(where + ": dangling reference " + to_string(v));
  }
}

void check_request(const Configuration& cfg, const Request& r, const std::string& where,
                   std::vector<std::string>& out) {
  for (const Value& v : r.args) check_value(cfg, v, where, out);
  if (r.client >= cfg.handlers.size()) out.push_back(where + ": request from unknown handler");
}

}  // namespace

std::vector<std::string> validate(const Configuration& cfg) {
  std::vector<std::string> out;
  const Topology& topo = cfg.topology;
  if (topo.prelock_owner.size() != topo.node_count) out.push_back("topology: prelock table size mismatch");
  for (HandlerId hid = 0; hid < cfg.handlers.size(); ++hid) {
    const Handler& h = cfg.handlers[hid];
    std::string name = "h" + std::to_string(hid);
    if (h.node >= topo.node_count) out.push_back(name + ": unknown node");
    if ((h.status == HandlerStatus::Idle) != h.stack.empty()) out.push_back(name + ": status and stack disagree");
    for (std::size_t o = 0; o < h.heap.size(); ++o) {
      for (const Value& v : h.heap[o].attributes) check_value(cfg, v, name + " object " + std::to_string(o), out);
    }
    for (std::size_t i = 0; i < h.stack.size(); ++i) {
      const Frame& f = h.stack[i];
      std::string where = name + " frame " + std::to_string(i);
      if (f.current >= h.heap.size()) out.push_back(where + ": current object missing");
      for (const Value& v : f.locals) check_value(cfg, v, where, out);
      if ((i == 0) == (f.origin == FrameOrigin::LocalCall)) out.push_back(where + ": bad frame origin");
    }
    if (h.status == HandlerStatus::WaitingQuery) {
      if (h.awaiting >= cfg.handlers.size()) {
        out.push_back(name + ": waits on unknown handler");
      } else {
        const Handler& s = cfg.handlers[h.awaiting];
        bool pending = false;
        if (!s.stack.empty() && s.stack.front().origin == FrameOrigin::RemoteQuery && s.stack.front().client == hid)
          pending = true;
        auto scan = [&](const std::vector<Request>& q) {
          for (const Request& r : q) pending = pending || (r.client == hid && r.kind == Request::Kind::Query);
        };
        if (const auto* rq = std::get_if<InboxRQ>(&s.inbox)) {
          scan(rq->queue);
        } else {
          for (const Subqueue& sq : std::get<InboxQoQ>(s.inbox).subqueues) scan(sq.requests);
        }
        if (!pending) out.push_back(name + ": awaited query is not pending");
      }
    }
    if (const auto* rq = std::get_if<InboxRQ>(&h.inbox)) {
      if (rq->lock_owner != kNoHandler && rq->lock_owner >= cfg.handlers.size()) out.push_back(name + ": bad lock owner");
      for (const Request& r : rq->queue) check_request(cfg, r, name + " inbox", out);
    } else {
      std::set<std::pair<HandlerId, BlockInstanceId>> open;
      for (const Subqueue& sq : std::get<InboxQoQ>(h.inbox).subqueues) {
        if (sq.open && !open.insert({sq.client, sq.block}).second) out.push_back(name + ": duplicate open subqueue");
        for (const Request& r : sq.requests) {
          check_request(cfg, r, name + " inbox", out);
          if (r.client != sq.client || r.block != sq.block) out.push_back(name + ": foreign request in subqueue");
        }
      }
    }
    for (NodeId n : h.prelocks) {
      if (n >= topo.node_count || topo.prelock_owner[n] != hid) out.push_back(name + ": prelock bookkeeping mismatch");
    }
  }
  for (NodeId n = 0; n < topo.prelock_owner.size(); ++n) {
    HandlerId owner = topo.prelock_owner[n];
    if (owner == kNoHandler) continue;
    if (owner >= cfg.handlers.size()) {
      out.push_back("node " + std::to_string(n) + ": unknown prelock owner");
      continue;
    }
    const auto& held = cfg.handlers[owner].prelocks;
    if (std::find(held.begin(), held.end(), n) == held.end()) out.push_back("node " + std::to_string(n) + ": orphan prelock");
  }
  return out;
}

}  // namespace scoopw
