#include "scoopw/state/dump.hpp"

#include <sstream>

namespace scoopw {

namespace {

void dump_values(std::ostream& os, const std::vector<Value>& vs) {
  os << "(";
  for (std::size_t i = 0; i < vs.size(); ++i) os << (i ? ", " : "") << to_string(vs[i]);
  os << ")";
}

void dump_request(std::ostream& os, const CompiledProgram& p, const Request& r) {
  os << (r.kind == Request::Kind::Query ? "query " : "command ") << p.method(r.method).name << "@" << r.target;
  if (!r.args.empty()) dump_values(os, r.args);
  os << " from h" << r.client << " b" << r.block << "#" << r.seq;
}

}  // namespace

std::string dump(const Configuration& cfg) {
  const CompiledProgram& p = *cfg.program;
  std::ostringstream os;
  os << "nodes " << cfg.topology.node_count;
  for (NodeId n = 0; n < cfg.topology.prelock_owner.size(); ++n) {
    if (cfg.topology.prelock_owner[n] != kNoHandler) os << " prelock(n" << n << ")=h" << cfg.topology.prelock_owner[n];
  }
  os << "\n";
  if (cfg.error) {
    os << "error " << to_string(cfg.error->kind) << " [" << cfg.error->rule << "] " << cfg.error->message << "\n";
    for (const WaitEdge& e : cfg.error->cycle) os << "  wait " << to_string(e) << "\n";
  }
  for (HandlerId id = 0; id < cfg.handlers.size(); ++id) {
    const Handler& h = cfg.handlers[id];
    os << "handler h" << id << " node " << h.node << " " << to_string(h.status);
    if (h.status == HandlerStatus::WaitingQuery) os << " on h" << h.awaiting;
    for (NodeId n : h.prelocks) os << " prelocked(n" << n << ")";
    os << "\n";
    for (std::size_t i = 0; i < h.heap.size(); ++i) {
      os << "  object " << i << ": " << p.klass(h.heap[i].cls).name << " ";
      dump_values(os, h.heap[i].attributes);
      os << "\n";
    }
    for (std::size_t i = h.stack.size(); i-- > 0;) {
      const Frame& f = h.stack[i];
      os << "  frame " << p.qualified_name(f.method) << " @" << f.state << " on " << f.current << " "
         << to_string(f.origin);
      if (f.client != kNoHandler) os << " for h" << f.client;
      os << " ";
      dump_values(os, f.locals);
      for (const ActiveBlock& b : f.blocks) {
        os << " [b" << b.block << " #" << b.id;
        for (const BlockTarget& t : b.targets) os << " h" << t.handler << ":" << t.next_seq;
        os << "]";
      }
      os << "\n";
    }
    if (const auto* rq = std::get_if<InboxRQ>(&h.inbox)) {
      os << "  queue";
      if (rq->lock_owner != kNoHandler) os << " locked by h" << rq->lock_owner << " b" << rq->lock_block;
      os << "\n";
      for (const Request& r : rq->queue) {
        os << "    ";
        dump_request(os, p, r);
        os << "\n";
      }
    } else {
      for (const Subqueue& sq : std::get<InboxQoQ>(h.inbox).subqueues) {
        os << "  subqueue h" << sq.client << " b" << sq.block << (sq.open ? " open" : " closed") << "\n";
        for (const Request& r : sq.requests) {
          os << "    ";
          dump_request(os, p, r);
          os << "\n";
        }
      }
    }
  }
  return os.str();
}

}  // namespace scoopw
