#include "scoopw/state/canonical.hpp"

namespace scoopw {

namespace {

class Writer {
 public:
  void u(std::uint64_t v) {
    while (v >= 0x80) {
      out_.push_back(static_cast<char>((v & 0x7f) | 0x80));
      v >>= 7;
    }
    out_.push_back(static_cast<char>(v));
  }
  void s(std::int64_t v) { u((static_cast<std::uint64_t>(v) << 1) ^ static_cast<std::uint64_t>(v >> 63)); }
  void str(const std::string& v) {
    u(v.size());
    out_ += v;
  }

  void value(const Value& v) {
    u(static_cast<std::uint8_t>(v.kind));
    switch (v.kind) {
      case Value::Kind::Void:
        break;
      case Value::Kind::Integer:
      case Value::Kind::Boolean:
        s(v.integer);
        break;
      case Value::Kind::Ref:
        u(v.handler);
        u(v.object);
        break;
    }
  }

  void values(const std::vector<Value>& vs) {
    u(vs.size());
    for (const Value& v : vs) value(v);
  }

  void request(const Request& r) {
    u(static_cast<std::uint8_t>(r.kind));
    u(r.method);
    u(r.target);
    values(r.args);
    u(r.client);
    u(r.block);
    u(r.seq);
  }

  void requests(const std::vector<Request>& rs) {
    u(rs.size());
    for (const Request& r : rs) request(r);
  }

  void frame(const Frame& f) {
    u(f.method);
    u(f.state);
    u(f.current);
    u(static_cast<std::uint8_t>(f.origin));
    u(static_cast<std::uint64_t>(f.client) + 1);
    values(f.locals);
    u(f.blocks.size());
    for (const ActiveBlock& b : f.blocks) {
      u(b.block);
      u(b.id);
      u(b.targets.size());
      for (const BlockTarget& t : b.targets) {
        u(t.handler);
        u(t.next_seq);
      }
    }
  }

  void handler(const Handler& h) {
    u(h.node);
    u(static_cast<std::uint8_t>(h.status));
    u(static_cast<std::uint64_t>(h.awaiting) + 1);
    u(h.stack.size());
    for (const Frame& f : h.stack) frame(f);
    u(h.heap.size());
    for (const Object& o : h.heap) {
      u(o.cls);
      values(o.attributes);
    }
    u(h.inbox.index());
    if (const auto* rq = std::get_if<InboxRQ>(&h.inbox)) {
      requests(rq->queue);
      u(static_cast<std::uint64_t>(rq->lock_owner) + 1);
      u(rq->lock_block);
    } else {
      const auto& qoq = std::get<InboxQoQ>(h.inbox);
      u(qoq.subqueues.size());
      for (const Subqueue& sq : qoq.subqueues) {
        u(sq.client);
        u(sq.block);
        u(sq.open ? 1 : 0);
        requests(sq.requests);
      }
    }
    u(h.prelocks.size());
    for (NodeId n : h.prelocks) u(n);
  }

  std::string take() { return std::move(out_); }

 private:
  std::string out_;
};

}  // namespace

std::string canonical_key(const Configuration& cfg) {
  Writer w;
  w.u(cfg.handlers.size());
  for (const Handler& h : cfg.handlers) w.handler(h);
  w.u(cfg.topology.node_count);
  for (HandlerId owner : cfg.topology.prelock_owner) w.u(static_cast<std::uint64_t>(owner) + 1);
  if (cfg.error) {
    w.u(1 + static_cast<std::uint8_t>(cfg.error->kind));
    w.str(cfg.error->rule);
    w.str(cfg.error->message);
  } else {
    w.u(0);
  }
  return w.take();
}

}  // namespace scoopw
