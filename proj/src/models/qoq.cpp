#include <stdexcept>

#include "scoopw/models/models.hpp"

namespace scoopw {

void QoqModel::open_subqueues(Configuration& cfg, const ReserveRequest& r) {
  for (HandlerId t : r.targets) {
    Subqueue sq;
    sq.client = r.client;
    sq.block = r.instance;
    std::get<InboxQoQ>(cfg.handlers[t].inbox).subqueues.push_back(std::move(sq));
  }
}

void QoqModel::reserve_steps(const Configuration& cfg, const ReserveRequest& r, std::vector<ReserveStep>& out) const {
  ReserveStep step;
  step.rule = Rule::Reserve;
  step.entered = true;
  step.config = cfg;
  open_subqueues(step.config, r);
  out.push_back(std::move(step));
}

std::vector<WaitEdge> QoqModel::reserve_blockers(const Configuration&, const ReserveRequest&) const { return {}; }

void QoqModel::enqueue(Configuration& cfg, HandlerId supplier, Request r) const {
  for (Subqueue& sq : std::get<InboxQoQ>(cfg.handlers[supplier].inbox).subqueues) {
    if (sq.open && sq.client == r.client && sq.block == r.block) {
      sq.requests.push_back(std::move(r));
      return;
    }
  }
  throw std::logic_error("qoq: no open subqueue for the request");
}

std::optional<Request> QoqModel::take_request(Configuration& cfg, HandlerId supplier) const {
  auto& subqueues = std::get<InboxQoQ>(cfg.handlers[supplier].inbox).subqueues;
  // Drained closed subqueues are removed by gc, so the head is either live
  // or open and empty, which blocks the supplier.
  for (auto it = subqueues.begin(); it != subqueues.end(); ++it) {
    if (it->requests.empty()) {
      if (it->open) return std::nullopt;
      continue;
    }
    auto& q = it->requests;
    auto pick = options().serve_newest ? q.end() - 1 : q.begin();
    Request r = std::move(*pick);
    q.erase(pick);
    return r;
  }
  return std::nullopt;
}

void QoqModel::release(Configuration& cfg, HandlerId client, const ActiveBlock& block) const {
  for (const BlockTarget& t : block.targets) {
    bool found = false;
    for (Subqueue& sq : std::get<InboxQoQ>(cfg.handlers[t.handler].inbox).subqueues) {
      if (sq.open && sq.client == client && sq.block == block.id) {
        sq.open = false;
        found = true;
        break;
      }
    }
    if (!found) throw std::logic_error("qoq: closing a subqueue that does not exist");
  }
}

std::vector<WaitEdge> QoqModel::idle_edges(const Configuration& cfg, HandlerId supplier) const {
  const auto& subqueues = std::get<InboxQoQ>(cfg.handlers[supplier].inbox).subqueues;
  if (subqueues.empty()) return {};
  const Subqueue& head = subqueues.front();
  if (!head.open || !head.requests.empty()) return {};
  return {{supplier, "subqueue", head.block, head.client}};
}

}  // namespace scoopw
