#include <stdexcept>

#include "scoopw/models/models.hpp"

namespace scoopw {

void RqModel::reserve_steps(const Configuration& cfg, const ReserveRequest& r, std::vector<ReserveStep>& out) const {
  for (HandlerId t : r.targets) {
    if (std::get<InboxRQ>(cfg.handlers[t].inbox).lock_owner != kNoHandler) return;
  }
  ReserveStep step;
  step.rule = Rule::Reserve;
  step.entered = true;
  step.config = cfg;
  for (HandlerId t : r.targets) {
    auto& inbox = std::get<InboxRQ>(step.config.handlers[t].inbox);
    inbox.lock_owner = r.client;
    inbox.lock_block = r.instance;
  }
  out.push_back(std::move(step));
}

std::vector<WaitEdge> RqModel::reserve_blockers(const Configuration& cfg, const ReserveRequest& r) const {
  std::vector<WaitEdge> edges;
  for (HandlerId t : r.targets) {
    HandlerId owner = std::get<InboxRQ>(cfg.handlers[t].inbox).lock_owner;
    if (owner != kNoHandler) edges.push_back({r.client, "lock", t, owner});
  }
  return edges;
}

void RqModel::enqueue(Configuration& cfg, HandlerId supplier, Request r) const {
  auto& inbox = std::get<InboxRQ>(cfg.handlers[supplier].inbox);
  if (inbox.lock_owner != r.client || inbox.lock_block != r.block) {
    throw std::logic_error("rq: request logged without holding the queue lock");
  }
  inbox.queue.push_back(std::move(r));
}

std::optional<Request> RqModel::take_request(Configuration& cfg, HandlerId supplier) const {
  auto& queue = std::get<InboxRQ>(cfg.handlers[supplier].inbox).queue;
  if (queue.empty()) return std::nullopt;
  auto it = options().serve_newest ? queue.end() - 1 : queue.begin();
  Request r = std::move(*it);
  queue.erase(it);
  return r;
}

void RqModel::release(Configuration& cfg, HandlerId client, const ActiveBlock& block) const {
  for (const BlockTarget& t : block.targets) {
    auto& inbox = std::get<InboxRQ>(cfg.handlers[t.handler].inbox);
    if (inbox.lock_owner != client || inbox.lock_block != block.id) {
      throw std::logic_error("rq: releasing a lock not held");
    }
    inbox.lock_owner = kNoHandler;
    inbox.lock_block = 0;
  }
}

}  // namespace scoopw
