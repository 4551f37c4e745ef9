#include <algorithm>
#include <functional>

#include "scoopw/models/models.hpp"

namespace scoopw {

NodeId DscoopModel::on_create_separate(Configuration& cfg, HandlerId) const {
  NodeId node = cfg.topology.node_count++;
  cfg.topology.prelock_owner.push_back(kNoHandler);
  return node;
}

std::vector<NodeId> DscoopModel::prelock_plan(const Configuration& cfg, const ReserveRequest& r) const {
  NodeId own = cfg.handlers[r.client].node;
  std::vector<NodeId> nodes;
  for (HandlerId t : r.targets) {
    NodeId n = cfg.handlers[t].node;
    if (n == own || std::find(nodes.begin(), nodes.end(), n) != nodes.end()) continue;
    nodes.push_back(n);
  }
  switch (options().prelock_order) {
    case PrelockOrder::Ascending:
      std::sort(nodes.begin(), nodes.end());
      break;
    case PrelockOrder::Descending:
      std::sort(nodes.begin(), nodes.end(), std::greater<>());
      break;
    case PrelockOrder::Argument:
      break;
  }
  return nodes;
}

void DscoopModel::reserve_steps(const Configuration& cfg, const ReserveRequest& r, std::vector<ReserveStep>& out) const {
  const Handler& h = cfg.handlers[r.client];
  for (NodeId n : prelock_plan(cfg, r)) {
    if (std::find(h.prelocks.begin(), h.prelocks.end(), n) != h.prelocks.end()) continue;
    if (cfg.topology.prelock_owner[n] != kNoHandler) return;
    ReserveStep step;
    step.rule = Rule::Prelock;
    step.node = n;
    step.config = cfg;
    step.config.topology.prelock_owner[n] = r.client;
    step.config.handlers[r.client].prelocks.push_back(n);
    out.push_back(std::move(step));
    return;
  }
  ReserveStep step;
  step.rule = Rule::Lock;
  step.entered = true;
  step.config = cfg;
  Handler& me = step.config.handlers[r.client];
  for (NodeId n : me.prelocks) step.config.topology.prelock_owner[n] = kNoHandler;
  me.prelocks.clear();
  open_subqueues(step.config, r);
  out.push_back(std::move(step));
}

std::vector<WaitEdge> DscoopModel::reserve_blockers(const Configuration& cfg, const ReserveRequest& r) const {
  const Handler& h = cfg.handlers[r.client];
  for (NodeId n : prelock_plan(cfg, r)) {
    if (std::find(h.prelocks.begin(), h.prelocks.end(), n) != h.prelocks.end()) continue;
    HandlerId owner = cfg.topology.prelock_owner[n];
    if (owner == kNoHandler) return {};
    return {{r.client, "prelock", n, owner}};
  }
  return {};
}

}  // namespace scoopw
