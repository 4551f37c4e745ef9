#include "scoopw/props/trace_check.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>

#include "scoopw/props/order_monitor.hpp"
#include "scoopw/state/canonical.hpp"

namespace scoopw {

namespace {

struct Node {
  std::uint32_t parent;
  std::uint32_t depth;
  TransitionLabel via;
};

struct Item {
  std::uint32_t id;
  Configuration config;
  OrderMonitor monitor;
};

std::string product_key(const Configuration& cfg, const OrderMonitor& mon) {
  std::string k = canonical_key(cfg);
  std::string m = mon.serialize();
  std::uint32_t n = static_cast<std::uint32_t>(k.size());
  std::string out(reinterpret_cast<const char*>(&n), sizeof n);
  return out + k + m;
}

}  // namespace

TraceCheckResult trace_check(const Engine& engine, const TraceCheckOptions& options) {
  using Clock = std::chrono::steady_clock;
  auto start = Clock::now();
  TraceCheckResult res;
  std::vector<Node> nodes;
  std::unordered_map<std::string, std::uint32_t> seen;
  std::deque<Item> frontier;

  Configuration init = engine.initial();
  seen.emplace(product_key(init, {}), 0);
  nodes.push_back({0xffffffffu, 0, {}});
  frontier.push_back({0, std::move(init), {}});

  auto trace_to = [&](std::uint32_t id) {
    std::vector<TransitionLabel> path;
    for (std::uint32_t n = id; nodes[n].parent != 0xffffffffu; n = nodes[n].parent) path.push_back(nodes[n].via);
    std::reverse(path.begin(), path.end());
    return path;
  };

  while (!frontier.empty()) {
    if (options.time_budget.count() != 0 && Clock::now() - start >= options.time_budget) {
      res.truncated = true;
      break;
    }
    Item item = std::move(frontier.front());
    frontier.pop_front();
    std::vector<Successor> succ = engine.enumerate_sync_steps(item.config);
    if (succ.empty()) {
      ++res.maximal;
      continue;
    }
    if (nodes[item.id].depth >= options.depth) {
      res.depth_bound_hit = true;
      continue;
    }
    for (Successor& s : succ) {
      ++res.transitions;
      OrderMonitor mon = item.monitor;
      std::optional<std::string> bad = mon.step(s.label);
      if (bad) {
        res.violation = std::move(bad);
        res.trace = trace_to(item.id);
        res.trace.push_back(s.label);
        res.product_states = nodes.size();
        return res;
      }
      std::string key = product_key(s.config, mon);
      if (seen.count(key)) continue;
      if (options.max_states != 0 && nodes.size() >= options.max_states) {
        res.truncated = true;
        continue;
      }
      std::uint32_t id = static_cast<std::uint32_t>(nodes.size());
      seen.emplace(std::move(key), id);
      nodes.push_back({item.id, nodes[item.id].depth + 1, s.label});
      frontier.push_back({id, std::move(s.config), std::move(mon)});
    }
  }
  res.product_states = nodes.size();
  return res;
}

}  // namespace scoopw
