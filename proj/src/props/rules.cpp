#include "scoopw/props/rules.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include <json.hpp>

namespace scoopw {

ErrorRule deadlock_rule_spec() { return {"deadlock", ErrorRule::Kind::Deadlock, {}, Overlap::SharedFormalTarget}; }

ErrorRule stuck_rule_spec() { return {"stuck", ErrorRule::Kind::Stuck, {}, Overlap::SharedFormalTarget}; }

ErrorRule mutex_rule_spec(std::string method, std::string name) {
  if (name.empty()) name = "mutex:" + method;
  return {std::move(name), ErrorRule::Kind::Mutex, std::move(method), Overlap::SharedFormalTarget};
}

std::optional<ErrorMarker> deadlock_rule(const Engine& engine, const Configuration& cfg) {
  std::vector<WaitEdge> edges = engine.wait_edges(cfg);
  if (edges.empty()) return std::nullopt;
  std::map<HandlerId, std::vector<const WaitEdge*>> out;
  for (const WaitEdge& e : edges) out[e.waiter].push_back(&e);
  for (auto& [w, list] : out) {
    std::sort(list.begin(), list.end(), [](const WaitEdge* a, const WaitEdge* b) {
      return std::tie(a->owner, a->resource, a->resource_id) < std::tie(b->owner, b->resource, b->resource_id);
    });
  }

  // Iterative DFS; the first back edge closes the reported cycle.
  std::map<HandlerId, int> colour;  // 0 new, 1 on path, 2 done
  std::vector<const WaitEdge*> path;
  std::vector<WaitEdge> cycle;
  for (const auto& [root, unused] : out) {
    if (colour[root] != 0) continue;
    std::vector<std::pair<HandlerId, std::size_t>> stack{{root, 0}};
    colour[root] = 1;
    while (!stack.empty() && cycle.empty()) {
      auto& [h, next] = stack.back();
      auto it = out.find(h);
      if (it == out.end() || next == it->second.size()) {
        colour[h] = 2;
        stack.pop_back();
        if (!path.empty()) path.pop_back();
        continue;
      }
      const WaitEdge* e = it->second[next++];
      int c = colour[e->owner];
      if (c == 1) {
        auto start = std::find_if(path.begin(), path.end(), [&](const WaitEdge* p) { return p->waiter == e->owner; });
        for (auto p = start; p != path.end(); ++p) cycle.push_back(**p);
        cycle.push_back(*e);
      } else if (c == 0) {
        colour[e->owner] = 1;
        path.push_back(e);
        stack.push_back({e->owner, 0});
      }
    }
    if (!cycle.empty()) break;
  }
  if (cycle.empty()) return std::nullopt;
  auto smallest = std::min_element(cycle.begin(), cycle.end(),
                                   [](const WaitEdge& a, const WaitEdge& b) { return a.waiter < b.waiter; });
  std::rotate(cycle.begin(), smallest, cycle.end());

  ErrorMarker m;
  m.kind = ErrorKind::Deadlock;
  m.rule = "deadlock";
  m.message = "wait cycle";
  for (const WaitEdge& e : cycle) {
    m.message += " " + to_string(e);
    m.handlers.push_back(e.waiter);
  }
  m.cycle = std::move(cycle);
  return m;
}

namespace {

bool method_matches(const CompiledProgram& p, MethodId id, std::string_view name) {
  const MethodInfo& m = p.method(id);
  if (m.is_getter) return false;
  if (name.find('.') != std::string_view::npos) return p.qualified_name(id) == name;
  return m.name == name;
}

}  // namespace

std::vector<std::pair<HandlerId, std::vector<HandlerId>>> frames_inside(const Configuration& cfg,
                                                                        std::string_view method) {
  std::vector<std::pair<HandlerId, std::vector<HandlerId>>> found;
  const CompiledProgram& p = *cfg.program;
  for (HandlerId hid = 0; hid < cfg.handlers.size(); ++hid) {
    for (const Frame& f : cfg.handlers[hid].stack) {
      if (!method_matches(p, f.method, method)) continue;
      const MethodInfo& m = p.method(f.method);
      if (!m.implicit_block || f.blocks.empty() || f.blocks.front().block != *m.implicit_block) continue;
      std::vector<HandlerId> targets;
      for (std::uint32_t slot : m.controlled_formals) {
        const Value& v = f.locals[slot];
        if (v.is_ref()) targets.push_back(v.handler);
      }
      found.push_back({hid, std::move(targets)});
    }
  }
  return found;
}

std::optional<ErrorMarker> mutex_rule(const ErrorRule& rule, const Configuration& cfg) {
  auto frames = frames_inside(cfg, rule.method);
  for (std::size_t i = 0; i < frames.size(); ++i) {
    for (std::size_t j = i + 1; j < frames.size(); ++j) {
      if (frames[i].first == frames[j].first) continue;
      for (HandlerId t : frames[i].second) {
        if (std::find(frames[j].second.begin(), frames[j].second.end(), t) == frames[j].second.end()) continue;
        ErrorMarker m;
        m.kind = ErrorKind::MutexViolation;
        m.rule = rule.name;
        m.handlers = {frames[i].first, frames[j].first};
        m.message = "h" + std::to_string(frames[i].first) + " and h" + std::to_string(frames[j].first) +
                    " both inside " + rule.method + " sharing h" + std::to_string(t);
        return m;
      }
    }
  }
  return std::nullopt;
}

std::optional<ErrorMarker> stuck_rule(const Configuration& cfg) {
  std::vector<HandlerId> stuck;
  for (HandlerId hid = 0; hid < cfg.handlers.size(); ++hid) {
    const Handler& h = cfg.handlers[hid];
    if (h.status != HandlerStatus::Idle || !inbox_empty(h.inbox)) stuck.push_back(hid);
  }
  if (stuck.empty()) return std::nullopt;
  ErrorMarker m;
  m.kind = ErrorKind::Stuck;
  m.rule = "stuck";
  m.message = "no step enabled but";
  for (HandlerId h : stuck) m.message += " h" + std::to_string(h);
  m.message += stuck.size() == 1 ? " is not idle" : " are not idle";
  m.handlers = std::move(stuck);
  return m;
}

std::optional<ErrorMarker> evaluate(const ErrorRule& rule, const Engine& engine, const Configuration& cfg) {
  switch (rule.kind) {
    case ErrorRule::Kind::Deadlock: {
      auto m = deadlock_rule(engine, cfg);
      if (m) m->rule = rule.name;
      return m;
    }
    case ErrorRule::Kind::Mutex:
      return mutex_rule(rule, cfg);
    case ErrorRule::Kind::Stuck:
      return std::nullopt;
  }
  return std::nullopt;
}

std::vector<ErrorRule> parse_builtin_rules(std::string_view list) {
  std::vector<ErrorRule> rules;
  while (!list.empty()) {
    std::size_t comma = list.find(',');
    std::string_view item = list.substr(0, comma);
    list = comma == std::string_view::npos ? std::string_view{} : list.substr(comma + 1);
    if (item.empty()) continue;
    if (item == "deadlock") {
      rules.push_back(deadlock_rule_spec());
    } else if (item == "stuck") {
      rules.push_back(stuck_rule_spec());
    } else if (item.starts_with("mutex:") && item.size() > 6) {
      rules.push_back(mutex_rule_spec(std::string(item.substr(6))));
    } else {
      throw std::invalid_argument("unknown rule '" + std::string(item) + "' (expected deadlock, stuck or mutex:<method>)");
    }
  }
  return rules;
}

std::vector<ErrorRule> parse_rule_file(std::string_view json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("rule file: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("rules") || !doc["rules"].is_array()) {
    throw std::invalid_argument("rule file: expected {\"rules\": [...]}");
  }
  std::vector<ErrorRule> rules;
  for (const auto& r : doc["rules"]) {
    std::string kind = r.value("kind", "");
    std::string name = r.value("name", "");
    if (kind == "deadlock") {
      rules.push_back(deadlock_rule_spec());
    } else if (kind == "stuck") {
      rules.push_back(stuck_rule_spec());
    } else if (kind == "mutex") {
      std::string method = r.value("method", "");
      if (method.empty()) throw std::invalid_argument("rule file: mutex rule without a method");
      std::string overlap = r.value("overlap", "shared_formal_target");
      if (overlap != "shared_formal_target") throw std::invalid_argument("rule file: unknown overlap '" + overlap + "'");
      rules.push_back(mutex_rule_spec(method));
    } else {
      throw std::invalid_argument("rule file: unknown kind '" + kind + "'");
    }
    if (!name.empty()) rules.back().name = name;
  }
  return rules;
}

}  // namespace scoopw
