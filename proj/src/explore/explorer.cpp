#include "scoopw/explore/explorer.hpp"

#include <algorithm>
#include <stdexcept>
#include <thread>

#include "scoopw/state/canonical.hpp"

namespace scoopw {

std::optional<StateId> StateSpace::find(std::string_view key) const {
  auto it = index.find(key);
  if (it == index.end()) return std::nullopt;
  return it->second;
}

std::vector<StateId> StateSpace::finals() const {
  std::vector<StateId> out;
  for (StateId i = 0; i < states.size(); ++i) {
    if (states[i].final) out.push_back(i);
  }
  return out;
}

std::vector<TransitionLabel> StateSpace::witness(StateId id) const {
  std::vector<TransitionLabel> path;
  for (StateId s = id; states[s].parent != kNoState; s = states[s].parent) path.push_back(states[s].via);
  std::reverse(path.begin(), path.end());
  return path;
}

std::vector<std::string> StateSpace::sorted_keys() const {
  std::vector<std::string> keys;
  keys.reserve(states.size());
  for (const StateRecord& r : states) keys.push_back(r.key);
  std::sort(keys.begin(), keys.end());
  return keys;
}

std::optional<StateId> StateSpace::first_error(std::string_view rule) const {
  for (StateId id : error_states) {
    if (states[id].error->rule == rule) return id;
  }
  return std::nullopt;
}

namespace {

using Clock = std::chrono::steady_clock;

struct Prepared {
  TransitionLabel label;
  Configuration config;
  std::string key;
};

struct Work {
  StateId id;
  Configuration config;
};

class Explorer {
 public:
  Explorer(const Engine& engine, const ExploreOptions& options)
      : engine_(engine), opt_(options), start_(Clock::now()) {
    for (const ErrorRule& r : opt_.rules) {
      if (r.kind == ErrorRule::Kind::Stuck) stuck_ = &r;
    }
  }

  StateSpace run() {
    Prepared init{{}, engine_.initial(), {}};
    seal(init);
    std::optional<StateId> root = insert(std::move(init), kNoState, 0);
    if (root) {
      switch (opt_.strategy) {
        case Strategy::Bfs:
          bfs();
          break;
        case Strategy::Dfs:
          dfs();
          break;
        case Strategy::Parallel:
          parallel();
          break;
      }
    }
    space_.stats.configurations = space_.states.size();
    space_.stats.wall_time = std::chrono::duration<double>(Clock::now() - start_).count();
    return std::move(space_);
  }

 private:
  void seal(Prepared& p) const {
    if (!p.config.error) {
      for (const ErrorRule& r : opt_.rules) {
        if (auto m = evaluate(r, engine_, p.config)) {
          p.config.error = std::move(m);
          break;
        }
      }
    }
    p.key = canonical_key(p.config);
  }

  std::vector<Prepared> prepare(const Configuration& cfg) const {
    std::vector<Prepared> out;
    for (Successor& s : engine_.enumerate_sync_steps(cfg)) {
      Prepared p{std::move(s.label), std::move(s.config), {}};
      seal(p);
      out.push_back(std::move(p));
    }
    return out;
  }

  void truncate(const char* why) {
    if (!space_.truncated) space_.truncation = why;
    space_.truncated = true;
  }

  bool out_of_time() {
    if (opt_.limits.time_budget.count() == 0) return false;
    if (Clock::now() - start_ < opt_.limits.time_budget) return false;
    truncate("time_budget");
    return true;
  }

  // Records the transition and returns the target id if the state is new
  // and must be expanded.
  std::optional<StateId> insert(Prepared p, StateId from, std::uint32_t depth) {
    auto hit = space_.index.find(p.key);
    if (hit != space_.index.end()) {
      if (opt_.check_collisions) {
        const auto& seen = space_.states[hit->second].config;
        if (seen && !(*seen == p.config)) throw std::logic_error("canonical key collision");
      }
      add_transition(from, hit->second, std::move(p.label));
      return std::nullopt;
    }
    if (opt_.limits.max_states != 0 && space_.states.size() >= opt_.limits.max_states) {
      truncate("max_states");
      return std::nullopt;
    }
    StateId id = static_cast<StateId>(space_.states.size());
    StateRecord& r = space_.states.emplace_back();
    r.key = std::move(p.key);
    r.depth = depth;
    r.parent = from;
    if (from != kNoState) r.via = p.label;
    space_.index.emplace(r.key, id);
    if (from != kNoState) add_transition(from, id, std::move(p.label));
    if (opt_.on_state) opt_.on_state(id, p.config);
    if (p.config.error) {
      r.final = true;
      r.error = *p.config.error;
      r.config = std::move(p.config);
      space_.error_states.push_back(id);
      space_.stats.errors.push_back(*r.error);
      ++space_.stats.finals;
      return std::nullopt;
    }
    if (opt_.keep_configs || opt_.check_collisions) r.config = p.config;
    pending_ = std::move(p.config);
    return id;
  }

  void add_transition(StateId from, StateId to, TransitionLabel label) {
    ++space_.stats.transitions;
    if (opt_.record_transitions) space_.transitions.push_back({from, to, std::move(label)});
  }

  // Handles depth limits and terminal states. Returns false if `w` must not
  // be expanded further.
  bool admit(const Work& w, const std::vector<Prepared>& succ) {
    StateRecord& r = space_.states[w.id];
    r.expanded = true;
    if (succ.empty()) {
      r.final = true;
      ++space_.stats.finals;
      r.config = w.config;
      if (stuck_) {
        if (auto m = stuck_rule(w.config)) {
          m->rule = stuck_->name;
          r.error = *m;
          space_.error_states.push_back(w.id);
          space_.stats.errors.push_back(std::move(*m));
        }
      }
      return false;
    }
    if (opt_.limits.max_depth != 0 && r.depth >= opt_.limits.max_depth) {
      truncate("max_depth");
      return false;
    }
    return true;
  }

  void bfs() {
    std::deque<Work> frontier;
    frontier.push_back({0, std::move(pending_)});
    while (!frontier.empty()) {
      space_.stats.max_frontier = std::max<std::uint64_t>(space_.stats.max_frontier, frontier.size());
      if (out_of_time()) return;
      Work w = std::move(frontier.front());
      frontier.pop_front();
      std::vector<Prepared> succ = prepare(w.config);
      if (!admit(w, succ)) continue;
      std::uint32_t depth = space_.states[w.id].depth + 1;
      for (Prepared& p : succ) {
        if (auto id = insert(std::move(p), w.id, depth)) frontier.push_back({*id, std::move(pending_)});
      }
    }
  }

  void dfs() {
    std::vector<Work> stack;
    stack.push_back({0, std::move(pending_)});
    while (!stack.empty()) {
      space_.stats.max_frontier = std::max<std::uint64_t>(space_.stats.max_frontier, stack.size());
      if (out_of_time()) return;
      Work w = std::move(stack.back());
      stack.pop_back();
      std::vector<Prepared> succ = prepare(w.config);
      if (!admit(w, succ)) continue;
      std::uint32_t depth = space_.states[w.id].depth + 1;
      std::vector<Work> fresh;
      for (Prepared& p : succ) {
        if (auto id = insert(std::move(p), w.id, depth)) fresh.push_back({*id, std::move(pending_)});
      }
      for (auto it = fresh.rbegin(); it != fresh.rend(); ++it) stack.push_back(std::move(*it));
    }
  }

  // Level-synchronous: successors of a whole level are computed by the
  // workers, then merged in frontier order, which reproduces BFS exactly.
  void parallel() {
    unsigned workers = std::max(1u, opt_.workers);
    std::vector<Work> level;
    level.push_back({0, std::move(pending_)});
    while (!level.empty()) {
      space_.stats.max_frontier = std::max<std::uint64_t>(space_.stats.max_frontier, level.size());
      if (out_of_time()) return;
      std::vector<std::vector<Prepared>> succ(level.size());
      std::vector<std::exception_ptr> failures(workers);
      std::vector<std::thread> pool;
      for (unsigned t = 0; t < workers; ++t) {
        pool.emplace_back([&, t] {
          try {
            for (std::size_t i = t; i < level.size(); i += workers) succ[i] = prepare(level[i].config);
          } catch (...) {
            failures[t] = std::current_exception();
          }
        });
      }
      for (std::thread& th : pool) th.join();
      for (auto& f : failures) {
        if (f) std::rethrow_exception(f);
      }
      std::vector<Work> next;
      for (std::size_t i = 0; i < level.size(); ++i) {
        if (!admit(level[i], succ[i])) continue;
        std::uint32_t depth = space_.states[level[i].id].depth + 1;
        for (Prepared& p : succ[i]) {
          if (auto id = insert(std::move(p), level[i].id, depth)) next.push_back({*id, std::move(pending_)});
        }
      }
      level = std::move(next);
    }
  }

  const Engine& engine_;
  const ExploreOptions& opt_;
  const ErrorRule* stuck_ = nullptr;
  Clock::time_point start_;
  StateSpace space_;
  Configuration pending_;  // configuration of the state insert() just created
};

}  // namespace

StateSpace explore(const Engine& engine, const ExploreOptions& options) { return Explorer(engine, options).run(); }

}  // namespace scoopw
