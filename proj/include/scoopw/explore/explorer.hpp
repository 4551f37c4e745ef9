#pragma once

#include <chrono>
#include <cstdint>
#include <deque>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "scoopw/engine/engine.hpp"
#include "scoopw/props/rules.hpp"

namespace scoopw {

using StateId = std::uint32_t;
inline constexpr StateId kNoState = 0xffffffffu;

// Zero means unlimited.
struct ExploreLimits {
  std::uint64_t max_states = 0;
  std::uint32_t max_depth = 0;
  std::chrono::milliseconds time_budget{0};
};

enum class Strategy { Bfs, Dfs, Parallel };

struct ExploreOptions {
  Strategy strategy = Strategy::Bfs;
  unsigned workers = 4;  // Parallel only
  ExploreLimits limits;
  std::vector<ErrorRule> rules;
  bool record_transitions = true;
  bool keep_configs = false;      // keep every configuration, not only finals
  bool check_collisions = false;  // keep configurations and compare them on every key hit
  // Called once per new state, after error rules were applied.
  std::function<void(StateId, const Configuration&)> on_state;
};

struct StateRecord {
  std::string key;
  std::uint32_t depth = 0;
  StateId parent = kNoState;
  TransitionLabel via;  // label of the step from parent
  bool final = false;   // no successors (error states included)
  bool expanded = false;
  std::optional<ErrorMarker> error;
  std::optional<Configuration> config;
};

struct Transition {
  StateId from = 0;
  StateId to = 0;
  TransitionLabel label;
};

struct ExploreStats {
  std::uint64_t configurations = 0;
  std::uint64_t transitions = 0;
  std::uint64_t finals = 0;
  std::vector<ErrorMarker> errors;  // one per error state, discovery order
  std::uint64_t max_frontier = 0;
  double wall_time = 0;  // seconds
};

struct StateSpace {
  std::deque<StateRecord> states;  // id = index; stable addresses
  std::unordered_map<std::string_view, StateId> index;
  std::vector<Transition> transitions;
  std::vector<StateId> error_states;
  ExploreStats stats;
  bool truncated = false;
  std::string truncation;  // which limit

  std::optional<StateId> find(std::string_view key) const;
  std::vector<StateId> finals() const;
  // Labels from the initial state to `id`.
  std::vector<TransitionLabel> witness(StateId id) const;
  std::vector<std::string> sorted_keys() const;
  // First error state whose marker comes from `rule`.
  std::optional<StateId> first_error(std::string_view rule) const;
  bool matched(std::string_view rule) const { return first_error(rule).has_value(); }
};

StateSpace explore(const Engine& engine, const ExploreOptions& options = {});

// Terminal strongly connected components without a final state.
struct SccSummary {
  std::vector<StateId> states;  // ascending
  std::vector<Rule> rules;      // distinct rules of the internal transitions
};

std::vector<SccSummary> terminal_scc_report(const StateSpace& space);

enum class Verdict { No, Yes, Unknown };

const char* to_string(Verdict v);

struct DiffRecord {
  std::int64_t configurations = 0;  // b - a
  std::int64_t transitions = 0;
  std::int64_t finals = 0;
  std::int64_t errors = 0;
  struct RuleVerdicts {
    std::string rule;
    Verdict a = Verdict::No;
    Verdict b = Verdict::No;
  };
  std::vector<RuleVerdicts> verdicts;
};

Verdict verdict(const StateSpace& space, std::string_view rule);
DiffRecord stats_diff(const StateSpace& a, const StateSpace& b, const std::vector<ErrorRule>& rules);

}  // namespace scoopw
