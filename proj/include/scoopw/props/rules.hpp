#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "scoopw/engine/engine.hpp"
#include "scoopw/state/configuration.hpp"

namespace scoopw {

enum class Overlap { SharedFormalTarget };

struct ErrorRule {
  enum class Kind { Deadlock, Mutex, Stuck };

  std::string name;
  Kind kind = Kind::Deadlock;
  std::string method;  // Mutex: plain or qualified method name ("eat", "PHILOSOPHER.eat")
  Overlap overlap = Overlap::SharedFormalTarget;

  bool operator==(const ErrorRule&) const = default;
};

ErrorRule deadlock_rule_spec();
ErrorRule stuck_rule_spec();
ErrorRule mutex_rule_spec(std::string method, std::string name = {});

// A cycle in the wait-for graph, rotated to start at its smallest waiter.
std::optional<ErrorMarker> deadlock_rule(const Engine& engine, const Configuration& cfg);
std::optional<ErrorMarker> mutex_rule(const ErrorRule& rule, const Configuration& cfg);
// Terminal configurations only: a handler that is not idle, or an inbox
// with pending requests.
std::optional<ErrorMarker> stuck_rule(const Configuration& cfg);

// Evaluates a Deadlock or Mutex rule. Stuck rules need the successor count
// and are left to the explorer (always nullopt here).
std::optional<ErrorMarker> evaluate(const ErrorRule& rule, const Engine& engine, const Configuration& cfg);

// "deadlock,stuck,mutex:eat" or a JSON rule file. Throws std::invalid_argument.
std::vector<ErrorRule> parse_builtin_rules(std::string_view list);
std::vector<ErrorRule> parse_rule_file(std::string_view json_text);

// Handlers referenced by the separate formals of every frame of `method`
// that is inside its body block.
std::vector<std::pair<HandlerId, std::vector<HandlerId>>> frames_inside(const Configuration& cfg,
                                                                        std::string_view method);

}  // namespace scoopw
