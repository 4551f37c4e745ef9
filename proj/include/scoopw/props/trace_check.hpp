#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "scoopw/engine/engine.hpp"

namespace scoopw {

struct TraceCheckOptions {
  std::uint32_t depth = 500;        // longest trace prefix examined
  std::uint64_t max_states = 0;     // product states; zero means unlimited
  std::chrono::milliseconds time_budget{0};
};

struct TraceCheckResult {
  std::uint64_t product_states = 0;  // (configuration, monitor) pairs visited
  std::uint64_t transitions = 0;
  std::uint64_t maximal = 0;         // product states without successors
  bool depth_bound_hit = false;      // some trace was cut at `depth`
  bool truncated = false;            // max_states or time budget hit
  std::optional<std::string> violation;
  std::vector<TransitionLabel> trace;  // from the initial state to the violation
};

// Runs the order monitor along every trace of the engine up to the depth
// bound. Traces that reach the same configuration with the same monitor state
// are merged, which leaves the set of reachable monitor verdicts unchanged.
TraceCheckResult trace_check(const Engine& engine, const TraceCheckOptions& options = {});

}  // namespace scoopw
