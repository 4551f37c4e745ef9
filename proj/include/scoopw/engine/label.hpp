#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "scoopw/frontend/program.hpp"
#include "scoopw/value.hpp"

namespace scoopw {

enum class Rule : std::uint8_t {
  CreateSeparate,
  Reserve,
  Prelock,
  Lock,
  EnqueueCommand,
  EnqueueQuery,
  DequeueExecute,
  QueryReply,
  WaitRetry,
  BlockExit,
  Release,
  HandlerIdle,
};

inline constexpr std::size_t kRuleCount = 12;

// Stable identifiers used in reports and by monitors.
const char* rule_name(Rule r);
std::optional<Rule> parse_rule(std::string_view name);

struct TransitionLabel {
  Rule rule = Rule::HandlerIdle;
  HandlerId handler = 0;           // the handler taking the step
  HandlerId other = kNoHandler;    // supplier, created handler, or reply target
  HandlerId client = kNoHandler;   // dequeue_execute: the request's client
  bool binds_block = false;        // block and seq below are meaningful
  BlockInstanceId block = 0;
  std::uint32_t seq = 0;
  MethodId method = kNoMethod;
  NodeId node = 0;                 // prelock
  std::vector<HandlerId> targets;  // reserve, lock, wait_retry

  bool operator==(const TransitionLabel&) const = default;
};

std::string to_string(const TransitionLabel& label, const CompiledProgram* program = nullptr);

}  // namespace scoopw
