#include "scoopw/engine/label.hpp"

#include <array>

namespace scoopw {

namespace {

constexpr std::array<const char*, kRuleCount> kNames = {
    "create_separate", "reserve",         "prelock",     "lock",       "enqueue_command", "enqueue_query",
    "dequeue_execute", "query_reply",     "wait_retry",  "block_exit", "release",         "handler_idle",
};

std::string h(HandlerId id) { return "h" + std::to_string(id); }

}  // namespace

const char* rule_name(Rule r) { return kNames[static_cast<std::size_t>(r)]; }

std::optional<Rule> parse_rule(std::string_view name) {
  for (std::size_t i = 0; i < kNames.size(); ++i) {
    if (name == kNames[i]) return static_cast<Rule>(i);
  }
  return std::nullopt;
}

std::string to_string(const TransitionLabel& l, const CompiledProgram* program) {
  std::string s = h(l.handler) + " " + rule_name(l.rule);
  if (l.other != kNoHandler) s += " " + h(l.other);
  if (l.client != kNoHandler) s += " from " + h(l.client);
  if (l.rule == Rule::Prelock) s += " n" + std::to_string(l.node);
  if (!l.targets.empty()) {
    s += " {";
    for (std::size_t i = 0; i < l.targets.size(); ++i) s += (i ? "," : "") + h(l.targets[i]);
    s += "}";
  }
  if (l.binds_block) s += " b" + std::to_string(l.block);
  if (l.rule == Rule::EnqueueCommand || l.rule == Rule::EnqueueQuery || l.rule == Rule::DequeueExecute) {
    s += "#" + std::to_string(l.seq);
  }
  if (l.method != kNoMethod) {
    s += " ";
    s += program ? program->qualified_name(l.method) : "m" + std::to_string(l.method);
  }
  return s;
}

}  // namespace scoopw
