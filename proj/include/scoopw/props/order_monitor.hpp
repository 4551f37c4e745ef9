#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <utility>

#include "scoopw/engine/label.hpp"

namespace scoopw {

// Checks that every supplier runs the requests of one block instance
// contiguously and in the order they were logged. Trace-local: it is not part
// of a configuration and never enters canonical keys.
struct OrderMonitor {
  using BlockRef = std::pair<HandlerId, BlockInstanceId>;  // (client, instance)

  std::map<HandlerId, BlockRef> last_served;               // per supplier
  std::map<HandlerId, std::set<BlockRef>> finished;        // per supplier
  std::map<std::tuple<HandlerId, BlockInstanceId, HandlerId>, std::uint32_t> next_seq;  // (client, instance, supplier)

  bool operator==(const OrderMonitor&) const = default;

  // Returns a description of the violation, if `label` causes one.
  std::optional<std::string> step(const TransitionLabel& label);
  // Deterministic encoding, for product-state deduplication.
  std::string serialize() const;
};

}  // namespace scoopw
