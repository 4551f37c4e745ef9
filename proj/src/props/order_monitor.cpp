#include "scoopw/props/order_monitor.hpp"

namespace scoopw {

namespace {

std::string block_name(const OrderMonitor::BlockRef& b) {
  return "h" + std::to_string(b.first) + "/b" + std::to_string(b.second);
}

void put(std::string& out, std::uint32_t v) {
  do {
    unsigned char byte = v & 0x7f;
    v >>= 7;
    if (v) byte |= 0x80;
    out.push_back(static_cast<char>(byte));
  } while (v);
}

}  // namespace

std::optional<std::string> OrderMonitor::step(const TransitionLabel& label) {
  switch (label.rule) {
    case Rule::Reserve:
    case Rule::Lock:
    case Rule::WaitRetry: {
      if (!label.binds_block) return std::nullopt;
      // A reused instance id starts a fresh block.
      BlockRef b{label.handler, label.block};
      for (auto& [s, set] : finished) set.erase(b);
      for (auto it = last_served.begin(); it != last_served.end();) {
        it = it->second == b ? last_served.erase(it) : std::next(it);
      }
      for (auto it = next_seq.begin(); it != next_seq.end();) {
        bool same = std::get<0>(it->first) == b.first && std::get<1>(it->first) == b.second;
        it = same ? next_seq.erase(it) : std::next(it);
      }
      return std::nullopt;
    }
    case Rule::DequeueExecute: {
      HandlerId supplier = label.handler;
      BlockRef b{label.client, label.block};
      std::string where = "h" + std::to_string(supplier) + " served " + block_name(b) + "#" + std::to_string(label.seq);
      if (finished[supplier].count(b)) return where + " after that block was interrupted";
      auto last = last_served.find(supplier);
      if (last == last_served.end()) {
        last_served.emplace(supplier, b);
      } else if (last->second != b) {
        finished[supplier].insert(last->second);
        last->second = b;
      }
      std::uint32_t& expected = next_seq[{b.first, b.second, supplier}];
      if (label.seq != expected) return where + " but expected #" + std::to_string(expected);
      expected = label.seq + 1;
      return std::nullopt;
    }
    default:
      return std::nullopt;
  }
}

std::string OrderMonitor::serialize() const {
  std::string out;
  put(out, static_cast<std::uint32_t>(last_served.size()));
  for (const auto& [s, b] : last_served) {
    put(out, s);
    put(out, b.first);
    put(out, b.second);
  }
  std::uint32_t nonempty = 0;
  for (const auto& [s, set] : finished) nonempty += !set.empty();
  put(out, nonempty);
  for (const auto& [s, set] : finished) {
    if (set.empty()) continue;
    put(out, s);
    put(out, static_cast<std::uint32_t>(set.size()));
    for (const auto& b : set) {
      put(out, b.first);
      put(out, b.second);
    }
  }
  put(out, static_cast<std::uint32_t>(next_seq.size()));
  for (const auto& [k, v] : next_seq) {
    put(out, std::get<0>(k));
    put(out, std::get<1>(k));
    put(out, std::get<2>(k));
    put(out, v);
  }
  return out;
}

}  // namespace scoopw
