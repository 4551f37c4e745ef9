#include "scoopw/explore/explorer.hpp"

namespace scoopw {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::No:
      return "no";
    case Verdict::Yes:
      return "yes";
    case Verdict::Unknown:
      return "unknown";
  }
  return "?";
}

Verdict verdict(const StateSpace& space, std::string_view rule) {
  if (space.truncated) return Verdict::Unknown;
  return space.matched(rule) ? Verdict::Yes : Verdict::No;
}

DiffRecord stats_diff(const StateSpace& a, const StateSpace& b, const std::vector<ErrorRule>& rules) {
  auto delta = [](std::uint64_t x, std::uint64_t y) { return static_cast<std::int64_t>(y) - static_cast<std::int64_t>(x); };
  DiffRecord d;
  d.configurations = delta(a.stats.configurations, b.stats.configurations);
  d.transitions = delta(a.stats.transitions, b.stats.transitions);
  d.finals = delta(a.stats.finals, b.stats.finals);
  d.errors = delta(a.stats.errors.size(), b.stats.errors.size());
  for (const ErrorRule& r : rules) {
    Verdict va = verdict(a, r.name);
    Verdict vb = verdict(b, r.name);
    if (a.truncated || b.truncated) va = vb = Verdict::Unknown;
    d.verdicts.push_back({r.name, va, vb});
  }
  return d;
}

}  // namespace scoopw
