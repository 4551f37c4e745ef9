#include <algorithm>
#include <set>

#include "scoopw/explore/explorer.hpp"

namespace scoopw {

std::vector<SccSummary> terminal_scc_report(const StateSpace& space) {
  const std::size_t n = space.states.size();
  std::vector<std::vector<std::size_t>> out(n);  // indices into transitions
  for (std::size_t i = 0; i < space.transitions.size(); ++i) out[space.transitions[i].from].push_back(i);

  // Iterative Tarjan.
  constexpr std::uint32_t kUnvisited = 0xffffffffu;
  std::vector<std::uint32_t> index(n, kUnvisited), low(n, 0), comp(n, kUnvisited);
  std::vector<bool> on_stack(n, false);
  std::vector<StateId> stack;
  std::vector<std::vector<StateId>> comps;
  std::uint32_t counter = 0;
  std::vector<std::pair<StateId, std::size_t>> call;
  for (StateId root = 0; root < n; ++root) {
    if (index[root] != kUnvisited) continue;
    call.push_back({root, 0});
    while (!call.empty()) {
      auto& [v, next] = call.back();
      if (next == 0 && index[v] == kUnvisited) {
        index[v] = low[v] = counter++;
        stack.push_back(v);
        on_stack[v] = true;
      }
      if (next < out[v].size()) {
        StateId w = space.transitions[out[v][next++]].to;
        if (index[w] == kUnvisited) {
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        std::vector<StateId> c;
        StateId w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp[w] = static_cast<std::uint32_t>(comps.size());
          c.push_back(w);
        } while (w != v);
        comps.push_back(std::move(c));
      }
      StateId done = v;
      call.pop_back();
      if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[done]);
    }
  }

  std::vector<SccSummary> report;
  for (std::uint32_t c = 0; c < comps.size(); ++c) {
    bool terminal = true;
    bool has_final = false;
    std::set<Rule> rules;
    for (StateId s : comps[c]) {
      if (space.states[s].final || !space.states[s].expanded) has_final = true;
      for (std::size_t t : out[s]) {
        const Transition& tr = space.transitions[t];
        if (comp[tr.to] != c) terminal = false;
        else rules.insert(tr.label.rule);
      }
    }
    if (!terminal || has_final) continue;
    SccSummary s;
    s.states = comps[c];
    std::sort(s.states.begin(), s.states.end());
    s.rules.assign(rules.begin(), rules.end());
    report.push_back(std::move(s));
  }
  std::sort(report.begin(), report.end(),
            [](const SccSummary& a, const SccSummary& b) { return a.states.front() < b.states.front(); });
  return report;
}

}  // namespace scoopw
