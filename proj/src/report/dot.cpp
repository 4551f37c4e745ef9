#include <sstream>
#include <stdexcept>

#include "scoopw/report/report.hpp"

namespace scoopw {

std::string to_dot(const StateSpace& space, const CompiledProgram& program, std::size_t limit) {
  if (space.states.size() > limit) {
    throw std::length_error("state space has " + std::to_string(space.states.size()) + " states; DOT output is limited to " +
                            std::to_string(limit));
  }
  std::ostringstream out;
  out << "digraph states {\n  node [shape=circle, label=\"\"];\n";
  for (StateId i = 0; i < space.states.size(); ++i) {
    const StateRecord& r = space.states[i];
    out << "  s" << i << " [label=\"" << i << "\"";
    if (i == 0) out << ", style=bold";
    if (r.error) {
      out << ", shape=octagon, color=red, tooltip=\"" << r.error->rule << "\"";
    } else if (r.final) {
      out << ", shape=doublecircle";
    }
    out << "];\n";
  }
  for (const Transition& t : space.transitions) {
    std::string text = to_string(t.label, &program);
    std::string escaped;
    for (char c : text) {
      if (c == '"' || c == '\\') escaped.push_back('\\');
      escaped.push_back(c);
    }
    out << "  s" << t.from << " -> s" << t.to << " [label=\"" << escaped << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace scoopw
