#include <sstream>

#include "scoopw/report/report.hpp"

namespace scoopw {

using nlohmann::json;

namespace {

json label_json(const TransitionLabel& l, const CompiledProgram& program) {
  json j;
  j["rule"] = rule_name(l.rule);
  j["handler"] = l.handler;
  if (l.other != kNoHandler) j["other"] = l.other;
  if (l.client != kNoHandler) j["client"] = l.client;
  if (l.binds_block) {
    j["block"] = l.block;
    if (l.rule == Rule::EnqueueCommand || l.rule == Rule::EnqueueQuery || l.rule == Rule::DequeueExecute) {
      j["seq"] = l.seq;
    }
  }
  if (l.rule == Rule::Prelock) j["node"] = l.node;
  if (!l.targets.empty()) j["targets"] = l.targets;
  if (l.method != kNoMethod) j["method"] = program.qualified_name(l.method);
  j["text"] = to_string(l, &program);
  return j;
}

json stats_json(const StateSpace& space) {
  return {{"configurations", space.stats.configurations},
          {"transitions", space.stats.transitions},
          {"finals", space.stats.finals},
          {"errors", space.stats.errors.size()},
          {"max_frontier", space.stats.max_frontier},
          {"truncated", space.truncated},
          {"truncation", space.truncated ? json(space.truncation) : json(nullptr)},
          {"wall_time", space.stats.wall_time}};
}

std::size_t count_errors(const StateSpace& space, const std::string& rule) {
  std::size_t n = 0;
  for (StateId id : space.error_states) n += space.states[id].error->rule == rule;
  return n;
}

}  // namespace

json labels_json(const std::vector<TransitionLabel>& path, const CompiledProgram& program) {
  json arr = json::array();
  for (const TransitionLabel& l : path) arr.push_back(label_json(l, program));
  return arr;
}

json error_json(const ErrorMarker& m) {
  json j{{"kind", to_string(m.kind)}, {"rule", m.rule}, {"message", m.message}};
  if (!m.cycle.empty()) {
    json cyc = json::array();
    for (const WaitEdge& e : m.cycle) {
      cyc.push_back({{"waiter", e.waiter}, {"resource", e.resource}, {"resource_id", e.resource_id}, {"owner", e.owner},
                     {"text", to_string(e)}});
    }
    j["cycle"] = std::move(cyc);
  }
  if (!m.handlers.empty()) j["handlers"] = m.handlers;
  return j;
}

json explore_json(const std::string& program_name, const std::string& model, const StateSpace& space,
                  const std::vector<ErrorRule>& rules, const CompiledProgram& program) {
  json rep;
  rep["schema"] = kReportSchemaVersion;
  rep["command"] = "explore";
  rep["program"] = program_name;
  rep["model"] = model;
  rep["stats"] = stats_json(space);
  json verdicts = json::array();
  for (const ErrorRule& r : rules) {
    json v{{"rule", r.name}, {"verdict", to_string(verdict(space, r.name))}, {"matches", count_errors(space, r.name)}};
    if (auto id = space.first_error(r.name)) {
      v["error"] = error_json(*space.states[*id].error);
      v["witness"] = labels_json(space.witness(*id), program);
    }
    verdicts.push_back(std::move(v));
  }
  rep["verdicts"] = std::move(verdicts);
  // Runtime faults are reported even without a rule asking for them.
  if (auto id = space.first_error("runtime")) {
    rep["runtime_fault"] = {{"error", error_json(*space.states[*id].error)},
                            {"witness", labels_json(space.witness(*id), program)}};
  }
  return rep;
}

json compare_json(const std::string& program_name, const ComparisonReport& report, const CompiledProgram& program) {
  json rep;
  rep["schema"] = kReportSchemaVersion;
  rep["command"] = "compare";
  rep["program"] = program_name;
  json models = json::array();
  for (const ModelRun& run : report.runs) models.push_back(run.model);
  rep["models"] = std::move(models);
  json runs = json::array();
  for (const ModelRun& run : report.runs) {
    runs.push_back(explore_json(program_name, run.model, run.space, report.rules, program));
    runs.back().erase("schema");
    runs.back().erase("command");
    runs.back().erase("program");
  }
  rep["runs"] = std::move(runs);
  json verdicts = json::object();
  for (std::size_t r = 0; r < report.rules.size(); ++r) {
    json row = json::object();
    for (std::size_t m = 0; m < report.runs.size(); ++m) row[report.runs[m].model] = to_string(report.verdicts[r][m]);
    verdicts[report.rules[r].name] = std::move(row);
  }
  rep["verdicts"] = std::move(verdicts);
  json pairs = json::array();
  for (const auto& p : report.pairs) {
    json d{{"a", report.runs[p.a].model},
           {"b", report.runs[p.b].model},
           {"configurations", p.diff.configurations},
           {"transitions", p.diff.transitions},
           {"finals", p.diff.finals},
           {"errors", p.diff.errors}};
    json v = json::array();
    for (const auto& rv : p.diff.verdicts) v.push_back({{"rule", rv.rule}, {"a", to_string(rv.a)}, {"b", to_string(rv.b)}});
    d["verdicts"] = std::move(v);
    pairs.push_back(std::move(d));
  }
  rep["diffs"] = std::move(pairs);
  rep["discrepancies"] = report.discrepancies();
  rep["unknown"] = report.unknown();
  return rep;
}

json trace_check_json(const std::string& program_name, const std::string& model, const TraceCheckResult& result,
                      std::uint32_t depth, const CompiledProgram& program) {
  json rep;
  rep["schema"] = kReportSchemaVersion;
  rep["command"] = "trace-check";
  rep["program"] = program_name;
  rep["model"] = model;
  rep["depth"] = depth;
  rep["product_states"] = result.product_states;
  rep["transitions"] = result.transitions;
  rep["maximal"] = result.maximal;
  rep["depth_bound_hit"] = result.depth_bound_hit;
  rep["truncated"] = result.truncated;
  if (result.violation) {
    rep["violation"] = {{"message", *result.violation}, {"trace", labels_json(result.trace, program)}};
  } else {
    rep["violation"] = nullptr;
  }
  return rep;
}

std::string explore_text(const std::string& program_name, const std::string& model, const StateSpace& space,
                         const std::vector<ErrorRule>& rules, const CompiledProgram& program) {
  std::ostringstream out;
  out << program_name << " under " << model << ": " << space.stats.configurations << " configurations, "
      << space.stats.transitions << " transitions, " << space.stats.finals << " finals";
  if (space.truncated) out << " (truncated: " << space.truncation << ")";
  out << "\n";
  for (const ErrorRule& r : rules) {
    out << "  " << r.name << ": " << to_string(verdict(space, r.name));
    if (auto id = space.first_error(r.name)) {
      const ErrorMarker& m = *space.states[*id].error;
      out << " (" << count_errors(space, r.name) << " states) " << m.message << "\n";
      for (const TransitionLabel& l : space.witness(*id)) out << "    " << to_string(l, &program) << "\n";
    } else {
      out << "\n";
    }
  }
  if (auto id = space.first_error("runtime")) {
    out << "  runtime fault: " << space.states[*id].error->message << "\n";
    for (const TransitionLabel& l : space.witness(*id)) out << "    " << to_string(l, &program) << "\n";
  }
  return out.str();
}

std::string compare_text(const ComparisonReport& report) {
  std::ostringstream out;
  for (const ModelRun& run : report.runs) {
    out << run.model << ": " << run.space.stats.configurations << " configurations, "
        << run.space.stats.transitions << " transitions, " << run.space.stats.finals << " finals"
        << (run.space.truncated ? " (truncated)" : "") << "\n";
  }
  for (std::size_t r = 0; r < report.rules.size(); ++r) {
    out << report.rules[r].name << ":";
    for (std::size_t m = 0; m < report.runs.size(); ++m) {
      out << " " << report.runs[m].model << "=" << to_string(report.verdicts[r][m]);
    }
    out << "\n";
  }
  auto d = report.discrepancies();
  if (d.empty()) {
    out << "no discrepancies\n";
  } else {
    out << "discrepancies:";
    for (const auto& name : d) out << " " << name;
    out << "\n";
  }
  return out.str();
}

std::string trace_check_text(const std::string& model, const TraceCheckResult& result, const CompiledProgram& program) {
  std::ostringstream out;
  out << model << ": " << result.product_states << " trace states, " << result.transitions << " transitions";
  if (result.depth_bound_hit) out << ", depth bound reached";
  if (result.truncated) out << ", truncated";
  out << "\n";
  if (result.violation) {
    out << "order violation: " << *result.violation << "\n";
    for (const TransitionLabel& l : result.trace) out << "  " << to_string(l, &program) << "\n";
  } else {
    out << "no order violations\n";
  }
  return out.str();
}

}  // namespace scoopw
