#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <json.hpp>

#include "scoopw/explore/explorer.hpp"
#include "scoopw/props/compare.hpp"
#include "scoopw/props/trace_check.hpp"

namespace scoopw {

inline constexpr int kReportSchemaVersion = 1;
inline constexpr std::size_t kDotStateLimit = 2000;

nlohmann::json labels_json(const std::vector<TransitionLabel>& path, const CompiledProgram& program);
nlohmann::json error_json(const ErrorMarker& m);

// Stats, per-rule verdicts and one shortest witness per matched rule.
nlohmann::json explore_json(const std::string& program_name, const std::string& model, const StateSpace& space,
                            const std::vector<ErrorRule>& rules, const CompiledProgram& program);
nlohmann::json compare_json(const std::string& program_name, const ComparisonReport& report,
                            const CompiledProgram& program);
nlohmann::json trace_check_json(const std::string& program_name, const std::string& model,
                                const TraceCheckResult& result, std::uint32_t depth, const CompiledProgram& program);

std::string explore_text(const std::string& program_name, const std::string& model, const StateSpace& space,
                         const std::vector<ErrorRule>& rules, const CompiledProgram& program);
std::string compare_text(const ComparisonReport& report);
std::string trace_check_text(const std::string& model, const TraceCheckResult& result, const CompiledProgram& program);

// Graphviz rendering of the transition system. Throws std::length_error
// above `limit` states.
std::string to_dot(const StateSpace& space, const CompiledProgram& program, std::size_t limit = kDotStateLimit);

}  // namespace scoopw
