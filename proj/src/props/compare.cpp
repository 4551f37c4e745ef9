#include "scoopw/props/compare.hpp"

#include <stdexcept>

namespace scoopw {

std::vector<std::string> ComparisonReport::discrepancies() const {
  std::vector<std::string> out;
  for (std::size_t r = 0; r < rules.size(); ++r) {
    bool yes = false, no = false;
    for (Verdict v : verdicts[r]) {
      yes |= v == Verdict::Yes;
      no |= v == Verdict::No;
    }
    if (yes && no) out.push_back(rules[r].name);
  }
  return out;
}

bool ComparisonReport::unknown() const {
  for (const ModelRun& run : runs) {
    if (run.space.truncated) return true;
  }
  return false;
}

ComparisonReport compare_semantics(std::shared_ptr<const CompiledProgram> program,
                                   const std::vector<std::string>& models, const ExploreOptions& options,
                                   const ModelOptions& model_options, const EngineOptions& engine_options) {
  if (models.size() < 2) throw std::invalid_argument("compare needs at least two models");
  ComparisonReport rep;
  rep.rules = options.rules;
  for (const std::string& id : models) {
    std::shared_ptr<const ExecutionModel> model = make_model(id, model_options);
    Engine engine(program, model, engine_options);
    rep.runs.push_back({id, explore(engine, options)});
  }
  for (const ErrorRule& r : rep.rules) {
    std::vector<Verdict> row;
    for (const ModelRun& run : rep.runs) row.push_back(verdict(run.space, r.name));
    rep.verdicts.push_back(std::move(row));
  }
  for (std::size_t i = 0; i < rep.runs.size(); ++i) {
    for (std::size_t j = i + 1; j < rep.runs.size(); ++j) {
      rep.pairs.push_back({i, j, stats_diff(rep.runs[i].space, rep.runs[j].space, rep.rules)});
    }
  }
  return rep;
}

}  // namespace scoopw
