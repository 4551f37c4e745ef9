#pragma once

#include <memory>
#include <string>
#include <vector>

#include "scoopw/explore/explorer.hpp"

namespace scoopw {

struct ModelRun {
  std::string model;
  StateSpace space;
};

struct ComparisonReport {
  std::vector<ErrorRule> rules;
  std::vector<ModelRun> runs;
  // verdicts[rule][run]
  std::vector<std::vector<Verdict>> verdicts;
  // Pairwise, runs i < j in order.
  struct Pair {
    std::size_t a = 0;
    std::size_t b = 0;
    DiffRecord diff;
  };
  std::vector<Pair> pairs;

  // Rules whose known verdicts differ between models.
  std::vector<std::string> discrepancies() const;
  bool unknown() const;
};

ComparisonReport compare_semantics(std::shared_ptr<const CompiledProgram> program,
                                   const std::vector<std::string>& models, const ExploreOptions& options,
                                   const ModelOptions& model_options = {}, const EngineOptions& engine_options = {});

}  // namespace scoopw
