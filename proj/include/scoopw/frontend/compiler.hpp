#pragma once

#include <memory>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "scoopw/frontend/ast.hpp"
#include "scoopw/frontend/program.hpp"

namespace scoopw::frontend {

class CompileError : public std::runtime_error {
 public:
  explicit CompileError(std::vector<Diagnostic> diags);
  const std::vector<Diagnostic>& diagnostics() const { return diags_; }

 private:
  std::vector<Diagnostic> diags_;
};

// Type and separateness checks. An empty result means `compile` succeeds.
std::vector<Diagnostic> check(const Program& program);

// Same checks, plus warnings (ignored postconditions, preconditions on
// methods without separate formals).
std::vector<Diagnostic> warnings(const Program& program);

// Lowers every method to a control-flow graph. Throws CompileError when
// `check` would report anything.
CompiledProgram compile(const Program& program);

struct BuildResult {
  std::shared_ptr<const CompiledProgram> program;
  std::vector<Diagnostic> errors;
  std::vector<Diagnostic> warnings;

  bool ok() const { return program != nullptr; }
};

// parse + check + compile.
BuildResult build(std::string_view source);

}  // namespace scoopw::frontend
