#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "scoopw/frontend/ast.hpp"

namespace scoopw::frontend {

struct ParseResult {
  std::optional<Program> program;
  std::vector<Diagnostic> errors;

  bool ok() const { return program.has_value() && errors.empty(); }
};

// Parses mini-SCOOP source. Stops at the first syntax error; duplicate
// class, attribute and method names are reported after a successful parse.
ParseResult parse(std::string_view source);

}  // namespace scoopw::frontend
