#pragma once

#include <string>

#include "scoopw/frontend/ast.hpp"

namespace scoopw::frontend {

// Renders a program back to mini-SCOOP source. Binary operators are fully
// parenthesised so that re-parsing yields the same tree.
std::string print(const Program& program);
std::string print(const Expr& expr);

}  // namespace scoopw::frontend
