#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "scoopw/frontend/ast.hpp"

namespace scoopw::frontend {

enum class TokenKind {
  Identifier,
  Integer,
  Keyword,
  Symbol,
  End,
  Invalid,
};

struct Token {
  TokenKind kind = TokenKind::End;
  std::string text;
  SourcePos pos;

  bool is_keyword(std::string_view kw) const { return kind == TokenKind::Keyword && text == kw; }
  bool is_symbol(std::string_view s) const { return kind == TokenKind::Symbol && text == s; }
};

// Splits source into tokens. `--` starts a comment running to end of line.
// Invalid characters produce TokenKind::Invalid tokens; the parser reports them.
std::vector<Token> tokenize(std::string_view source);

bool is_keyword(std::string_view word);

}  // namespace scoopw::frontend
