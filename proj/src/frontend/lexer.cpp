#include "scoopw/frontend/lexer.hpp"

#include <array>
#include <cctype>

namespace scoopw::frontend {

namespace {

constexpr std::array kKeywords = {
    "class", "end",   "require", "ensure",   "local", "do",      "create", "if",
    "then",  "else",  "elseif",  "from",     "until", "loop",    "separate",
    "and",   "or",    "not",     "True",     "False", "Void",    "inherit",
    "INTEGER", "BOOLEAN",
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

}  // namespace

bool is_keyword(std::string_view word) {
  for (const char* kw : kKeywords) {
    if (word == kw) return true;
  }
  return false;
}

std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  int line = 1;
  int col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n && i < src.size(); ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };

  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '-' && i + 1 < src.size() && src[i + 1] == '-') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    Token tok;
    tok.pos = {line, col};
    if (ident_start(c)) {
      std::size_t j = i;
      while (j < src.size() && ident_char(src[j])) ++j;
      tok.text = std::string(src.substr(i, j - i));
      tok.kind = is_keyword(tok.text) ? TokenKind::Keyword : TokenKind::Identifier;
      advance(j - i);
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      tok.kind = TokenKind::Integer;
      tok.text = std::string(src.substr(i, j - i));
      advance(j - i);
    } else {
      static constexpr std::array<std::string_view, 5> two = {":=", "/=", "<=", ">="};
      bool matched = false;
      for (std::string_view s : two) {
        if (!s.empty() && src.substr(i, 2) == s) {
          tok.kind = TokenKind::Symbol;
          tok.text = std::string(s);
          advance(2);
          matched = true;
          break;
        }
      }
      if (!matched) {
        static constexpr std::string_view one = ":,;.()+-*=<>";
        tok.kind = one.find(c) != std::string_view::npos ? TokenKind::Symbol : TokenKind::Invalid;
        tok.text = std::string(1, c);
        advance(1);
      }
    }
    out.push_back(std::move(tok));
  }
  Token end;
  end.kind = TokenKind::End;
  end.pos = {line, col};
  out.push_back(end);
  return out;
}

}  // namespace scoopw::frontend
