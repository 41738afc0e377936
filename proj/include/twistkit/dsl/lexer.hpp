#pragma once

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "twistkit/dsl/ast.hpp"

namespace twistkit::dsl {

struct Token {
  enum class Kind { identifier, integer, derivative, symbol, end };
  Kind kind;
  std::string text;  // for symbols the canonical spelling: ⊗ -> * - ( ) ...
  Pos pos;
};

inline bool is_function_name(const std::string& s) { return s == "exp" || s == "log" || s == "sin" || s == "cos"; }

/// Splits UTF-8 text into tokens. `#` starts a comment. Accepted aliases:
/// `(x)` for ⊗ after an operand, U+2212 for -, U+00B7 for *, U+2192 for ->.
inline std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  Pos pos;
  std::size_t k = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t j = 0; j < n; ++j) {
      if (src[k] == '\n') {
        ++pos.line;
        pos.col = 1;
      } else if ((static_cast<unsigned char>(src[k]) & 0xC0) != 0x80) {
        ++pos.col;
      }
      ++k;
    }
  };
  auto starts = [&](std::string_view s) { return src.substr(k, s.size()) == s; };
  auto ends_operand = [&]() {
    if (out.empty()) return false;
    const Token& t = out.back();
    if (t.kind == Token::Kind::integer || t.kind == Token::Kind::derivative) return true;
    if (t.kind == Token::Kind::identifier) return !is_function_name(t.text);
    return t.kind == Token::Kind::symbol && (t.text == ")" || t.text == "]");
  };

  while (k < src.size()) {
    const char c = src[k];
    if (c == '#') {
      while (k < src.size() && src[k] != '\n') advance(1);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    const Pos start = pos;
    if (starts("d/d") && k + 3 < src.size() && std::isalpha(static_cast<unsigned char>(src[k + 3]))) {
      std::size_t e = k + 4;
      while (e < src.size() && std::isdigit(static_cast<unsigned char>(src[e]))) ++e;
      if ((e >= src.size() || !(std::isalnum(static_cast<unsigned char>(src[e])) || src[e] == '_'))) {
        std::string var(src.substr(k + 3, e - k - 3));
        advance(e - k);
        out.push_back({Token::Kind::derivative, var, start});
        continue;
      }
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t e = k;
      while (e < src.size() && (std::isalnum(static_cast<unsigned char>(src[e])) || src[e] == '_')) ++e;
      std::string word(src.substr(k, e - k));
      advance(e - k);
      out.push_back({Token::Kind::identifier, word, start});
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t e = k;
      while (e < src.size() && std::isdigit(static_cast<unsigned char>(src[e]))) ++e;
      std::string digits(src.substr(k, e - k));
      advance(e - k);
      out.push_back({Token::Kind::integer, digits, start});
      continue;
    }
    if (starts("(x)") && ends_operand()) {
      advance(3);
      out.push_back({Token::Kind::symbol, "⊗", start});
      continue;
    }
    if (starts("⊗")) {
      advance(3);
      out.push_back({Token::Kind::symbol, "⊗", start});
      continue;
    }
    if (starts("−")) {
      advance(3);
      out.push_back({Token::Kind::symbol, "-", start});
      continue;
    }
    if (starts("·")) {
      advance(2);
      out.push_back({Token::Kind::symbol, "*", start});
      continue;
    }
    if (starts("→")) {
      advance(3);
      out.push_back({Token::Kind::symbol, "->", start});
      continue;
    }
    if (starts("->")) {
      advance(2);
      out.push_back({Token::Kind::symbol, "->", start});
      continue;
    }
    if (std::string_view("{}[](),:=+-*/^").find(c) != std::string_view::npos) {
      advance(1);
      out.push_back({Token::Kind::symbol, std::string(1, c), start});
      continue;
    }
    std::size_t len = 1;
    const auto lead = static_cast<unsigned char>(c);
    if (lead >= 0xF0) len = 4;
    else if (lead >= 0xE0) len = 3;
    else if (lead >= 0xC0) len = 2;
    throw SpecError(ErrorCode::lexical, start, "unexpected character '" + std::string(src.substr(k, len)) + "'");
  }
  out.push_back({Token::Kind::end, "", pos});
  return out;
}

}  // namespace twistkit::dsl
