#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace exstack {

enum class TokenClass { Keyword, Identifier, Literal, Operator, Delimiter, Comment };

[[nodiscard]] std::string_view token_class_name(TokenClass cls);

struct Token {
  std::string lexeme;
  TokenClass cls = TokenClass::Operator;
  std::size_t offset = 0;

  [[nodiscard]] std::size_t end() const { return offset + lexeme.size(); }
  friend bool operator==(const Token&, const Token&) = default;
};

struct TokenStream {
  std::vector<Token> tokens;

  [[nodiscard]] std::size_t size() const { return tokens.size(); }
  [[nodiscard]] bool empty() const { return tokens.empty(); }
};

/// Lexes Java source. Never fails: characters that start no token become
/// single-character operator tokens, unterminated literals and comments run
/// to the end of their line (or of the text, for block comments).
[[nodiscard]] TokenStream tokenize(std::string_view text);

/// Tokens that count toward snippet size: everything except keywords,
/// delimiters and comments.
[[nodiscard]] bool is_countable(const Token& token);
[[nodiscard]] std::size_t measured_token_count(const TokenStream& stream);

[[nodiscard]] bool is_java_keyword(std::string_view word);

}  // namespace exstack
