#include "exstack/tokenizer.hpp"

#include <algorithm>
#include <array>
#include <cctype>

namespace exstack {

namespace {

constexpr std::array<std::string_view, 51> kKeywords = {
    "abstract",   "assert",       "boolean",   "break",      "byte",
    "case",       "catch",        "char",      "class",      "const",
    "continue",   "default",      "do",        "double",     "else",
    "enum",       "extends",      "final",     "finally",    "float",
    "for",        "goto",         "if",        "implements", "import",
    "instanceof", "int",          "interface", "long",       "native",
    "new",        "package",      "private",   "protected",  "public",
    "return",     "short",        "static",    "strictfp",   "super",
    "switch",     "synchronized", "this",      "throw",      "throws",
    "transient",  "try",          "void",      "volatile",   "while",
    "_"};

// Longest first so maximal munch works with a linear scan.
constexpr std::array<std::string_view, 48> kOperators = {
    ">>>=", "<<=", ">>=", ">>>", "...", "->", "::", "++", "--", "&&",
    "||",   "==",  "!=",  "<=",  ">=",  "+=", "-=", "*=", "/=", "&=",
    "|=",   "^=",  "%=",  "<<",  ">>",  "(",  ")",  "{",  "}",  "[",
    "]",    ";",   ",",   ".",   "@",   "=",  ">",  "<",  "!",  "~",
    "?",    ":",   "+",   "-",   "*",   "/",  "&",  "|"};

constexpr std::array<std::string_view, 2> kTrailingOperators = {"^", "%"};

bool is_delimiter(std::string_view lexeme) {
  static constexpr std::array<std::string_view, 12> kDelims = {
      "(", ")", "{", "}", "[", "]", ";", ",", ".", "...", "@", "::"};
  return std::find(kDelims.begin(), kDelims.end(), lexeme) != kDelims.end();
}

bool ident_start(unsigned char c) {
  return std::isalpha(c) || c == '_' || c == '$' || c >= 0x80;
}

bool ident_part(unsigned char c) { return ident_start(c) || std::isdigit(c); }

std::size_t scan_number(std::string_view text, std::size_t i) {
  const std::size_t n = text.size();
  auto is_digitish = [](unsigned char c) {
    return std::isalnum(c) || c == '_' || c == '.';
  };
  if (text[i] == '0' && i + 1 < n && (text[i + 1] == 'x' || text[i + 1] == 'X')) {
    i += 2;
    while (i < n && (std::isxdigit(static_cast<unsigned char>(text[i])) ||
                     text[i] == '_' || text[i] == '.' || text[i] == 'p' ||
                     text[i] == 'P')) {
      ++i;
    }
    while (i < n && std::isalpha(static_cast<unsigned char>(text[i]))) ++i;
    return i;
  }
  while (i < n) {
    unsigned char c = static_cast<unsigned char>(text[i]);
    if (c == '.') {
      // "1..2" never happens in Java; stop before a member access like 1.foo
      if (i + 1 < n && std::isalpha(static_cast<unsigned char>(text[i + 1])) &&
          text[i + 1] != 'e' && text[i + 1] != 'E' && text[i + 1] != 'f' &&
          text[i + 1] != 'F' && text[i + 1] != 'd' && text[i + 1] != 'D') {
        break;
      }
      ++i;
    } else if ((c == 'e' || c == 'E') && i + 1 < n &&
               (text[i + 1] == '+' || text[i + 1] == '-')) {
      i += 2;
    } else if (is_digitish(c)) {
      ++i;
    } else {
      break;
    }
  }
  return i;
}

std::size_t scan_quoted(std::string_view text, std::size_t i, char quote) {
  const std::size_t n = text.size();
  if (quote == '"' && text.substr(i, 3) == "\"\"\"") {
    std::size_t close = text.find("\"\"\"", i + 3);
    return close == std::string_view::npos ? n : close + 3;
  }
  ++i;
  while (i < n) {
    char c = text[i];
    if (c == '\\' && i + 1 < n) {
      i += 2;
      continue;
    }
    if (c == quote) return i + 1;
    if (c == '\n') return i;
    ++i;
  }
  return n;
}

}  // namespace

std::string_view token_class_name(TokenClass cls) {
  switch (cls) {
    case TokenClass::Keyword: return "keyword";
    case TokenClass::Identifier: return "identifier";
    case TokenClass::Literal: return "literal";
    case TokenClass::Operator: return "operator";
    case TokenClass::Delimiter: return "delimiter";
    case TokenClass::Comment: return "comment";
  }
  return "operator";
}

bool is_java_keyword(std::string_view word) {
  return std::find(kKeywords.begin(), kKeywords.end(), word) != kKeywords.end();
}

TokenStream tokenize(std::string_view text) {
  TokenStream out;
  const std::size_t n = text.size();
  std::size_t i = 0;
  auto emit = [&](std::size_t begin, std::size_t end, TokenClass cls) {
    out.tokens.push_back(
        Token{std::string(text.substr(begin, end - begin)), cls, begin});
  };
  while (i < n) {
    unsigned char c = static_cast<unsigned char>(text[i]);
    if (std::isspace(c)) {
      ++i;
      continue;
    }
    if (c == '/' && i + 1 < n && text[i + 1] == '/') {
      std::size_t end = text.find('\n', i);
      if (end == std::string_view::npos) end = n;
      // Keep a trailing '\r' out of the lexeme.
      std::size_t lex_end = end;
      if (lex_end > i && text[lex_end - 1] == '\r') --lex_end;
      emit(i, lex_end, TokenClass::Comment);
      i = end;
      continue;
    }
    if (c == '/' && i + 1 < n && text[i + 1] == '*') {
      std::size_t close = text.find("*/", i + 2);
      std::size_t end = close == std::string_view::npos ? n : close + 2;
      emit(i, end, TokenClass::Comment);
      i = end;
      continue;
    }
    if (ident_start(c)) {
      std::size_t j = i + 1;
      while (j < n && ident_part(static_cast<unsigned char>(text[j]))) ++j;
      std::string_view word = text.substr(i, j - i);
      TokenClass cls = TokenClass::Identifier;
      if (word == "true" || word == "false" || word == "null") {
        cls = TokenClass::Literal;
      } else if (is_java_keyword(word)) {
        cls = TokenClass::Keyword;
      }
      emit(i, j, cls);
      i = j;
      continue;
    }
    if (std::isdigit(c) ||
        (c == '.' && i + 1 < n &&
         std::isdigit(static_cast<unsigned char>(text[i + 1])))) {
      std::size_t j = scan_number(text, i);
      emit(i, j, TokenClass::Literal);
      i = j;
      continue;
    }
    if (c == '"' || c == '\'') {
      std::size_t j = scan_quoted(text, i, static_cast<char>(c));
      emit(i, j, TokenClass::Literal);
      i = j;
      continue;
    }
    std::string_view rest = text.substr(i);
    std::string_view matched;
    for (std::string_view op : kOperators) {
      if (rest.starts_with(op)) {
        matched = op;
        break;
      }
    }
    if (matched.empty()) {
      for (std::string_view op : kTrailingOperators) {
        if (rest.starts_with(op)) {
          matched = rest.substr(0, rest.size() > 1 && rest[1] == '=' ? 2 : 1);
          break;
        }
      }
    }
    if (matched.empty()) matched = rest.substr(0, 1);
    emit(i, i + matched.size(),
         is_delimiter(matched) ? TokenClass::Delimiter : TokenClass::Operator);
    i += matched.size();
  }
  return out;
}

bool is_countable(const Token& token) {
  return token.cls != TokenClass::Keyword &&
         token.cls != TokenClass::Delimiter &&
         token.cls != TokenClass::Comment;
}

std::size_t measured_token_count(const TokenStream& stream) {
  return static_cast<std::size_t>(
      std::count_if(stream.tokens.begin(), stream.tokens.end(), is_countable));
}

}  // namespace exstack
