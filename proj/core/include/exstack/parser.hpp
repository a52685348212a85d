#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "exstack/syntax_tree.hpp"

namespace exstack {

enum class WrapMode { Auto, None, Method, Class };

[[nodiscard]] std::string_view wrap_mode_name(WrapMode mode);

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t offset, LineColumn where)
      : std::runtime_error(message), offset_(offset), where_(where) {}

  [[nodiscard]] std::size_t offset() const { return offset_; }
  [[nodiscard]] std::size_t line() const { return where_.line; }
  [[nodiscard]] std::size_t column() const { return where_.column; }

 private:
  std::size_t offset_;
  LineColumn where_;
};

/// Parses Java source into a SyntaxTree whose spans index into `text`.
///
/// WrapMode::Auto tries, in order, a compilation unit, a method body
/// (statement sequence) and a class body (member sequence). Wrapping adds
/// synthetic CompilationUnit / TypeDeclaration / MethodDeclaration / Block
/// nodes with zero-length spans; no text is ever added to the snippet.
///
/// Comments become Comment leaves under the deepest node enclosing them.
[[nodiscard]] SyntaxTree parse_snippet(std::string_view text,
                                       WrapMode wrap = WrapMode::Auto);

}  // namespace exstack
