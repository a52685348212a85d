#include "exstack/parser.hpp"

#include <algorithm>
#include <array>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "exstack/tokenizer.hpp"

namespace exstack {

namespace {

// Grammar productions, mapped onto the node vocabulary by label_map.def.
enum class Production : std::uint8_t {
#define EXSTACK_LABEL_MAP(production, label) production,
#include "label_map.def"
#undef EXSTACK_LABEL_MAP
};

constexpr std::array kProductionLabels = {
#define EXSTACK_LABEL_MAP(production, label) NodeLabel::label,
#include "label_map.def"
#undef EXSTACK_LABEL_MAP
};

NodeLabel label_for(Production p) {
  return kProductionLabels[static_cast<std::size_t>(p)];
}

struct PNode {
  NodeLabel label = NodeLabel::CompilationUnit;
  std::string value;
  std::size_t begin = 0;
  std::size_t end = 0;
  bool synthetic = false;
  std::vector<std::unique_ptr<PNode>> kids;
};
using PNodePtr = std::unique_ptr<PNode>;

struct SyntaxFailure {
  std::size_t offset;
  std::string message;
};

constexpr std::array<std::string_view, 8> kPrimitiveTypes = {
    "boolean", "byte", "char", "short", "int", "long", "float", "double"};

constexpr std::array<std::string_view, 12> kModifierKeywords = {
    "public",    "protected", "private",      "static",
    "abstract",  "final",     "native",       "synchronized",
    "transient", "volatile",  "strictfp",     "default"};

bool is_primitive(std::string_view w) {
  return std::find(kPrimitiveTypes.begin(), kPrimitiveTypes.end(), w) !=
         kPrimitiveTypes.end();
}

bool is_modifier_keyword(std::string_view w) {
  return std::find(kModifierKeywords.begin(), kModifierKeywords.end(), w) !=
         kModifierKeywords.end();
}

bool is_assignment_op(std::string_view op) {
  static constexpr std::array<std::string_view, 12> kOps = {
      "=", "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=", "<<=", ">>=", ">>>="};
  return std::find(kOps.begin(), kOps.end(), op) != kOps.end();
}

int binary_precedence(std::string_view op) {
  if (op == "||") return 1;
  if (op == "&&") return 2;
  if (op == "|") return 3;
  if (op == "^") return 4;
  if (op == "&") return 5;
  if (op == "==" || op == "!=") return 6;
  if (op == "<" || op == ">" || op == "<=" || op == ">=" ||
      op == "instanceof") {
    return 7;
  }
  if (op == "<<" || op == ">>" || op == ">>>") return 8;
  if (op == "+" || op == "-") return 9;
  if (op == "*" || op == "/" || op == "%") return 10;
  return -1;
}

class Parser {
 public:
  Parser(std::string_view text, std::vector<Token> tokens)
      : text_(text), tokens_(std::move(tokens)) {}

  PNodePtr compilation_unit() {
    auto unit = make(Production::compilation_unit);
    unit->begin = 0;
    unit->end = text_.size();
    if (at_annotation_then("package") || at("package")) {
      auto pkg = start_node(Production::package_declaration);
      std::size_t first = pos_;
      while (at("@")) pkg.node->kids.push_back(annotation());
      expect("package");
      pkg.node->kids.push_back(qualified_name());
      expect(";");
      finish(pkg, first);
      unit->kids.push_back(std::move(pkg.node));
    }
    while (at("import")) {
      auto imp = start_node(Production::import_declaration);
      std::size_t first = pos_;
      expect("import");
      if (at("static")) imp.node->kids.push_back(leaf_here(Production::modifier));
      imp.node->kids.push_back(qualified_name(/*allow_star=*/true));
      expect(";");
      finish(imp, first);
      unit->kids.push_back(std::move(imp.node));
    }
    while (!eof()) {
      if (accept(";")) continue;
      unit->kids.push_back(type_declaration());
    }
    return unit;
  }

  // Statement sequence wrapped in a synthetic method of a synthetic class.
  PNodePtr method_body_unit() {
    auto block = make(Production::block);
    block->synthetic = true;
    while (!eof()) block->kids.push_back(block_statement());
    auto method = make(Production::method_declaration);
    method->synthetic = true;
    method->kids.push_back(std::move(block));
    auto type = make(Production::class_declaration);
    type->synthetic = true;
    type->kids.push_back(std::move(method));
    return wrap_unit(std::move(type));
  }

  // Member sequence wrapped in a synthetic class.
  PNodePtr class_body_unit() {
    auto type = make(Production::class_declaration);
    type->synthetic = true;
    while (!eof()) {
      if (accept(";")) continue;
      type->kids.push_back(class_body_declaration());
    }
    return wrap_unit(std::move(type));
  }

  [[nodiscard]] std::size_t furthest() const { return furthest_; }

 private:
  struct Open {
    PNodePtr node;
  };

  // ---- token helpers -----------------------------------------------------

  [[nodiscard]] bool eof() const { return pos_ >= tokens_.size(); }

  [[nodiscard]] const Token* peek(std::size_t k = 0) const {
    return pos_ + k < tokens_.size() ? &tokens_[pos_ + k] : nullptr;
  }

  [[nodiscard]] bool at(std::string_view lexeme, std::size_t k = 0) const {
    const Token* t = peek(k);
    return t && t->lexeme == lexeme && t->cls != TokenClass::Literal;
  }

  [[nodiscard]] bool at_class(TokenClass cls, std::size_t k = 0) const {
    const Token* t = peek(k);
    return t && t->cls == cls;
  }

  [[nodiscard]] bool at_identifier(std::size_t k = 0) const {
    return at_class(TokenClass::Identifier, k);
  }

  [[nodiscard]] bool at_annotation_then(std::string_view keyword) const {
    if (!at("@")) return false;
    // @Foo(...) package ...
    std::size_t k = 1;
    int depth = 0;
    while (peek(k)) {
      const Token* t = peek(k);
      if (t->lexeme == "(") ++depth;
      if (t->lexeme == ")") --depth;
      if (depth == 0 && t->lexeme == keyword) return true;
      if (depth == 0 && t->cls == TokenClass::Keyword) return false;
      ++k;
    }
    return false;
  }

  bool accept(std::string_view lexeme) {
    if (at(lexeme)) {
      advance();
      return true;
    }
    return false;
  }

  void advance() {
    ++pos_;
    furthest_ = std::max(furthest_, pos_);
  }

  void expect(std::string_view lexeme) {
    if (!accept(lexeme)) fail("expected '" + std::string(lexeme) + "'");
  }

  [[noreturn]] void fail(const std::string& message) const {
    std::size_t offset = eof() ? text_.size() : tokens_[pos_].offset;
    throw SyntaxFailure{offset, message};
  }

  // Splits a '>>' / '>>>' / '>=' / '>>=' token so a single '>' can close a
  // type-argument list. Undone on backtrack.
  bool accept_closing_angle() {
    if (accept(">")) return true;
    const Token* t = peek();
    if (!t || t->lexeme.size() < 2 || t->lexeme[0] != '>') return false;
    Token rest = *t;
    rest.lexeme.erase(0, 1);
    rest.offset += 1;
    rest.cls = TokenClass::Operator;
    splits_.push_back({pos_, tokens_[pos_]});
    tokens_[pos_].lexeme = ">";
    tokens_.insert(tokens_.begin() + static_cast<std::ptrdiff_t>(pos_) + 1,
                   rest);
    advance();
    return true;
  }

  struct Mark {
    std::size_t pos;
    std::size_t splits;
  };

  [[nodiscard]] Mark mark() const { return {pos_, splits_.size()}; }

  void reset(const Mark& m) {
    while (splits_.size() > m.splits) {
      auto [index, original] = splits_.back();
      splits_.pop_back();
      tokens_.erase(tokens_.begin() + static_cast<std::ptrdiff_t>(index) + 1);
      tokens_[index] = original;
    }
    pos_ = m.pos;
  }

  // ---- node helpers ------------------------------------------------------

  static PNodePtr make(Production p) {
    auto n = std::make_unique<PNode>();
    n->label = label_for(p);
    return n;
  }

  Open start_node(Production p) { return Open{make(p)}; }

  void finish(Open& open, std::size_t first_token) {
    set_span(*open.node, first_token);
  }

  void set_span(PNode& node, std::size_t first_token) {
    node.begin = tokens_[first_token].offset;
    node.end = pos_ > first_token ? tokens_[pos_ - 1].end() : node.begin;
  }

  PNodePtr leaf_range(Production p, std::size_t first, std::size_t last_excl) {
    auto n = make(p);
    n->begin = tokens_[first].offset;
    n->end = tokens_[last_excl - 1].end();
    n->value = std::string(text_.substr(n->begin, n->end - n->begin));
    return n;
  }

  PNodePtr leaf_here(Production p) {
    if (eof()) fail("unexpected end of input");
    std::size_t first = pos_;
    advance();
    return leaf_range(p, first, pos_);
  }

  static PNodePtr wrap_unit(PNodePtr type) {
    auto unit = make(Production::compilation_unit);
    unit->synthetic = true;
    unit->kids.push_back(std::move(type));
    return unit;
  }

  PNodePtr identifier() {
    if (!at_identifier()) fail("expected identifier");
    return leaf_here(Production::identifier);
  }

  PNodePtr qualified_name(bool allow_star = false) {
    std::size_t first = pos_;
    if (!at_identifier()) fail("expected name");
    advance();
    while (at(".") && (at_identifier(1) || (allow_star && at("*", 1)))) {
      advance();
      bool star = at("*");
      advance();
      if (star) break;
    }
    return leaf_range(Production::qualified_name, first, pos_);
  }

  // ---- declarations ------------------------------------------------------

  void modifiers(std::vector<PNodePtr>& out, bool allow_all = true) {
    while (!eof()) {
      if (at("@") && !at("interface", 1)) {
        out.push_back(annotation());
      } else if (at_class(TokenClass::Keyword) &&
                 is_modifier_keyword(peek()->lexeme) &&
                 (allow_all || peek()->lexeme == "final")) {
        if (peek()->lexeme == "default" && (at(":", 1) || at("->", 1))) return;
        if (peek()->lexeme == "synchronized" && at("(", 1)) return;
        out.push_back(leaf_here(Production::modifier));
      } else if (allow_all && at_identifier() &&
                 (peek()->lexeme == "sealed" ||
                  peek()->lexeme == "non") &&
                 (at_identifier(1) || at_class(TokenClass::Keyword, 1))) {
        if (peek()->lexeme == "non") {
          if (!(at("-", 1) && peek(2) && peek(2)->lexeme == "sealed")) return;
          std::size_t first = pos_;
          advance();
          advance();
          advance();
          out.push_back(leaf_range(Production::modifier, first, pos_));
        } else {
          out.push_back(leaf_here(Production::modifier));
        }
      } else {
        return;
      }
    }
  }

  PNodePtr annotation() {
    auto n = start_node(Production::annotation);
    std::size_t first = pos_;
    expect("@");
    n.node->kids.push_back(qualified_name());
    if (accept("(")) {
      if (!at(")")) {
        bool pairs = at_identifier() && at("=", 1);
        do {
          if (pairs) {
            auto pair = start_node(Production::element_value_pair);
            std::size_t pfirst = pos_;
            pair.node->kids.push_back(identifier());
            pair.node->kids.push_back(leaf_here(Production::operator_));
            pair.node->kids.push_back(element_value());
            finish(pair, pfirst);
            n.node->kids.push_back(std::move(pair.node));
          } else {
            n.node->kids.push_back(element_value());
          }
        } while (accept(","));
      }
      expect(")");
    }
    finish(n, first);
    return std::move(n.node);
  }

  PNodePtr element_value() {
    if (at("@")) return annotation();
    if (at("{")) {
      auto init = start_node(Production::array_initializer);
      std::size_t first = pos_;
      expect("{");
      while (!at("}")) {
        init.node->kids.push_back(element_value());
        if (!accept(",")) break;
      }
      expect("}");
      finish(init, first);
      return std::move(init.node);
    }
    return ternary();
  }

  PNodePtr type_declaration() {
    std::size_t first = pos_;
    std::vector<PNodePtr> mods;
    modifiers(mods);
    if (at("class")) return class_declaration(first, std::move(mods));
    if (at("interface")) return interface_declaration(first, std::move(mods));
    if (at("@") && at("interface", 1)) {
      advance();
      return interface_declaration(first, std::move(mods),
                                   Production::annotation_type_declaration);
    }
    if (at("enum")) return enum_declaration(first, std::move(mods));
    fail("expected type declaration");
  }

  PNodePtr class_declaration(std::size_t first, std::vector<PNodePtr> mods) {
    auto n = start_node(Production::class_declaration);
    for (auto& m : mods) n.node->kids.push_back(std::move(m));
    expect("class");
    n.node->kids.push_back(identifier());
    if (at("<")) n.node->kids.push_back(type_parameters());
    if (accept("extends")) n.node->kids.push_back(type());
    if (accept("implements")) type_list(n.node->kids);
    if (at_identifier() && peek()->lexeme == "permits") {
      advance();
      type_list(n.node->kids);
    }
    class_body(n.node->kids);
    finish(n, first);
    return std::move(n.node);
  }

  PNodePtr interface_declaration(
      std::size_t first, std::vector<PNodePtr> mods,
      Production production = Production::interface_declaration) {
    auto n = start_node(production);
    for (auto& m : mods) n.node->kids.push_back(std::move(m));
    expect("interface");
    n.node->kids.push_back(identifier());
    if (at("<")) n.node->kids.push_back(type_parameters());
    if (accept("extends")) type_list(n.node->kids);
    class_body(n.node->kids);
    finish(n, first);
    return std::move(n.node);
  }

  PNodePtr enum_declaration(std::size_t first, std::vector<PNodePtr> mods) {
    auto n = start_node(Production::enum_declaration);
    for (auto& m : mods) n.node->kids.push_back(std::move(m));
    expect("enum");
    n.node->kids.push_back(identifier());
    if (accept("implements")) type_list(n.node->kids);
    expect("{");
    while (at_identifier() || at("@")) {
      auto c = start_node(Production::enum_constant);
      std::size_t cfirst = pos_;
      while (at("@")) c.node->kids.push_back(annotation());
      c.node->kids.push_back(identifier());
      if (at("(")) c.node->kids.push_back(arguments());
      if (at("{")) c.node->kids.push_back(anonymous_body());
      finish(c, cfirst);
      n.node->kids.push_back(std::move(c.node));
      if (!accept(",")) break;
    }
    if (accept(";")) {
      while (!at("}")) {
        if (eof()) fail("unterminated enum body");
        if (accept(";")) continue;
        n.node->kids.push_back(class_body_declaration());
      }
    }
    expect("}");
    finish(n, first);
    return std::move(n.node);
  }

  void type_list(std::vector<PNodePtr>& out) {
    do {
      out.push_back(type());
    } while (accept(","));
  }

  void class_body(std::vector<PNodePtr>& out) {
    expect("{");
    while (!at("}")) {
      if (eof()) fail("unterminated class body");
      if (accept(";")) continue;
      out.push_back(class_body_declaration());
    }
    expect("}");
  }

  PNodePtr anonymous_body() {
    auto n = start_node(Production::class_body);
    std::size_t first = pos_;
    class_body(n.node->kids);
    finish(n, first);
    return std::move(n.node);
  }

  PNodePtr class_body_declaration() {
    std::size_t first = pos_;
    if (at("{") || (at("static") && at("{", 1))) {
      auto init = start_node(Production::initializer);
      if (at("static")) init.node->kids.push_back(leaf_here(Production::modifier));
      init.node->kids.push_back(block());
      finish(init, first);
      return std::move(init.node);
    }
    std::vector<PNodePtr> mods;
    modifiers(mods);
    if (at("class")) return class_declaration(first, std::move(mods));
    if (at("interface")) return interface_declaration(first, std::move(mods));
    if (at("@") && at("interface", 1)) {
      advance();
      return interface_declaration(first, std::move(mods),
                                   Production::annotation_type_declaration);
    }
    if (at("enum")) return enum_declaration(first, std::move(mods));

    PNodePtr type_params;
    if (at("<")) type_params = type_parameters();

    if (at_identifier() && at("(", 1)) {
      auto ctor = start_node(Production::constructor_declaration);
      for (auto& m : mods) ctor.node->kids.push_back(std::move(m));
      if (type_params) ctor.node->kids.push_back(std::move(type_params));
      ctor.node->kids.push_back(identifier());
      method_rest(ctor.node->kids);
      finish(ctor, first);
      return std::move(ctor.node);
    }

    PNodePtr declared_type = type();
    if (at_identifier() && at("(", 1)) {
      auto method = start_node(Production::method_declaration);
      for (auto& m : mods) method.node->kids.push_back(std::move(m));
      if (type_params) method.node->kids.push_back(std::move(type_params));
      method.node->kids.push_back(std::move(declared_type));
      method.node->kids.push_back(identifier());
      method_rest(method.node->kids);
      finish(method, first);
      return std::move(method.node);
    }
    if (type_params) fail("type parameters on a field");
    auto field = start_node(Production::field_declaration);
    for (auto& m : mods) field.node->kids.push_back(std::move(m));
    field.node->kids.push_back(std::move(declared_type));
    variable_declarators(field.node->kids);
    expect(";");
    finish(field, first);
    return std::move(field.node);
  }

  // Parameters, throws clause, body.
  void method_rest(std::vector<PNodePtr>& out) {
    expect("(");
    if (!at(")")) {
      do {
        out.push_back(formal_parameter());
      } while (accept(","));
    }
    expect(")");
    if (at("[")) out.push_back(dims());
    if (accept("throws")) type_list(out);
    if (accept("default")) {
      out.push_back(element_value());
      expect(";");
      return;
    }
    if (accept(";")) return;
    out.push_back(block());
  }

  PNodePtr formal_parameter() {
    auto p = start_node(Production::formal_parameter);
    std::size_t first = pos_;
    modifiers(p.node->kids, /*allow_all=*/false);
    p.node->kids.push_back(type(/*allow_varargs=*/true));
    if (at("this")) {
      p.node->kids.push_back(leaf_here(Production::this_));
    } else {
      p.node->kids.push_back(identifier());
    }
    if (at("[")) p.node->kids.push_back(dims());
    finish(p, first);
    return std::move(p.node);
  }

  PNodePtr dims() {
    std::size_t first = pos_;
    while (at("[") && at("]", 1)) {
      advance();
      advance();
    }
    if (first == pos_) fail("expected dimensions");
    return leaf_range(Production::dims, first, pos_);
  }

  void variable_declarators(std::vector<PNodePtr>& out) {
    do {
      auto frag = start_node(Production::variable_declarator);
      std::size_t first = pos_;
      frag.node->kids.push_back(identifier());
      if (at("[")) frag.node->kids.push_back(dims());
      if (accept("=")) frag.node->kids.push_back(variable_initializer());
      finish(frag, first);
      out.push_back(std::move(frag.node));
    } while (accept(","));
  }

  PNodePtr variable_initializer() {
    if (at("{")) return array_initializer();
    return expression();
  }

  PNodePtr array_initializer() {
    auto init = start_node(Production::array_initializer);
    std::size_t first = pos_;
    expect("{");
    while (!at("}")) {
      init.node->kids.push_back(variable_initializer());
      if (!accept(",")) break;
    }
    expect("}");
    finish(init, first);
    return std::move(init.node);
  }

  PNodePtr type_parameters() {
    std::size_t first = pos_;
    expect("<");
    int depth = 1;
    while (depth > 0) {
      if (eof()) fail("unterminated type parameters");
      if (at("<")) {
        ++depth;
        advance();
      } else if (peek()->lexeme[0] == '>') {
        accept_closing_angle();
        --depth;
      } else {
        advance();
      }
    }
    return leaf_range(Production::type_parameters, first, pos_);
  }

  // ---- types -------------------------------------------------------------

  enum class TypeShape { Primitive, Simple, Generic, Array };

  // Consumes a type; returns its shape or nullopt (position unspecified).
  std::optional<TypeShape> scan_type(bool allow_varargs) {
    TypeShape shape;
    while (at("@") && !at("interface", 1)) {
      try {
        annotation();
      } catch (const SyntaxFailure&) {
        return std::nullopt;
      }
    }
    if (at_class(TokenClass::Keyword) &&
        (is_primitive(peek()->lexeme) || peek()->lexeme == "void")) {
      advance();
      shape = TypeShape::Primitive;
    } else if (at_identifier()) {
      shape = TypeShape::Simple;
      advance();
      if (at("<")) {
        if (!scan_type_arguments()) return std::nullopt;
        shape = TypeShape::Generic;
      }
      while (at(".") && at_identifier(1)) {
        advance();
        advance();
        if (at("<")) {
          if (!scan_type_arguments()) return std::nullopt;
          shape = TypeShape::Generic;
        }
      }
    } else {
      return std::nullopt;
    }
    while (at("[") && at("]", 1)) {
      advance();
      advance();
      shape = TypeShape::Array;
    }
    if (allow_varargs && at("...")) {
      advance();
      shape = TypeShape::Array;
    }
    return shape;
  }

  bool scan_type_arguments() {
    if (!accept("<")) return false;
    if (accept_closing_angle()) return true;  // diamond
    while (true) {
      if (accept("?")) {
        if (accept("extends") || accept("super")) {
          if (!scan_type(false)) return false;
        }
      } else if (!scan_type(false)) {
        return false;
      }
      while (accept("&")) {
        if (!scan_type(false)) return false;
      }
      if (accept(",")) continue;
      return accept_closing_angle();
    }
  }

  static Production production_for(TypeShape shape) {
    switch (shape) {
      case TypeShape::Primitive: return Production::primitive_type;
      case TypeShape::Simple: return Production::class_type;
      case TypeShape::Generic: return Production::generic_type;
      case TypeShape::Array: return Production::array_type;
    }
    return Production::class_type;
  }

  PNodePtr type(bool allow_varargs = false) {
    std::size_t first = pos_;
    auto shape = scan_type(allow_varargs);
    if (!shape || pos_ == first) fail("expected type");
    return leaf_range(production_for(*shape), first, pos_);
  }

  // ---- statements --------------------------------------------------------

  PNodePtr block() {
    auto b = start_node(Production::block);
    std::size_t first = pos_;
    expect("{");
    while (!at("}")) {
      if (eof()) fail("unterminated block");
      b.node->kids.push_back(block_statement());
    }
    expect("}");
    finish(b, first);
    return std::move(b.node);
  }

  // Tries `mods Type name` at the current position; on success leaves the
  // position after the type and returns the modifier/type nodes.
  bool try_local_declaration_head(std::vector<PNodePtr>& out,
                                  bool for_each = false) {
    Mark m = mark();
    std::vector<PNodePtr> mods;
    try {
      modifiers(mods, /*allow_all=*/false);
    } catch (const SyntaxFailure&) {
      reset(m);
      return false;
    }
    std::size_t type_first = pos_;
    auto shape = scan_type(false);
    if (!shape || pos_ == type_first || !at_identifier()) {
      reset(m);
      return false;
    }
    const Token* next = peek(1);
    bool ok = next && (next->lexeme == "=" || next->lexeme == "," ||
                       next->lexeme == ";" || next->lexeme == "[" ||
                       next->lexeme == ":");
    if (for_each) ok = next && next->lexeme == ":";
    if (!ok) {
      reset(m);
      return false;
    }
    for (auto& mod : mods) out.push_back(std::move(mod));
    out.push_back(leaf_range(production_for(*shape), type_first, pos_));
    return true;
  }

  PNodePtr local_variable_declaration(std::size_t first,
                                      std::vector<PNodePtr> head,
                                      bool consume_semicolon) {
    auto decl = start_node(Production::local_variable_declaration);
    for (auto& h : head) decl.node->kids.push_back(std::move(h));
    variable_declarators(decl.node->kids);
    if (consume_semicolon) expect(";");
    finish(decl, first);
    return std::move(decl.node);
  }

  PNodePtr block_statement() {
    std::size_t first = pos_;
    {
      Mark m = mark();
      std::vector<PNodePtr> mods;
      bool type_ahead = false;
      try {
        modifiers(mods);
        type_ahead = at("class") || at("interface") || at("enum");
      } catch (const SyntaxFailure&) {
      }
      if (type_ahead) {
        reset(m);
        return type_declaration();
      }
      reset(m);
    }
    std::vector<PNodePtr> head;
    if (try_local_declaration_head(head)) {
      return local_variable_declaration(first, std::move(head), true);
    }
    return statement();
  }

  PNodePtr condition(Production p) {
    auto c = start_node(p);
    expect("(");
    std::size_t first = pos_;
    c.node->kids.push_back(expression());
    set_span(*c.node, first);
    expect(")");
    return std::move(c.node);
  }

  PNodePtr statement() {
    std::size_t first = pos_;
    if (eof()) fail("expected statement");
    if (at("{")) return block();
    if (at(";")) return leaf_here_empty(Production::empty_statement);
    if (at("if")) {
      auto n = start_node(Production::if_statement);
      advance();
      n.node->kids.push_back(condition(Production::condition));
      n.node->kids.push_back(statement());
      if (accept("else")) n.node->kids.push_back(statement());
      finish(n, first);
      return std::move(n.node);
    }
    if (at("while")) {
      auto n = start_node(Production::while_statement);
      advance();
      n.node->kids.push_back(condition(Production::loop_condition));
      n.node->kids.push_back(statement());
      finish(n, first);
      return std::move(n.node);
    }
    if (at("do")) {
      auto n = start_node(Production::do_statement);
      advance();
      n.node->kids.push_back(statement());
      expect("while");
      n.node->kids.push_back(condition(Production::loop_condition));
      expect(";");
      finish(n, first);
      return std::move(n.node);
    }
    if (at("for")) return for_statement();
    if (at("try")) return try_statement();
    if (at("switch")) return switch_statement();
    if (at("return")) {
      auto n = start_node(Production::return_statement);
      advance();
      if (!at(";")) n.node->kids.push_back(expression());
      expect(";");
      finish(n, first);
      return std::move(n.node);
    }
    if (at("throw")) {
      auto n = start_node(Production::throw_statement);
      advance();
      n.node->kids.push_back(expression());
      expect(";");
      finish(n, first);
      return std::move(n.node);
    }
    if (at("break") || at("continue")) {
      auto n = start_node(at("break") ? Production::break_statement
                                      : Production::continue_statement);
      advance();
      if (at_identifier()) n.node->kids.push_back(identifier());
      expect(";");
      finish(n, first);
      return std::move(n.node);
    }
    if (at("synchronized")) {
      auto n = start_node(Production::synchronized_statement);
      advance();
      expect("(");
      n.node->kids.push_back(expression());
      expect(")");
      n.node->kids.push_back(block());
      finish(n, first);
      return std::move(n.node);
    }
    if (at("assert")) {
      auto n = start_node(Production::assert_statement);
      advance();
      n.node->kids.push_back(expression());
      if (accept(":")) n.node->kids.push_back(expression());
      expect(";");
      finish(n, first);
      return std::move(n.node);
    }
    if (at_identifier() && at(":", 1)) {
      auto n = start_node(Production::labeled_statement);
      n.node->kids.push_back(identifier());
      advance();
      n.node->kids.push_back(statement());
      finish(n, first);
      return std::move(n.node);
    }
    if (at_identifier() && peek()->lexeme == "yield" && !at("=", 1) &&
        !at("(", 1) && !at(".", 1)) {
      auto n = start_node(Production::return_statement);
      advance();
      n.node->kids.push_back(expression());
      expect(";");
      finish(n, first);
      return std::move(n.node);
    }
    auto n = start_node(Production::expression_statement);
    n.node->kids.push_back(expression());
    expect(";");
    finish(n, first);
    return std::move(n.node);
  }

  PNodePtr leaf_here_empty(Production p) {
    std::size_t first = pos_;
    advance();
    auto n = make(p);
    n->begin = tokens_[first].offset;
    n->end = tokens_[first].end();
    return n;
  }

  PNodePtr for_statement() {
    std::size_t first = pos_;
    expect("for");
    expect("(");
    {
      std::size_t var_first = pos_;
      std::vector<PNodePtr> head;
      if (try_local_declaration_head(head, /*for_each=*/true)) {
        auto n = start_node(Production::enhanced_for_statement);
        auto var = start_node(Production::enhanced_for_variable);
        for (auto& h : head) var.node->kids.push_back(std::move(h));
        var.node->kids.push_back(identifier());
        finish(var, var_first);
        n.node->kids.push_back(std::move(var.node));
        expect(":");
        n.node->kids.push_back(expression());
        expect(")");
        n.node->kids.push_back(statement());
        finish(n, first);
        return std::move(n.node);
      }
    }
    auto n = start_node(Production::for_statement);
    if (!at(";")) {
      auto init = start_node(Production::for_init);
      std::size_t init_first = pos_;
      std::vector<PNodePtr> head;
      if (try_local_declaration_head(head)) {
        init.node->kids.push_back(
            local_variable_declaration(init_first, std::move(head), false));
      } else {
        do {
          init.node->kids.push_back(expression());
        } while (accept(","));
      }
      finish(init, init_first);
      n.node->kids.push_back(std::move(init.node));
    }
    expect(";");
    if (!at(";")) {
      auto cond = start_node(Production::loop_condition);
      std::size_t cond_first = pos_;
      cond.node->kids.push_back(expression());
      finish(cond, cond_first);
      n.node->kids.push_back(std::move(cond.node));
    }
    expect(";");
    if (!at(")")) {
      auto update = start_node(Production::for_update);
      std::size_t update_first = pos_;
      do {
        update.node->kids.push_back(expression());
      } while (accept(","));
      finish(update, update_first);
      n.node->kids.push_back(std::move(update.node));
    }
    expect(")");
    n.node->kids.push_back(statement());
    finish(n, first);
    return std::move(n.node);
  }

  PNodePtr try_statement() {
    std::size_t first = pos_;
    auto n = start_node(Production::try_statement);
    expect("try");
    if (at("(")) {
      auto res = start_node(Production::resource_specification);
      std::size_t res_first = pos_;
      advance();
      while (!at(")")) {
        std::size_t r_first = pos_;
        std::vector<PNodePtr> head;
        if (try_local_declaration_head(head)) {
          auto decl = start_node(Production::resource);
          for (auto& h : head) decl.node->kids.push_back(std::move(h));
          auto frag = start_node(Production::variable_declarator);
          std::size_t f_first = pos_;
          frag.node->kids.push_back(identifier());
          expect("=");
          frag.node->kids.push_back(expression());
          finish(frag, f_first);
          decl.node->kids.push_back(std::move(frag.node));
          finish(decl, r_first);
          res.node->kids.push_back(std::move(decl.node));
        } else {
          res.node->kids.push_back(expression());
        }
        if (!accept(";")) break;
      }
      expect(")");
      finish(res, res_first);
      n.node->kids.push_back(std::move(res.node));
    }
    n.node->kids.push_back(block());
    while (at("catch")) {
      auto c = start_node(Production::catch_clause);
      std::size_t c_first = pos_;
      advance();
      expect("(");
      auto param = start_node(Production::catch_formal_parameter);
      std::size_t p_first = pos_;
      modifiers(param.node->kids, /*allow_all=*/false);
      std::size_t t_first = pos_;
      PNodePtr first_type = type();
      if (at("|")) {
        auto uni = start_node(Production::catch_type);
        uni.node->kids.push_back(std::move(first_type));
        while (accept("|")) uni.node->kids.push_back(type());
        finish(uni, t_first);
        param.node->kids.push_back(std::move(uni.node));
      } else {
        param.node->kids.push_back(std::move(first_type));
      }
      param.node->kids.push_back(identifier());
      finish(param, p_first);
      expect(")");
      c.node->kids.push_back(std::move(param.node));
      c.node->kids.push_back(block());
      finish(c, c_first);
      n.node->kids.push_back(std::move(c.node));
    }
    if (at("finally")) {
      advance();
      PNodePtr fin = block();
      fin->label = label_for(Production::finally_clause);
      n.node->kids.push_back(std::move(fin));
    }
    if (n.node->kids.size() == 1) fail("try without catch or finally");
    finish(n, first);
    return std::move(n.node);
  }

  PNodePtr switch_statement() {
    std::size_t first = pos_;
    auto n = start_node(Production::switch_statement);
    expect("switch");
    expect("(");
    n.node->kids.push_back(expression());
    expect(")");
    expect("{");
    while (!at("}")) {
      if (eof()) fail("unterminated switch");
      if (at("case") || (at("default") && (at(":", 1) || at("->", 1)))) {
        std::size_t l_first = pos_;
        auto label = start_node(Production::switch_label);
        if (accept("default")) {
          label.node->value = "default";
        } else {
          advance();
          do {
            label.node->kids.push_back(ternary());
          } while (accept(","));
        }
        finish(label, l_first);
        n.node->kids.push_back(std::move(label.node));
        if (accept("->")) {
          if (at("{")) {
            n.node->kids.push_back(block());
          } else if (at("throw")) {
            n.node->kids.push_back(statement());
          } else {
            auto es = start_node(Production::expression_statement);
            std::size_t e_first = pos_;
            es.node->kids.push_back(expression());
            expect(";");
            finish(es, e_first);
            n.node->kids.push_back(std::move(es.node));
          }
        } else {
          expect(":");
        }
        continue;
      }
      n.node->kids.push_back(block_statement());
    }
    expect("}");
    finish(n, first);
    return std::move(n.node);
  }

  // ---- expressions -------------------------------------------------------

  PNodePtr expression() {
    if (lambda_ahead()) return lambda();
    std::size_t first = pos_;
    PNodePtr lhs = ternary();
    if (!eof() && peek()->cls == TokenClass::Operator &&
        is_assignment_op(peek()->lexeme)) {
      auto n = make(Production::assignment_expression);
      n->kids.push_back(std::move(lhs));
      n->kids.push_back(leaf_here(Production::operator_));
      n->kids.push_back(at("{") ? array_initializer() : expression());
      set_span(*n, first);
      return n;
    }
    return lhs;
  }

  bool lambda_ahead() const {
    if (at_identifier() && at("->", 1)) return true;
    if (!at("(")) return false;
    int depth = 0;
    for (std::size_t k = 0; peek(k); ++k) {
      const std::string& lx = peek(k)->lexeme;
      if (lx == "(") ++depth;
      if (lx == ")") {
        --depth;
        if (depth == 0) return at("->", k + 1);
      }
      if (lx == ";" || lx == "{" || lx == "}") return false;
    }
    return false;
  }

  PNodePtr lambda() {
    std::size_t first = pos_;
    auto n = make(Production::lambda_expression);
    if (at_identifier()) {
      auto p = make(Production::lambda_parameter);
      std::size_t p_first = pos_;
      p->kids.push_back(identifier());
      set_span(*p, p_first);
      n->kids.push_back(std::move(p));
    } else {
      expect("(");
      while (!at(")")) {
        auto p = make(Production::lambda_parameter);
        std::size_t p_first = pos_;
        if (at_identifier() && (at(",", 1) || at(")", 1))) {
          p->kids.push_back(identifier());
        } else {
          modifiers(p->kids, /*allow_all=*/false);
          p->kids.push_back(type(/*allow_varargs=*/true));
          p->kids.push_back(identifier());
        }
        set_span(*p, p_first);
        n->kids.push_back(std::move(p));
        if (!accept(",")) break;
      }
      expect(")");
    }
    expect("->");
    n->kids.push_back(at("{") ? block() : expression());
    set_span(*n, first);
    return n;
  }

  PNodePtr ternary() {
    std::size_t first = pos_;
    PNodePtr cond = binary(1);
    if (!at("?")) return cond;
    advance();
    auto n = make(Production::ternary_expression);
    n->kids.push_back(std::move(cond));
    n->kids.push_back(lambda_ahead() ? lambda() : ternary());
    expect(":");
    n->kids.push_back(lambda_ahead() ? lambda() : ternary());
    set_span(*n, first);
    return n;
  }

  PNodePtr binary(int min_prec) {
    std::size_t first = pos_;
    PNodePtr lhs = unary();
    while (!eof()) {
      const Token& t = *peek();
      if (t.cls == TokenClass::Literal) break;
      int prec = binary_precedence(t.lexeme);
      if (prec < min_prec || prec < 0) break;
      if (t.lexeme == "instanceof") {
        advance();
        auto n = make(Production::instanceof_expression);
        n->kids.push_back(std::move(lhs));
        accept("final");
        n->kids.push_back(type());
        if (at_identifier()) n->kids.push_back(identifier());
        set_span(*n, first);
        lhs = std::move(n);
        continue;
      }
      auto op = leaf_here(Production::operator_);
      PNodePtr rhs = binary(prec + 1);
      auto n = make(Production::binary_expression);
      n->kids.push_back(std::move(lhs));
      n->kids.push_back(std::move(op));
      n->kids.push_back(std::move(rhs));
      set_span(*n, first);
      lhs = std::move(n);
    }
    return lhs;
  }

  bool cast_follows() const {
    const Token* t = peek();
    if (!t) return false;
    if (t->cls == TokenClass::Identifier || t->cls == TokenClass::Literal) {
      return true;
    }
    static constexpr std::array<std::string_view, 8> kStarts = {
        "(", "!", "~", "this", "super", "new", "switch", "@"};
    return std::find(kStarts.begin(), kStarts.end(), t->lexeme) !=
           kStarts.end() || (t->cls == TokenClass::Keyword && is_primitive(t->lexeme));
  }

  PNodePtr unary() {
    std::size_t first = pos_;
    if (!eof() && peek()->cls == TokenClass::Operator) {
      const std::string& lx = peek()->lexeme;
      if (lx == "++" || lx == "--") {
        auto n = make(Production::update_expression_prefix);
        n->kids.push_back(leaf_here(Production::operator_));
        n->kids.push_back(unary());
        set_span(*n, first);
        return n;
      }
      if (lx == "+" || lx == "-" || lx == "!" || lx == "~") {
        auto n = make(Production::unary_expression);
        n->kids.push_back(leaf_here(Production::operator_));
        n->kids.push_back(unary());
        set_span(*n, first);
        return n;
      }
    }
    if (at("(") && !lambda_ahead()) {
      Mark m = mark();
      advance();
      std::size_t type_first = pos_;
      auto shape = scan_type(false);
      bool is_cast = false;
      std::size_t type_end = pos_;
      if (shape && pos_ > type_first) {
        while (accept("&")) {
          if (!scan_type(false)) break;
        }
        type_end = pos_;
        if (at(")")) {
          advance();
          is_cast = *shape == TypeShape::Primitive
                        ? !at(".")  // int.class is not a cast
                        : cast_follows() || lambda_ahead();
        }
      }
      if (is_cast) {
        auto n = make(Production::cast_expression);
        n->kids.push_back(
            leaf_range(production_for(*shape), type_first, type_end));
        n->kids.push_back(lambda_ahead() ? lambda() : unary());
        set_span(*n, first);
        return n;
      }
      reset(m);
    }
    PNodePtr operand = postfix_primary();
    while (at("++") || at("--")) {
      auto n = make(Production::update_expression_postfix);
      n->kids.push_back(std::move(operand));
      n->kids.push_back(leaf_here(Production::operator_));
      set_span(*n, first);
      operand = std::move(n);
    }
    return operand;
  }

  PNodePtr arguments() {
    auto n = make(Production::argument_list);
    std::size_t first = pos_;
    expect("(");
    if (!at(")")) {
      do {
        n->kids.push_back(expression());
      } while (accept(","));
    }
    expect(")");
    set_span(*n, first);
    return n;
  }

  void skip_explicit_type_arguments() {
    if (!at("<")) return;
    Mark m = mark();
    if (!scan_type_arguments()) reset(m);
  }

  PNodePtr primary() {
    std::size_t first = pos_;
    if (eof()) fail("expected expression");
    const Token& t = *peek();
    if (t.cls == TokenClass::Literal) return leaf_here(Production::literal);
    if (t.lexeme == "this" || t.lexeme == "super") {
      Production p = t.lexeme == "this" ? Production::this_ : Production::super_;
      if (at("(", 1)) {
        auto n = make(Production::explicit_constructor_invocation);
        n->kids.push_back(leaf_here(Production::identifier));
        n->kids.push_back(arguments());
        set_span(*n, first);
        return n;
      }
      return leaf_here(p);
    }
    if (t.lexeme == "new") return creator(nullptr, first);
    if (t.lexeme == "(") {
      auto n = make(Production::parenthesized_expression);
      advance();
      n->kids.push_back(expression());
      expect(")");
      set_span(*n, first);
      return n;
    }
    if (t.lexeme == "switch") fail("switch expressions are not supported");
    if (t.cls == TokenClass::Keyword && (is_primitive(t.lexeme) || t.lexeme == "void")) {
      // int.class, int[].class, int[]::new
      auto shape = scan_type(false);
      if (!shape) fail("expected expression");
      std::size_t type_end = pos_;
      if (at(".") && at("class", 1)) {
        auto n = make(Production::class_literal);
        n->kids.push_back(leaf_range(production_for(*shape), first, type_end));
        advance();
        advance();
        set_span(*n, first);
        return n;
      }
      if (at("::")) {
        auto n = make(Production::method_reference);
        n->kids.push_back(leaf_range(production_for(*shape), first, type_end));
        advance();
        n->kids.push_back(leaf_here(Production::identifier));
        set_span(*n, first);
        return n;
      }
      fail("unexpected type in expression");
    }
    if (t.cls == TokenClass::Identifier) {
      // Generic type before '::', e.g. ArrayList<String>::new
      if (at("<", 1)) {
        Mark m = mark();
        auto shape = scan_type(false);
        if (shape && at("::")) {
          std::size_t type_end = pos_;
          auto n = make(Production::method_reference);
          n->kids.push_back(leaf_range(production_for(*shape), first, type_end));
          advance();
          n->kids.push_back(leaf_here(Production::identifier));
          set_span(*n, first);
          return n;
        }
        reset(m);
      }
      if (at("(", 1)) {
        auto n = make(Production::method_invocation);
        n->kids.push_back(identifier());
        n->kids.push_back(arguments());
        set_span(*n, first);
        return n;
      }
      return identifier();
    }
    if (t.lexeme == "@") fail("annotation in expression");
    fail("unexpected token '" + t.lexeme + "'");
  }

  PNodePtr creator(PNodePtr outer, std::size_t first) {
    expect("new");
    skip_explicit_type_arguments();
    std::size_t type_first = pos_;
    // Element or class type without dimensions.
    TypeShape shape;
    while (at("@")) annotation();
    if (at_class(TokenClass::Keyword) && is_primitive(peek()->lexeme)) {
      advance();
      shape = TypeShape::Primitive;
    } else {
      if (!at_identifier()) fail("expected type after new");
      advance();
      shape = TypeShape::Simple;
      if (at("<")) {
        if (!scan_type_arguments()) fail("bad type arguments");
        shape = TypeShape::Generic;
      }
      while (at(".") && at_identifier(1)) {
        advance();
        advance();
        if (at("<")) {
          if (!scan_type_arguments()) fail("bad type arguments");
          shape = TypeShape::Generic;
        }
      }
    }
    PNodePtr created_type = leaf_range(production_for(shape), type_first, pos_);
    if (at("[")) {
      auto n = make(Production::array_creation_expression);
      n->kids.push_back(std::move(created_type));
      while (at("[") && !at("]", 1)) {
        advance();
        n->kids.push_back(expression());
        expect("]");
      }
      if (at("[")) n->kids.push_back(dims());
      if (at("{")) n->kids.push_back(array_initializer());
      set_span(*n, first);
      return n;
    }
    if (shape == TypeShape::Primitive) fail("primitive type in object creation");
    auto n = make(Production::object_creation_expression);
    if (outer) n->kids.push_back(std::move(outer));
    n->kids.push_back(std::move(created_type));
    n->kids.push_back(arguments());
    if (at("{")) n->kids.push_back(anonymous_body());
    set_span(*n, first);
    return n;
  }

  PNodePtr postfix_primary() {
    std::size_t first = pos_;
    PNodePtr expr = primary();
    while (!eof()) {
      if (at(".")) {
        if (at("new", 1)) {
          advance();
          expr = creator(std::move(expr), first);
          continue;
        }
        if (at("class", 1)) {
          auto n = make(Production::class_literal);
          auto type_leaf = make(Production::class_type);
          type_leaf->begin = expr->begin;
          type_leaf->end = expr->end;
          type_leaf->value =
              std::string(text_.substr(expr->begin, expr->end - expr->begin));
          n->kids.push_back(std::move(type_leaf));
          advance();
          advance();
          set_span(*n, first);
          expr = std::move(n);
          continue;
        }
        if (at("this", 1)) {
          advance();
          auto n = make(Production::field_access);
          n->kids.push_back(std::move(expr));
          n->kids.push_back(leaf_here(Production::this_));
          set_span(*n, first);
          expr = std::move(n);
          continue;
        }
        advance();
        skip_explicit_type_arguments();
        if (at("super") || at("this")) {
          // Outer.super.method()
          auto n = make(Production::field_access);
          n->kids.push_back(std::move(expr));
          n->kids.push_back(leaf_here(Production::super_));
          set_span(*n, first);
          expr = std::move(n);
          continue;
        }
        PNodePtr name = identifier();
        if (at("(")) {
          auto n = make(Production::method_invocation);
          n->kids.push_back(std::move(expr));
          n->kids.push_back(std::move(name));
          n->kids.push_back(arguments());
          set_span(*n, first);
          expr = std::move(n);
        } else {
          auto n = make(Production::field_access);
          n->kids.push_back(std::move(expr));
          n->kids.push_back(std::move(name));
          set_span(*n, first);
          expr = std::move(n);
        }
        continue;
      }
      if (at("[")) {
        if (at("]", 1)) {
          // Foo[].class or Foo[]::new
          std::size_t dims_first = pos_;
          while (at("[") && at("]", 1)) {
            advance();
            advance();
          }
          auto type_leaf = make(Production::array_type);
          type_leaf->begin = expr->begin;
          type_leaf->end = tokens_[pos_ - 1].end();
          type_leaf->value = std::string(
              text_.substr(type_leaf->begin, type_leaf->end - type_leaf->begin));
          (void)dims_first;
          if (at(".") && at("class", 1)) {
            auto n = make(Production::class_literal);
            n->kids.push_back(std::move(type_leaf));
            advance();
            advance();
            set_span(*n, first);
            expr = std::move(n);
            continue;
          }
          if (at("::")) {
            auto n = make(Production::method_reference);
            n->kids.push_back(std::move(type_leaf));
            advance();
            n->kids.push_back(leaf_here(Production::identifier));
            set_span(*n, first);
            expr = std::move(n);
            continue;
          }
          fail("unexpected array type");
        }
        advance();
        auto n = make(Production::array_access);
        n->kids.push_back(std::move(expr));
        n->kids.push_back(expression());
        expect("]");
        set_span(*n, first);
        expr = std::move(n);
        continue;
      }
      if (at("::")) {
        advance();
        skip_explicit_type_arguments();
        auto n = make(Production::method_reference);
        n->kids.push_back(std::move(expr));
        if (at("new")) {
          n->kids.push_back(leaf_here(Production::identifier));
        } else {
          n->kids.push_back(identifier());
        }
        set_span(*n, first);
        expr = std::move(n);
        continue;
      }
      break;
    }
    return expr;
  }

  std::string_view text_;
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  std::size_t furthest_ = 0;
  std::vector<std::pair<std::size_t, Token>> splits_;
};

// ---- comment attachment and flattening ------------------------------------

void attach_comment(PNode& node, PNodePtr comment) {
  for (auto& kid : node.kids) {
    if (kid->synthetic) {
      attach_comment(*kid, std::move(comment));
      return;
    }
    if (!kid->kids.empty() && kid->label != NodeLabel::Comment &&
        kid->begin < comment->begin && comment->end <= kid->end) {
      attach_comment(*kid, std::move(comment));
      return;
    }
  }
  auto pos = std::find_if(node.kids.begin(), node.kids.end(),
                          [&](const PNodePtr& k) {
                            return !k->synthetic && k->begin >= comment->begin;
                          });
  node.kids.insert(pos, std::move(comment));
}

NodeId flatten(const PNode& p, SyntaxTree& tree) {
  Span span = p.synthetic ? Span{0, 0} : Span{p.begin, p.end};
  NodeId id = tree.add_node(p.label, p.value, span, p.synthetic);
  for (const auto& kid : p.kids) {
    NodeId child = flatten(*kid, tree);
    tree.append_child(id, child);
  }
  return id;
}

enum class Entry { Unit, Method, Class };

std::string_view entry_name(Entry e) {
  switch (e) {
    case Entry::Unit: return "compilation unit";
    case Entry::Method: return "method body";
    case Entry::Class: return "class body";
  }
  return "";
}

}  // namespace

std::string_view wrap_mode_name(WrapMode mode) {
  switch (mode) {
    case WrapMode::Auto: return "auto";
    case WrapMode::None: return "none";
    case WrapMode::Method: return "method";
    case WrapMode::Class: return "class";
  }
  return "auto";
}

SyntaxTree parse_snippet(std::string_view text, WrapMode wrap) {
  TokenStream stream = tokenize(text);
  std::vector<Token> code;
  std::vector<Token> comments;
  for (auto& t : stream.tokens) {
    (t.cls == TokenClass::Comment ? comments : code).push_back(std::move(t));
  }

  std::vector<Entry> entries;
  switch (wrap) {
    case WrapMode::Auto: entries = {Entry::Unit, Entry::Method, Entry::Class}; break;
    case WrapMode::None: entries = {Entry::Unit}; break;
    case WrapMode::Method: entries = {Entry::Method}; break;
    case WrapMode::Class: entries = {Entry::Class}; break;
  }

  std::optional<SyntaxFailure> best_failure;
  std::size_t best_progress = 0;
  Entry best_entry = entries.front();
  for (Entry entry : entries) {
    Parser parser(text, code);
    try {
      PNodePtr root;
      switch (entry) {
        case Entry::Unit: root = parser.compilation_unit(); break;
        case Entry::Method: root = parser.method_body_unit(); break;
        case Entry::Class: root = parser.class_body_unit(); break;
      }
      for (const Token& c : comments) {
        auto leaf = std::make_unique<PNode>();
        leaf->label = label_for(c.lexeme.starts_with("//")
                                    ? Production::line_comment
                                    : Production::block_comment);
        leaf->begin = c.offset;
        leaf->end = c.end();
        leaf->value = c.lexeme;
        attach_comment(*root, std::move(leaf));
      }
      std::string owned(text);
      SyntaxTree tree(std::move(owned));
      tree.set_root(flatten(*root, tree));
      return tree;
    } catch (const SyntaxFailure& failure) {
      if (!best_failure || parser.furthest() > best_progress) {
        best_failure = failure;
        best_progress = parser.furthest();
        best_entry = entry;
      }
    }
  }
  const SyntaxFailure& f = *best_failure;
  LineColumn where = line_column_at(text, f.offset);
  throw ParseError("parse error (" + std::string(entry_name(best_entry)) +
                       ") at " + std::to_string(where.line) + ":" +
                       std::to_string(where.column) + ": " + f.message,
                   f.offset, where);
}

}  // namespace exstack
