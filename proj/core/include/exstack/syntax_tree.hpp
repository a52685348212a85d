#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace exstack {

// Closed node-type vocabulary. Abstract kinds (Type, VariableDeclaration) are
// never produced by the parser; they exist so rule predicates can name a
// family of concrete labels (see label_is_a).
#define EXSTACK_NODE_LABELS(X)                                                 \
  X(CompilationUnit)                                                           \
  X(PackageDeclaration)                                                        \
  X(ImportDeclaration)                                                         \
  X(TypeDeclaration)                                                           \
  X(EnumDeclaration)                                                           \
  X(EnumConstant)                                                              \
  X(AnonymousClassBody)                                                        \
  X(FieldDeclaration)                                                          \
  X(MethodDeclaration)                                                         \
  X(Initializer)                                                               \
  X(VariableDeclaration)                                                       \
  X(VariableDeclarationStatement)                                              \
  X(VariableDeclarationFragment)                                               \
  X(SingleVariableDeclaration)                                                 \
  X(Dimensions)                                                                \
  X(Modifier)                                                                  \
  X(Annotation)                                                                \
  X(Type)                                                                      \
  X(SimpleType)                                                                \
  X(PrimitiveType)                                                             \
  X(ArrayType)                                                                 \
  X(ParameterizedType)                                                         \
  X(UnionType)                                                                 \
  X(TypeParameters)                                                            \
  X(Name)                                                                      \
  X(Literal)                                                                   \
  X(Operator)                                                                  \
  X(Block)                                                                     \
  X(ExpressionStatement)                                                       \
  X(IfStatement)                                                               \
  X(IfCondition)                                                               \
  X(LoopCondition)                                                             \
  X(WhileStatement)                                                            \
  X(DoStatement)                                                               \
  X(ForStatement)                                                              \
  X(ForInit)                                                                   \
  X(ForUpdate)                                                                 \
  X(EnhancedForStatement)                                                      \
  X(SwitchStatement)                                                           \
  X(SwitchCase)                                                                \
  X(TryStatement)                                                              \
  X(TryResources)                                                              \
  X(CatchClause)                                                               \
  X(FinallyBlock)                                                              \
  X(ReturnStatement)                                                           \
  X(ThrowStatement)                                                            \
  X(BreakStatement)                                                            \
  X(ContinueStatement)                                                         \
  X(SynchronizedStatement)                                                     \
  X(LabeledStatement)                                                          \
  X(EmptyStatement)                                                            \
  X(AssertStatement)                                                           \
  X(MethodInvocation)                                                          \
  X(Arguments)                                                                 \
  X(ClassInstanceCreation)                                                     \
  X(ArrayCreation)                                                             \
  X(ArrayInitializer)                                                          \
  X(ArrayAccess)                                                               \
  X(FieldAccess)                                                               \
  X(Assignment)                                                                \
  X(InfixExpression)                                                           \
  X(PrefixExpression)                                                          \
  X(PostfixExpression)                                                         \
  X(ConditionalExpression)                                                     \
  X(CastExpression)                                                            \
  X(InstanceofExpression)                                                      \
  X(LambdaExpression)                                                          \
  X(MethodReference)                                                           \
  X(ParenthesizedExpression)                                                   \
  X(ThisExpression)                                                            \
  X(SuperExpression)                                                           \
  X(TypeLiteral)                                                               \
  X(Comment)

enum class NodeLabel : std::uint8_t {
#define EXSTACK_ENUM_ENTRY(name) name,
  EXSTACK_NODE_LABELS(EXSTACK_ENUM_ENTRY)
#undef EXSTACK_ENUM_ENTRY
};

[[nodiscard]] std::string_view label_name(NodeLabel label);
[[nodiscard]] std::optional<NodeLabel> label_from_name(std::string_view name);
[[nodiscard]] std::span<const NodeLabel> all_labels();

/// True when `label` is `kind` or a concrete member of the abstract `kind`
/// (SimpleType is-a Type; VariableDeclarationFragment is-a VariableDeclaration).
[[nodiscard]] bool label_is_a(NodeLabel label, NodeLabel kind);

/// Labels whose leaves carry their covered source text as value.
[[nodiscard]] bool label_carries_value(NodeLabel label);

/// Half-open byte interval [begin, end) into a snippet's text.
struct Span {
  std::size_t begin = 0;
  std::size_t end = 0;

  [[nodiscard]] std::size_t size() const { return end - begin; }
  [[nodiscard]] bool empty() const { return begin == end; }
  [[nodiscard]] bool contains(const Span& other) const {
    return begin <= other.begin && other.end <= end;
  }
  [[nodiscard]] bool overlaps(const Span& other) const {
    return begin < other.end && other.begin < end;
  }
  friend bool operator==(const Span&, const Span&) = default;
};

using NodeId = std::uint32_t;
inline constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max();

struct TreeNode {
  NodeId id = kNoNode;
  NodeLabel label = NodeLabel::CompilationUnit;
  std::string value;
  Span span;
  NodeId parent = kNoNode;
  std::vector<NodeId> children;
  /// Wrapper inserted by snippet wrapping; has a zero-length span.
  bool synthetic = false;
};

struct LineColumn {
  std::size_t line = 1;
  std::size_t column = 1;
};

[[nodiscard]] LineColumn line_column_at(std::string_view text,
                                        std::size_t offset);

/// Ordered labeled tree over an arena of nodes. Built once by the parser (or
/// by apply_edit_script) and treated as immutable afterwards.
class SyntaxTree {
 public:
  SyntaxTree() = default;
  explicit SyntaxTree(std::string text)
      : text_(std::make_shared<const std::string>(std::move(text))) {}

  [[nodiscard]] const TreeNode& node(NodeId id) const { return nodes_.at(id); }
  [[nodiscard]] std::size_t size() const { return nodes_.size(); }
  [[nodiscard]] bool empty() const { return nodes_.empty(); }
  [[nodiscard]] NodeId root() const { return root_; }
  [[nodiscard]] const std::vector<TreeNode>& nodes() const { return nodes_; }

  [[nodiscard]] std::string_view text() const {
    return text_ ? std::string_view(*text_) : std::string_view();
  }
  [[nodiscard]] std::shared_ptr<const std::string> shared_text() const {
    return text_;
  }
  [[nodiscard]] std::string_view text_of(NodeId id) const;

  [[nodiscard]] bool is_leaf(NodeId id) const {
    return node(id).children.empty();
  }
  /// Strict ancestry.
  [[nodiscard]] bool is_ancestor(NodeId ancestor, NodeId descendant) const;
  [[nodiscard]] std::size_t child_index(NodeId id) const;
  [[nodiscard]] std::size_t height(NodeId id) const;
  [[nodiscard]] std::size_t depth(NodeId id) const;

  [[nodiscard]] std::vector<NodeId> preorder() const;
  [[nodiscard]] std::vector<NodeId> postorder() const;
  [[nodiscard]] std::vector<NodeId> descendants(NodeId id) const;
  /// Leaves in document order (preorder).
  [[nodiscard]] std::vector<NodeId> leaves() const;

  /// Child-index path from the root.
  [[nodiscard]] std::vector<std::size_t> path(NodeId id) const;
  [[nodiscard]] std::optional<NodeId> find_by_path(
      std::span<const std::size_t> path) const;

  /// Nearest ancestor (or self) that is not synthetic.
  [[nodiscard]] NodeId real_parent(NodeId id) const;

  // Construction.
  NodeId add_node(NodeLabel label, std::string value, Span span,
                  bool synthetic = false);
  void append_child(NodeId parent, NodeId child);
  void insert_child(NodeId parent, std::size_t index, NodeId child);
  /// Unlinks `child` from its parent; the node stays in the arena.
  void detach(NodeId child);
  void set_value(NodeId id, std::string value) {
    nodes_.at(id).value = std::move(value);
  }
  void set_root(NodeId id) { root_ = id; }

 private:
  std::shared_ptr<const std::string> text_;
  std::vector<TreeNode> nodes_;
  NodeId root_ = kNoNode;
};

/// Structural equality on (label, value, child order), splicing synthetic
/// nodes out of both trees.
[[nodiscard]] bool isomorphic(const SyntaxTree& a, const SyntaxTree& b);
[[nodiscard]] bool isomorphic_subtrees(const SyntaxTree& a, NodeId na,
                                       const SyntaxTree& b, NodeId nb);

/// Indented one-node-per-line dump, handy in test failure messages.
[[nodiscard]] std::string dump_tree(const SyntaxTree& tree);

}  // namespace exstack
