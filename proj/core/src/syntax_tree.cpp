#include "exstack/syntax_tree.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace exstack {

namespace {

constexpr std::array kLabelNames = {
#define EXSTACK_NAME_ENTRY(name) std::string_view(#name),
    EXSTACK_NODE_LABELS(EXSTACK_NAME_ENTRY)
#undef EXSTACK_NAME_ENTRY
};

constexpr std::array kAllLabels = {
#define EXSTACK_VALUE_ENTRY(name) NodeLabel::name,
    EXSTACK_NODE_LABELS(EXSTACK_VALUE_ENTRY)
#undef EXSTACK_VALUE_ENTRY
};

void effective_children(const SyntaxTree& tree, NodeId id,
                        std::vector<NodeId>& out) {
  for (NodeId child : tree.node(id).children) {
    if (tree.node(child).synthetic) {
      effective_children(tree, child, out);
    } else {
      out.push_back(child);
    }
  }
}

std::vector<NodeId> effective_roots(const SyntaxTree& tree) {
  std::vector<NodeId> out;
  if (tree.empty()) return out;
  if (tree.node(tree.root()).synthetic) {
    effective_children(tree, tree.root(), out);
  } else {
    out.push_back(tree.root());
  }
  return out;
}

bool iso_lists(const SyntaxTree& a, const std::vector<NodeId>& xs,
               const SyntaxTree& b, const std::vector<NodeId>& ys);

bool iso_nodes(const SyntaxTree& a, NodeId x, const SyntaxTree& b, NodeId y) {
  const TreeNode& nx = a.node(x);
  const TreeNode& ny = b.node(y);
  if (nx.label != ny.label || nx.value != ny.value) return false;
  std::vector<NodeId> cx;
  std::vector<NodeId> cy;
  effective_children(a, x, cx);
  effective_children(b, y, cy);
  return iso_lists(a, cx, b, cy);
}

bool iso_lists(const SyntaxTree& a, const std::vector<NodeId>& xs,
               const SyntaxTree& b, const std::vector<NodeId>& ys) {
  if (xs.size() != ys.size()) return false;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!iso_nodes(a, xs[i], b, ys[i])) return false;
  }
  return true;
}

}  // namespace

std::string_view label_name(NodeLabel label) {
  return kLabelNames.at(static_cast<std::size_t>(label));
}

std::optional<NodeLabel> label_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kLabelNames.size(); ++i) {
    if (kLabelNames[i] == name) return kAllLabels[i];
  }
  return std::nullopt;
}

std::span<const NodeLabel> all_labels() { return kAllLabels; }

bool label_is_a(NodeLabel label, NodeLabel kind) {
  if (label == kind) return true;
  switch (kind) {
    case NodeLabel::Type:
      return label == NodeLabel::SimpleType ||
             label == NodeLabel::PrimitiveType ||
             label == NodeLabel::ArrayType ||
             label == NodeLabel::ParameterizedType ||
             label == NodeLabel::UnionType;
    case NodeLabel::VariableDeclaration:
      return label == NodeLabel::VariableDeclarationFragment ||
             label == NodeLabel::SingleVariableDeclaration;
    default:
      return false;
  }
}

bool label_carries_value(NodeLabel label) {
  switch (label) {
    case NodeLabel::Name:
    case NodeLabel::Literal:
    case NodeLabel::Operator:
    case NodeLabel::Modifier:
    case NodeLabel::SimpleType:
    case NodeLabel::PrimitiveType:
    case NodeLabel::ArrayType:
    case NodeLabel::ParameterizedType:
    case NodeLabel::TypeParameters:
    case NodeLabel::Dimensions:
    case NodeLabel::ThisExpression:
    case NodeLabel::SuperExpression:
    case NodeLabel::Comment:
    case NodeLabel::SwitchCase:
      return true;
    default:
      return false;
  }
}

LineColumn line_column_at(std::string_view text, std::size_t offset) {
  LineColumn lc;
  offset = std::min(offset, text.size());
  for (std::size_t i = 0; i < offset; ++i) {
    if (text[i] == '\n') {
      ++lc.line;
      lc.column = 1;
    } else {
      ++lc.column;
    }
  }
  return lc;
}

std::string_view SyntaxTree::text_of(NodeId id) const {
  const Span& s = node(id).span;
  std::string_view t = text();
  if (s.end > t.size() || s.begin > s.end) return {};
  return t.substr(s.begin, s.size());
}

bool SyntaxTree::is_ancestor(NodeId ancestor, NodeId descendant) const {
  NodeId cur = node(descendant).parent;
  while (cur != kNoNode) {
    if (cur == ancestor) return true;
    cur = node(cur).parent;
  }
  return false;
}

std::size_t SyntaxTree::child_index(NodeId id) const {
  NodeId parent = node(id).parent;
  if (parent == kNoNode) return 0;
  const auto& siblings = node(parent).children;
  auto it = std::find(siblings.begin(), siblings.end(), id);
  return static_cast<std::size_t>(it - siblings.begin());
}

std::size_t SyntaxTree::height(NodeId id) const {
  std::size_t h = 0;
  for (NodeId child : node(id).children) h = std::max(h, height(child));
  return h + 1;
}

std::size_t SyntaxTree::depth(NodeId id) const {
  std::size_t d = 0;
  for (NodeId cur = node(id).parent; cur != kNoNode; cur = node(cur).parent) {
    ++d;
  }
  return d;
}

std::vector<NodeId> SyntaxTree::preorder() const {
  std::vector<NodeId> out;
  if (empty()) return out;
  out.reserve(nodes_.size());
  std::vector<NodeId> stack{root_};
  while (!stack.empty()) {
    NodeId id = stack.back();
    stack.pop_back();
    out.push_back(id);
    const auto& kids = node(id).children;
    for (auto it = kids.rbegin(); it != kids.rend(); ++it) stack.push_back(*it);
  }
  return out;
}

std::vector<NodeId> SyntaxTree::postorder() const {
  std::vector<NodeId> out;
  if (empty()) return out;
  out.reserve(nodes_.size());
  std::function<void(NodeId)> visit = [&](NodeId id) {
    for (NodeId child : node(id).children) visit(child);
    out.push_back(id);
  };
  visit(root_);
  return out;
}

std::vector<NodeId> SyntaxTree::descendants(NodeId id) const {
  std::vector<NodeId> out;
  std::vector<NodeId> stack(node(id).children.rbegin(),
                            node(id).children.rend());
  while (!stack.empty()) {
    NodeId cur = stack.back();
    stack.pop_back();
    out.push_back(cur);
    const auto& kids = node(cur).children;
    for (auto it = kids.rbegin(); it != kids.rend(); ++it) stack.push_back(*it);
  }
  return out;
}

std::vector<NodeId> SyntaxTree::leaves() const {
  std::vector<NodeId> out;
  for (NodeId id : preorder()) {
    if (is_leaf(id) && !node(id).synthetic) out.push_back(id);
  }
  return out;
}

std::vector<std::size_t> SyntaxTree::path(NodeId id) const {
  std::vector<std::size_t> out;
  for (NodeId cur = id; node(cur).parent != kNoNode; cur = node(cur).parent) {
    out.push_back(child_index(cur));
  }
  std::reverse(out.begin(), out.end());
  return out;
}

std::optional<NodeId> SyntaxTree::find_by_path(
    std::span<const std::size_t> path) const {
  if (empty()) return std::nullopt;
  NodeId cur = root_;
  for (std::size_t index : path) {
    const auto& kids = node(cur).children;
    if (index >= kids.size()) return std::nullopt;
    cur = kids[index];
  }
  return cur;
}

NodeId SyntaxTree::real_parent(NodeId id) const {
  NodeId cur = id;
  while (cur != kNoNode && node(cur).synthetic) cur = node(cur).parent;
  return cur;
}

NodeId SyntaxTree::add_node(NodeLabel label, std::string value, Span span,
                            bool synthetic) {
  TreeNode n;
  n.id = static_cast<NodeId>(nodes_.size());
  n.label = label;
  n.value = std::move(value);
  n.span = span;
  n.synthetic = synthetic;
  nodes_.push_back(std::move(n));
  return nodes_.back().id;
}

void SyntaxTree::append_child(NodeId parent, NodeId child) {
  nodes_.at(parent).children.push_back(child);
  nodes_.at(child).parent = parent;
}

void SyntaxTree::insert_child(NodeId parent, std::size_t index, NodeId child) {
  auto& kids = nodes_.at(parent).children;
  if (index > kids.size()) throw std::out_of_range("insert_child index");
  kids.insert(kids.begin() + static_cast<std::ptrdiff_t>(index), child);
  nodes_.at(child).parent = parent;
}

void SyntaxTree::detach(NodeId child) {
  NodeId parent = nodes_.at(child).parent;
  if (parent == kNoNode) return;
  auto& kids = nodes_.at(parent).children;
  kids.erase(std::remove(kids.begin(), kids.end(), child), kids.end());
  nodes_.at(child).parent = kNoNode;
}

bool isomorphic(const SyntaxTree& a, const SyntaxTree& b) {
  return iso_lists(a, effective_roots(a), b, effective_roots(b));
}

bool isomorphic_subtrees(const SyntaxTree& a, NodeId na, const SyntaxTree& b,
                         NodeId nb) {
  return iso_nodes(a, na, b, nb);
}

std::string dump_tree(const SyntaxTree& tree) {
  std::ostringstream os;
  if (tree.empty()) return {};
  std::function<void(NodeId, int)> visit = [&](NodeId id, int indent) {
    const TreeNode& n = tree.node(id);
    os << std::string(static_cast<std::size_t>(indent) * 2, ' ')
       << label_name(n.label);
    if (!n.value.empty()) os << " \"" << n.value << '"';
    if (n.synthetic) os << " [synthetic]";
    os << " [" << n.span.begin << ',' << n.span.end << ")\n";
    for (NodeId child : n.children) visit(child, indent + 1);
  };
  visit(tree.root(), 0);
  return os.str();
}

}  // namespace exstack
