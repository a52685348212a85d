#pragma once

#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "exstack/syntax_tree.hpp"

namespace exstack {

/// Injective, label-preserving correspondence between nodes of two trees.
class NodeMapping {
 public:
  NodeMapping() = default;
  NodeMapping(std::size_t size_a, std::size_t size_b)
      : a_to_b_(size_a, kNoNode), b_to_a_(size_b, kNoNode) {}

  void link(NodeId a, NodeId b);
  void unlink(NodeId a, NodeId b);

  [[nodiscard]] NodeId to_b(NodeId a) const {
    return a < a_to_b_.size() ? a_to_b_[a] : kNoNode;
  }
  [[nodiscard]] NodeId to_a(NodeId b) const {
    return b < b_to_a_.size() ? b_to_a_[b] : kNoNode;
  }
  [[nodiscard]] bool has_a(NodeId a) const { return to_b(a) != kNoNode; }
  [[nodiscard]] bool has_b(NodeId b) const { return to_a(b) != kNoNode; }
  [[nodiscard]] bool contains(NodeId a, NodeId b) const {
    return has_a(a) && to_b(a) == b;
  }

  /// Pairs ordered by node id in tree A.
  [[nodiscard]] std::vector<std::pair<NodeId, NodeId>> pairs() const;
  [[nodiscard]] std::size_t size() const { return count_; }

 private:
  std::vector<NodeId> a_to_b_;
  std::vector<NodeId> b_to_a_;
  std::size_t count_ = 0;
};

struct MatcherOptions {
  /// Smallest subtree height considered by the top-down isomorphism phase.
  std::size_t min_height = 2;
  /// Threshold on the descendant-mapping dice coefficient for containers.
  double min_dice = 0.5;
};

/// Two-phase matching: greedy top-down matching of isomorphic subtrees, then
/// bottom-up container matching by dice coefficient, each matched container
/// followed by a child-alignment recovery pass.
[[nodiscard]] NodeMapping match_trees(const SyntaxTree& a, const SyntaxTree& b,
                                      const MatcherOptions& options = {});

/// Fraction of `na`'s descendants mapped into `nb`'s descendants, in the
/// symmetric dice form 2|common| / (|desc(na)| + |desc(nb)|).
[[nodiscard]] double dice_coefficient(const SyntaxTree& a, NodeId na,
                                      const SyntaxTree& b, NodeId nb,
                                      const NodeMapping& mapping);

enum class EditKind { Insert, Delete, Update, Move };

[[nodiscard]] std::string_view edit_kind_name(EditKind kind);

/// One tree edit.
///   Insert: `node` is the new node in B, `parent` its parent in B.
///   Delete: `node` is in A.
///   Update: `node` is in A, `target` its replacement in B.
///   Move:   `node` is in A, `target` its partner in B, `parent` the new
///           parent in B.
/// `index` is the child position in the working tree at the time the op is
/// applied (after detaching the moved node, for Move).
struct EditOp {
  EditKind kind = EditKind::Insert;
  NodeId node = kNoNode;
  NodeId target = kNoNode;
  NodeId parent = kNoNode;
  std::size_t index = 0;

  friend bool operator==(const EditOp&, const EditOp&) = default;
};

struct EditScript {
  std::vector<EditOp> ops;
  NodeMapping mapping;
  std::shared_ptr<const SyntaxTree> source;
  std::shared_ptr<const SyntaxTree> target;

  /// The node in A an op touches, or kNoNode for Insert.
  [[nodiscard]] NodeId source_node(const EditOp& op) const;
  /// The node in B an op touches, or kNoNode for Delete.
  [[nodiscard]] NodeId target_node(const EditOp& op) const;
};

class InvalidScript : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

[[nodiscard]] EditScript compute_edit_script(
    std::shared_ptr<const SyntaxTree> a, std::shared_ptr<const SyntaxTree> b,
    const MatcherOptions& options = {});
[[nodiscard]] EditScript compute_edit_script(const SyntaxTree& a,
                                             const SyntaxTree& b,
                                             const MatcherOptions& options = {});

/// Derives the script for a given mapping (roots must be mapped).
[[nodiscard]] EditScript edit_script_from_mapping(
    std::shared_ptr<const SyntaxTree> a, std::shared_ptr<const SyntaxTree> b,
    NodeMapping mapping);

/// Replays `script` on `a`. The result carries no source text; only labels,
/// values and structure are meaningful.
[[nodiscard]] SyntaxTree apply_edit_script(const SyntaxTree& a,
                                           const EditScript& script);

/// Drops ops on synthetic wrapper nodes and inner ops: ops whose node lies
/// strictly inside a subtree inserted (B side) or deleted (A side) by
/// another op.
[[nodiscard]] EditScript prune_inner_ops(const EditScript& script);

/// JSON document of the op list; see docs in the README for field names.
[[nodiscard]] std::string serialize_edit_script(const EditScript& script);

}  // namespace exstack
