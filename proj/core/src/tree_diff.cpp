#include "exstack/tree_diff.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <tuple>

#include <nlohmann/json.hpp>

namespace exstack {

void NodeMapping::link(NodeId a, NodeId b) {
  if (a >= a_to_b_.size() || b >= b_to_a_.size()) {
    throw std::out_of_range("NodeMapping::link");
  }
  if (a_to_b_[a] == b) return;
  if (a_to_b_[a] != kNoNode || b_to_a_[b] != kNoNode) {
    throw std::logic_error("NodeMapping::link on an already mapped node");
  }
  a_to_b_[a] = b;
  b_to_a_[b] = a;
  ++count_;
}

void NodeMapping::unlink(NodeId a, NodeId b) {
  if (!contains(a, b)) return;
  a_to_b_[a] = kNoNode;
  b_to_a_[b] = kNoNode;
  --count_;
}

std::vector<std::pair<NodeId, NodeId>> NodeMapping::pairs() const {
  std::vector<std::pair<NodeId, NodeId>> out;
  out.reserve(count_);
  for (NodeId a = 0; a < a_to_b_.size(); ++a) {
    if (a_to_b_[a] != kNoNode) out.emplace_back(a, a_to_b_[a]);
  }
  return out;
}

namespace {

// Interns subtree shapes so that equal ids mean isomorphic subtrees. The
// same table is shared by both trees of a match.
class ShapeTable {
 public:
  std::vector<std::uint32_t> exact(const SyntaxTree& t) { return build(t, true); }
  std::vector<std::uint32_t> structural(const SyntaxTree& t) {
    return build(t, false);
  }

 private:
  using Key = std::tuple<NodeLabel, bool, std::string, std::vector<std::uint32_t>>;

  std::vector<std::uint32_t> build(const SyntaxTree& t, bool with_values) {
    std::vector<std::uint32_t> ids(t.size(), 0);
    for (NodeId n : t.postorder()) {
      const TreeNode& node = t.node(n);
      Key key{node.label, node.synthetic, with_values ? node.value : std::string(),
              {}};
      for (NodeId c : node.children) std::get<3>(key).push_back(ids[c]);
      auto [it, inserted] =
          table_.emplace(std::move(key), static_cast<std::uint32_t>(table_.size()));
      ids[n] = it->second;
    }
    return ids;
  }

  std::map<Key, std::uint32_t> table_;
};

template <typename Eq>
std::vector<std::pair<std::size_t, std::size_t>> lcs(std::size_t n, std::size_t m,
                                                     Eq eq) {
  std::vector<std::vector<std::uint32_t>> dp(n + 1,
                                             std::vector<std::uint32_t>(m + 1, 0));
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t j = m; j-- > 0;) {
      dp[i][j] = eq(i, j) ? dp[i + 1][j + 1] + 1
                          : std::max(dp[i + 1][j], dp[i][j + 1]);
    }
  }
  std::vector<std::pair<std::size_t, std::size_t>> out;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < n && j < m) {
    if (eq(i, j) && dp[i][j] == dp[i + 1][j + 1] + 1) {
      out.emplace_back(i, j);
      ++i;
      ++j;
    } else if (dp[i + 1][j] >= dp[i][j + 1]) {
      ++i;
    } else {
      ++j;
    }
  }
  return out;
}

class Matcher {
 public:
  Matcher(const SyntaxTree& a, const SyntaxTree& b, const MatcherOptions& opt)
      : a_(a), b_(b), opt_(opt), map_(a.size(), b.size()) {
    exact_a_ = shapes_.exact(a);
    exact_b_ = shapes_.exact(b);
    struct_a_ = shapes_.structural(a);
    struct_b_ = shapes_.structural(b);
    height_a_.resize(a.size());
    height_b_.resize(b.size());
    for (NodeId n : a.postorder()) height_a_[n] = compute_height(a, height_a_, n);
    for (NodeId n : b.postorder()) height_b_[n] = compute_height(b, height_b_, n);
  }

  NodeMapping run() {
    if (a_.empty() || b_.empty()) return std::move(map_);
    top_down();
    bottom_up();
    return std::move(map_);
  }

 private:
  static std::size_t compute_height(const SyntaxTree& t,
                                    const std::vector<std::size_t>& h, NodeId n) {
    std::size_t best = 0;
    for (NodeId c : t.node(n).children) best = std::max(best, h[c]);
    return best + 1;
  }

  // Wrappers only pair with wrappers, so that no real node inherits the
  // zero-length span of a synthetic one.
  bool compatible(NodeId x, NodeId y) const {
    const TreeNode& u = a_.node(x);
    const TreeNode& v = b_.node(y);
    return u.label == v.label && u.synthetic == v.synthetic;
  }

  void link_subtrees(NodeId x, NodeId y) {
    std::vector<NodeId> xs{x};
    std::vector<NodeId> ys{y};
    auto dx = a_.descendants(x);
    auto dy = b_.descendants(y);
    xs.insert(xs.end(), dx.begin(), dx.end());
    ys.insert(ys.end(), dy.begin(), dy.end());
    for (std::size_t i = 0; i < xs.size() && i < ys.size(); ++i) {
      if (!map_.has_a(xs[i]) && !map_.has_b(ys[i]) && compatible(xs[i], ys[i])) {
        map_.link(xs[i], ys[i]);
      }
    }
  }

  double parent_dice(NodeId x, NodeId y) const {
    NodeId px = a_.node(x).parent;
    NodeId py = b_.node(y).parent;
    if (px == kNoNode || py == kNoNode) return 0.0;
    return dice_coefficient(a_, px, b_, py, map_);
  }

  static std::size_t max_height(const std::vector<NodeId>& list,
                                const std::vector<std::size_t>& h) {
    std::size_t best = 0;
    for (NodeId n : list) best = std::max(best, h[n]);
    return best;
  }

  static std::vector<NodeId> pop_height(std::vector<NodeId>& list,
                                        const std::vector<std::size_t>& h,
                                        std::size_t height) {
    std::vector<NodeId> out;
    std::vector<NodeId> rest;
    for (NodeId n : list) (h[n] == height ? out : rest).push_back(n);
    list = std::move(rest);
    return out;
  }

  static void open(std::vector<NodeId>& list, const SyntaxTree& t, NodeId n) {
    for (NodeId c : t.node(n).children) list.push_back(c);
  }

  void top_down() {
    std::vector<NodeId> l1{a_.root()};
    std::vector<NodeId> l2{b_.root()};
    struct Candidate {
      NodeId x;
      NodeId y;
    };
    while (true) {
      std::size_t h1 = max_height(l1, height_a_);
      std::size_t h2 = max_height(l2, height_b_);
      if (std::min(h1, h2) < opt_.min_height) break;
      if (h1 != h2) {
        if (h1 > h2) {
          for (NodeId n : pop_height(l1, height_a_, h1)) open(l1, a_, n);
        } else {
          for (NodeId n : pop_height(l2, height_b_, h2)) open(l2, b_, n);
        }
        continue;
      }
      auto hs1 = pop_height(l1, height_a_, h1);
      auto hs2 = pop_height(l2, height_b_, h2);
      std::map<std::uint32_t, std::vector<NodeId>> g1;
      std::map<std::uint32_t, std::vector<NodeId>> g2;
      for (NodeId n : hs1) g1[exact_a_[n]].push_back(n);
      for (NodeId n : hs2) g2[exact_b_[n]].push_back(n);
      std::vector<Candidate> candidates;
      for (const auto& [shape, xs] : g1) {
        auto it = g2.find(shape);
        if (it == g2.end()) {
          for (NodeId x : xs) open(l1, a_, x);
          continue;
        }
        const auto& ys = it->second;
        if (xs.size() == 1 && ys.size() == 1) {
          link_subtrees(xs[0], ys[0]);
        } else {
          for (NodeId x : xs) {
            for (NodeId y : ys) candidates.push_back({x, y});
          }
        }
      }
      for (const auto& [shape, ys] : g2) {
        if (!g1.contains(shape)) {
          for (NodeId y : ys) open(l2, b_, y);
        }
      }
      // Ambiguous candidates: prefer pairs whose parents already agree, then
      // pairs at similar sibling positions.
      std::vector<std::tuple<double, std::size_t, NodeId, NodeId>> ranked;
      for (const auto& c : candidates) {
        std::size_t ix = a_.child_index(c.x);
        std::size_t iy = b_.child_index(c.y);
        std::size_t dist = ix > iy ? ix - iy : iy - ix;
        ranked.emplace_back(-parent_dice(c.x, c.y), dist, c.x, c.y);
      }
      std::sort(ranked.begin(), ranked.end());
      for (const auto& [score, dist, x, y] : ranked) {
        if (!map_.has_a(x) && !map_.has_b(y)) link_subtrees(x, y);
      }
    }
  }

  void bottom_up() {
    for (NodeId x : a_.postorder()) {
      if (x == a_.root()) {
        NodeId y = b_.root();
        if (!map_.has_a(x) && !map_.has_b(y) && compatible(x, y)) {
          map_.link(x, y);
        }
        if (map_.has_a(x)) recover(x, map_.to_b(x));
        break;
      }
      if (map_.has_a(x) || a_.is_leaf(x)) continue;
      std::set<NodeId> seen;
      NodeId best = kNoNode;
      double best_dice = -1.0;
      for (NodeId d : a_.descendants(x)) {
        NodeId ym = map_.to_b(d);
        if (ym == kNoNode) continue;
        for (NodeId y = b_.node(ym).parent; y != kNoNode; y = b_.node(y).parent) {
          if (!seen.insert(y).second) break;
          if (map_.has_b(y) || !compatible(x, y)) continue;
          double dice = dice_coefficient(a_, x, b_, y, map_);
          if (dice > best_dice || (dice == best_dice && y < best)) {
            best_dice = dice;
            best = y;
          }
        }
      }
      if (best != kNoNode && best_dice >= opt_.min_dice) {
        map_.link(x, best);
        recover(x, best);
      }
    }
  }

  std::vector<NodeId> free_children_a(NodeId x) const {
    std::vector<NodeId> out;
    for (NodeId c : a_.node(x).children) {
      if (!map_.has_a(c)) out.push_back(c);
    }
    return out;
  }
  std::vector<NodeId> free_children_b(NodeId y) const {
    std::vector<NodeId> out;
    for (NodeId c : b_.node(y).children) {
      if (!map_.has_b(c)) out.push_back(c);
    }
    return out;
  }

  // Aligns the unmapped children of a matched pair, from strongest to weakest
  // evidence: identical subtrees, same-shape subtrees, labels unique on both
  // sides, and finally any label-equal subsequence.
  void recover(NodeId x, NodeId y) {
    auto u1 = free_children_a(x);
    auto u2 = free_children_b(y);
    if (u1.empty() || u2.empty()) return;
    for (auto [i, j] : lcs(u1.size(), u2.size(), [&](std::size_t i, std::size_t j) {
           return exact_a_[u1[i]] == exact_b_[u2[j]];
         })) {
      link_subtrees(u1[i], u2[j]);
    }
    u1 = free_children_a(x);
    u2 = free_children_b(y);
    for (auto [i, j] : lcs(u1.size(), u2.size(), [&](std::size_t i, std::size_t j) {
           return struct_a_[u1[i]] == struct_b_[u2[j]];
         })) {
      link_subtrees(u1[i], u2[j]);
    }
    u1 = free_children_a(x);
    u2 = free_children_b(y);
    using Key = std::pair<NodeLabel, bool>;
    std::map<Key, std::vector<NodeId>> h1;
    std::map<Key, std::vector<NodeId>> h2;
    for (NodeId c : u1) h1[{a_.node(c).label, a_.node(c).synthetic}].push_back(c);
    for (NodeId c : u2) h2[{b_.node(c).label, b_.node(c).synthetic}].push_back(c);
    for (const auto& [label, xs] : h1) {
      auto it = h2.find(label);
      if (it == h2.end() || xs.size() != 1 || it->second.size() != 1) continue;
      map_.link(xs[0], it->second[0]);
      recover(xs[0], it->second[0]);
    }
    u1 = free_children_a(x);
    u2 = free_children_b(y);
    for (auto [i, j] : lcs(u1.size(), u2.size(), [&](std::size_t i, std::size_t j) {
           return compatible(u1[i], u2[j]);
         })) {
      map_.link(u1[i], u2[j]);
      recover(u1[i], u2[j]);
    }
  }

  const SyntaxTree& a_;
  const SyntaxTree& b_;
  const MatcherOptions& opt_;
  NodeMapping map_;
  ShapeTable shapes_;
  std::vector<std::uint32_t> exact_a_;
  std::vector<std::uint32_t> exact_b_;
  std::vector<std::uint32_t> struct_a_;
  std::vector<std::uint32_t> struct_b_;
  std::vector<std::size_t> height_a_;
  std::vector<std::size_t> height_b_;
};

// Mutable tree used while deriving and replaying scripts. The last slot is a
// virtual root above the real root so that the real roots may differ.
struct WorkNode {
  NodeLabel label = NodeLabel::CompilationUnit;
  std::string value;
  bool synthetic = false;
  NodeId parent = kNoNode;
  std::vector<NodeId> children;
};

struct WorkTree {
  std::vector<WorkNode> nodes;
  NodeId vroot = kNoNode;

  explicit WorkTree(const SyntaxTree& t) {
    nodes.reserve(t.size() + 1);
    for (const TreeNode& n : t.nodes()) {
      nodes.push_back({n.label, n.value, n.synthetic, n.parent, n.children});
    }
    vroot = add({});
    if (!t.empty()) {
      nodes[vroot].children.push_back(t.root());
      nodes[t.root()].parent = vroot;
    }
  }

  NodeId add(WorkNode n) {
    nodes.push_back(std::move(n));
    return static_cast<NodeId>(nodes.size() - 1);
  }

  void detach(NodeId n) {
    NodeId p = nodes[n].parent;
    if (p == kNoNode) return;
    auto& kids = nodes[p].children;
    kids.erase(std::find(kids.begin(), kids.end(), n));
    nodes[n].parent = kNoNode;
  }

  void insert(NodeId parent, std::size_t index, NodeId n) {
    auto& kids = nodes[parent].children;
    kids.insert(kids.begin() + static_cast<std::ptrdiff_t>(index), n);
    nodes[n].parent = parent;
  }

  std::size_t index_of(NodeId n) const {
    const auto& kids = nodes[nodes[n].parent].children;
    return static_cast<std::size_t>(std::find(kids.begin(), kids.end(), n) -
                                    kids.begin());
  }

  void postorder(NodeId n, std::vector<NodeId>& out) const {
    for (NodeId c : nodes[n].children) postorder(c, out);
    out.push_back(n);
  }
};

class ScriptBuilder {
 public:
  ScriptBuilder(const SyntaxTree& a, const SyntaxTree& b, const NodeMapping& m)
      : b_(b), w_(a), b_vroot_(static_cast<NodeId>(b.size())) {
    w_to_b_.assign(w_.nodes.size(), kNoNode);
    b_to_w_.assign(b.size() + 1, kNoNode);
    for (auto [x, y] : m.pairs()) {
      w_to_b_[x] = y;
      b_to_w_[y] = x;
    }
    w_to_b_[w_.vroot] = b_vroot_;
    b_to_w_[b_vroot_] = w_.vroot;
    in_order_w_.assign(w_.nodes.size(), false);
    in_order_b_.assign(b.size() + 1, false);
    if (!b.empty()) b_roots_ = {b.root()};
  }

  std::vector<EditOp> run() {
    std::vector<EditOp> ops;
    if (b_.empty()) {
      delete_unmapped(ops);
      return ops;
    }
    std::vector<NodeId> queue{b_.root()};
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      NodeId x = queue[qi];
      for (NodeId c : b_.node(x).children) queue.push_back(c);
      NodeId y = b_parent(x);
      NodeId z = b_to_w_[y];
      NodeId w = b_to_w_[x];
      if (w == kNoNode) {
        std::size_t k = find_pos(x);
        const TreeNode& bx = b_.node(x);
        w = w_.add({bx.label, bx.value, bx.synthetic, kNoNode, {}});
        w_to_b_.push_back(x);
        in_order_w_.push_back(false);
        b_to_w_[x] = w;
        w_.insert(z, k, w);
        ops.push_back({EditKind::Insert, x, kNoNode, public_parent(y), k});
      } else {
        if (w_.nodes[w].value != b_.node(x).value) {
          ops.push_back({EditKind::Update, w, x, kNoNode, 0});
          w_.nodes[w].value = b_.node(x).value;
        }
        if (w_.nodes[w].parent != z) {
          w_.detach(w);
          std::size_t k = find_pos(x);
          w_.insert(z, k, w);
          ops.push_back({EditKind::Move, w, x, public_parent(y), k});
        }
      }
      in_order_w_[w] = true;
      in_order_b_[x] = true;
      align_children(w, x, ops);
    }
    delete_unmapped(ops);
    return ops;
  }

 private:
  NodeId b_parent(NodeId x) const {
    NodeId p = b_.node(x).parent;
    return p == kNoNode ? b_vroot_ : p;
  }
  NodeId public_parent(NodeId y) const { return y == b_vroot_ ? kNoNode : y; }
  const std::vector<NodeId>& b_children(NodeId y) const {
    return y == b_vroot_ ? b_roots_ : b_.node(y).children;
  }

  std::size_t find_pos(NodeId x) {
    NodeId y = b_parent(x);
    const auto& siblings = b_children(y);
    NodeId v = kNoNode;
    for (NodeId s : siblings) {
      if (s == x) break;
      if (in_order_b_[s]) v = s;
    }
    if (v == kNoNode) return 0;
    return w_.index_of(b_to_w_[v]) + 1;
  }

  void align_children(NodeId w, NodeId x, std::vector<EditOp>& ops) {
    for (NodeId c : w_.nodes[w].children) in_order_w_[c] = false;
    for (NodeId c : b_.node(x).children) in_order_b_[c] = false;
    std::vector<NodeId> s1;
    std::vector<NodeId> s2;
    for (NodeId c : w_.nodes[w].children) {
      NodeId p = w_to_b_[c];
      if (p != kNoNode && b_parent(p) == x) s1.push_back(c);
    }
    for (NodeId c : b_.node(x).children) {
      NodeId p = b_to_w_[c];
      if (p != kNoNode && w_.nodes[p].parent == w) s2.push_back(c);
    }
    auto common = lcs(s1.size(), s2.size(), [&](std::size_t i, std::size_t j) {
      return w_to_b_[s1[i]] == s2[j];
    });
    std::set<NodeId> stable;
    for (auto [i, j] : common) {
      in_order_w_[s1[i]] = true;
      in_order_b_[s2[j]] = true;
      stable.insert(s2[j]);
    }
    for (NodeId bchild : s2) {
      if (stable.contains(bchild)) continue;
      NodeId a = b_to_w_[bchild];
      w_.detach(a);
      std::size_t k = find_pos(bchild);
      w_.insert(w, k, a);
      ops.push_back({EditKind::Move, a, bchild, x, k});
      in_order_w_[a] = true;
      in_order_b_[bchild] = true;
    }
  }

  void delete_unmapped(std::vector<EditOp>& ops) {
    std::vector<NodeId> order;
    w_.postorder(w_.vroot, order);
    for (NodeId n : order) {
      if (n == w_.vroot || w_to_b_[n] != kNoNode) continue;
      ops.push_back({EditKind::Delete, n, kNoNode, kNoNode, 0});
      w_.detach(n);
    }
  }

  const SyntaxTree& b_;
  WorkTree w_;
  NodeId b_vroot_;
  std::vector<NodeId> b_roots_;
  std::vector<NodeId> w_to_b_;
  std::vector<NodeId> b_to_w_;
  std::vector<bool> in_order_w_;
  std::vector<bool> in_order_b_;
};

nlohmann::json path_json(const SyntaxTree& t, NodeId n) {
  nlohmann::json out = nlohmann::json::array();
  for (std::size_t i : t.path(n)) out.push_back(i);
  return out;
}

}  // namespace

double dice_coefficient(const SyntaxTree& a, NodeId na, const SyntaxTree& b,
                        NodeId nb, const NodeMapping& mapping) {
  auto da = a.descendants(na);
  auto db = b.descendants(nb);
  if (da.empty() && db.empty()) return 0.0;
  std::size_t common = 0;
  for (NodeId d : da) {
    NodeId m = mapping.to_b(d);
    if (m != kNoNode && b.is_ancestor(nb, m)) ++common;
  }
  return 2.0 * static_cast<double>(common) /
         static_cast<double>(da.size() + db.size());
}

NodeMapping match_trees(const SyntaxTree& a, const SyntaxTree& b,
                        const MatcherOptions& options) {
  return Matcher(a, b, options).run();
}

std::string_view edit_kind_name(EditKind kind) {
  switch (kind) {
    case EditKind::Insert:
      return "insert";
    case EditKind::Delete:
      return "delete";
    case EditKind::Update:
      return "update";
    case EditKind::Move:
      return "move";
  }
  return "unknown";
}

NodeId EditScript::source_node(const EditOp& op) const {
  return op.kind == EditKind::Insert ? kNoNode : op.node;
}

NodeId EditScript::target_node(const EditOp& op) const {
  switch (op.kind) {
    case EditKind::Insert:
      return op.node;
    case EditKind::Delete:
      return kNoNode;
    case EditKind::Update:
    case EditKind::Move:
      return op.target;
  }
  return kNoNode;
}

EditScript edit_script_from_mapping(std::shared_ptr<const SyntaxTree> a,
                                    std::shared_ptr<const SyntaxTree> b,
                                    NodeMapping mapping) {
  EditScript script;
  script.ops = ScriptBuilder(*a, *b, mapping).run();
  script.mapping = std::move(mapping);
  script.source = std::move(a);
  script.target = std::move(b);
  return script;
}

EditScript compute_edit_script(std::shared_ptr<const SyntaxTree> a,
                               std::shared_ptr<const SyntaxTree> b,
                               const MatcherOptions& options) {
  NodeMapping mapping = match_trees(*a, *b, options);
  return edit_script_from_mapping(std::move(a), std::move(b), std::move(mapping));
}

EditScript compute_edit_script(const SyntaxTree& a, const SyntaxTree& b,
                               const MatcherOptions& options) {
  return compute_edit_script(std::make_shared<const SyntaxTree>(a),
                             std::make_shared<const SyntaxTree>(b), options);
}

SyntaxTree apply_edit_script(const SyntaxTree& a, const EditScript& script) {
  if (!script.target) throw InvalidScript("script has no target tree");
  const SyntaxTree& b = *script.target;
  WorkTree w(a);
  std::size_t original = a.size();
  std::vector<NodeId> b_to_w(b.size(), kNoNode);
  std::vector<bool> alive(w.nodes.size(), true);
  for (auto [x, y] : script.mapping.pairs()) {
    if (x >= original || y >= b.size()) throw InvalidScript("mapping out of range");
    b_to_w[y] = x;
  }
  auto resolve_parent = [&](NodeId y) {
    if (y == kNoNode) return w.vroot;
    if (y >= b.size() || b_to_w[y] == kNoNode) {
      throw InvalidScript("op parent not present in working tree");
    }
    return b_to_w[y];
  };
  auto check_source = [&](NodeId n) {
    if (n >= original || !alive[n]) throw InvalidScript("op references a missing node");
  };
  auto check_index = [&](NodeId parent, std::size_t index) {
    if (index > w.nodes[parent].children.size()) {
      throw InvalidScript("op index out of range");
    }
  };
  for (const EditOp& op : script.ops) {
    switch (op.kind) {
      case EditKind::Insert: {
        if (op.node >= b.size()) throw InvalidScript("insert of a missing node");
        NodeId parent = resolve_parent(op.parent);
        check_index(parent, op.index);
        const TreeNode& bx = b.node(op.node);
        NodeId n = w.add({bx.label, bx.value, bx.synthetic, kNoNode, {}});
        alive.push_back(true);
        b_to_w[op.node] = n;
        w.insert(parent, op.index, n);
        break;
      }
      case EditKind::Delete: {
        check_source(op.node);
        if (!w.nodes[op.node].children.empty()) {
          throw InvalidScript("delete of a non-leaf node");
        }
        w.detach(op.node);
        alive[op.node] = false;
        break;
      }
      case EditKind::Update: {
        check_source(op.node);
        if (op.target >= b.size()) throw InvalidScript("update without a target");
        w.nodes[op.node].value = b.node(op.target).value;
        break;
      }
      case EditKind::Move: {
        check_source(op.node);
        NodeId parent = resolve_parent(op.parent);
        for (NodeId p = parent; p != kNoNode; p = w.nodes[p].parent) {
          if (p == op.node) throw InvalidScript("move into own subtree");
        }
        w.detach(op.node);
        check_index(parent, op.index);
        w.insert(parent, op.index, op.node);
        break;
      }
    }
  }
  const auto& roots = w.nodes[w.vroot].children;
  if (roots.size() > 1) throw InvalidScript("script leaves several roots");
  SyntaxTree out;
  if (roots.empty()) return out;
  std::vector<std::pair<NodeId, NodeId>> stack{{roots[0], kNoNode}};
  while (!stack.empty()) {
    auto [n, parent] = stack.back();
    stack.pop_back();
    const WorkNode& wn = w.nodes[n];
    NodeId id = out.add_node(wn.label, wn.value, Span{}, wn.synthetic);
    if (parent == kNoNode) {
      out.set_root(id);
    } else {
      out.append_child(parent, id);
    }
    for (auto it = wn.children.rbegin(); it != wn.children.rend(); ++it) {
      stack.emplace_back(*it, id);
    }
  }
  return out;
}

EditScript prune_inner_ops(const EditScript& script) {
  const SyntaxTree& a = *script.source;
  const SyntaxTree& b = *script.target;
  std::vector<const EditOp*> kept;
  for (const EditOp& op : script.ops) {
    NodeId s = script.source_node(op);
    NodeId t = script.target_node(op);
    if (s != kNoNode && a.node(s).synthetic) continue;
    if (t != kNoNode && b.node(t).synthetic) continue;
    kept.push_back(&op);
  }
  std::vector<bool> anchor_a(a.size(), false);
  std::vector<bool> anchor_b(b.size(), false);
  for (const EditOp* op : kept) {
    if (op->kind == EditKind::Insert) anchor_b[op->node] = true;
    if (op->kind == EditKind::Delete) anchor_a[op->node] = true;
    if (op->kind == EditKind::Update) {
      anchor_a[op->node] = true;
      anchor_b[op->target] = true;
    }
  }
  auto under = [](const SyntaxTree& t, const std::vector<bool>& anchors,
                  NodeId n) {
    for (NodeId p = t.node(n).parent; p != kNoNode; p = t.node(p).parent) {
      if (anchors[p]) return true;
    }
    return false;
  };
  EditScript out;
  out.mapping = script.mapping;
  out.source = script.source;
  out.target = script.target;
  for (const EditOp* op : kept) {
    NodeId s = script.source_node(*op);
    NodeId t = script.target_node(*op);
    if (s != kNoNode && under(a, anchor_a, s)) continue;
    if (t != kNoNode && under(b, anchor_b, t)) continue;
    out.ops.push_back(*op);
  }
  return out;
}

std::string serialize_edit_script(const EditScript& script) {
  const SyntaxTree& a = *script.source;
  const SyntaxTree& b = *script.target;
  nlohmann::json ops = nlohmann::json::array();
  for (const EditOp& op : script.ops) {
    nlohmann::json rec;
    rec["kind"] = edit_kind_name(op.kind);
    const SyntaxTree& side = op.kind == EditKind::Insert ? b : a;
    const TreeNode& n = side.node(op.node);
    rec["tree"] = op.kind == EditKind::Insert ? "target" : "source";
    rec["node_path"] = path_json(side, op.node);
    rec["label"] = label_name(n.label);
    if (!n.value.empty()) rec["value"] = n.value;
    if (op.kind == EditKind::Update) {
      rec["new_value"] = b.node(op.target).value;
    }
    if (op.kind == EditKind::Move) rec["target_path"] = path_json(b, op.target);
    if (op.kind == EditKind::Insert || op.kind == EditKind::Move) {
      rec["parent_path"] = op.parent == kNoNode ? nlohmann::json(nullptr)
                                                : path_json(b, op.parent);
      rec["index"] = op.index;
    }
    ops.push_back(std::move(rec));
  }
  nlohmann::json doc;
  doc["ops"] = std::move(ops);
  doc["mapped"] = script.mapping.size();
  return doc.dump(2);
}

}  // namespace exstack
