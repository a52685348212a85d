#include "exstack/classifier.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <map>

#include <nlohmann/json.hpp>

namespace exstack {

namespace {

struct TypeInfo {
  AdaptationType type;
  Category category;
  std::string_view name;
  std::string_view description;
};

constexpr std::array kTypes = {
#define EXSTACK_INFO_ENTRY(name, category, text) \
  TypeInfo{AdaptationType::name, Category::category, #name, text},
    EXSTACK_ADAPTATION_TYPES(EXSTACK_INFO_ENTRY)
#undef EXSTACK_INFO_ENTRY
};
static_assert(kTypes.size() == kAdaptationTypeCount);

constexpr std::array kAllTypes = {
#define EXSTACK_VALUE_ENTRY(name, category, text) AdaptationType::name,
    EXSTACK_ADAPTATION_TYPES(EXSTACK_VALUE_ENTRY)
#undef EXSTACK_VALUE_ENTRY
};

constexpr std::array<std::string_view, kCategoryCount> kCategoryNames = {
    "CodeHardening", "ResolveCompilationErrors", "ExceptionHandling",
    "LogicCustomization", "Refactoring", "Miscellaneous"};

constexpr std::array<std::string_view, kCategoryCount> kCategoryColors = {
    "#f9d6d5", "#fdf0c2", "#e4d8f6", "#d4e8fb", "#d7f2d8", "#e6e6e6"};

// A node-level edit implied by a retained op. Insert/Delete ops imply edits
// on every unmapped node of their subtree.
struct Event {
  EditKind kind;
  NodeId a = kNoNode;
  NodeId b = kNoNode;
};

class Classifier {
 public:
  Classifier(const EditScript& script, const SemanticFacts& so,
             const SemanticFacts& gh, const ClassifyOptions& options)
      : s_(script), a_(*script.source), b_(*script.target), so_(so), gh_(gh),
        opt_(options) {
    moved_a_.assign(a_.size(), false);
    updated_a_.assign(a_.size(), false);
    EditScript full =
        edit_script_from_mapping(script.source, script.target, script.mapping);
    for (const EditOp& op : full.ops) {
      if (op.kind == EditKind::Move) moved_a_[op.node] = true;
      if (op.kind == EditKind::Update) updated_a_[op.node] = true;
    }
    for (NodeId n = 0; n < b_.size(); ++n) {
      if (b_.node(n).label == NodeLabel::Name) b_names_.insert(b_.node(n).value);
    }
  }

  std::vector<AdaptationInstance> run() {
    evaluate_op_rules();
    evaluate_fact_rules();
    evaluate_pair_rules();
    std::stable_sort(found_.begin(), found_.end(), [](const Found& x, const Found& y) {
      return std::tie(x.first_op, x.rule) < std::tie(y.first_op, y.rule);
    });
    std::vector<bool> claimed(s_.ops.size(), false);
    std::vector<Found> kept;
    for (const Found& f : found_) {
      if (opt_.single_count &&
          std::any_of(f.ops.begin(), f.ops.end(),
                      [&](std::size_t i) { return claimed[i]; })) {
        continue;
      }
      for (std::size_t i : f.ops) claimed[i] = true;
      kept.push_back(f);
    }
    if (opt_.report_unclassified) {
      for (std::size_t i = 0; i < s_.ops.size(); ++i) {
        if (!claimed[i]) kept.push_back({AdaptationType::Unclassified, i, 99, {i}});
      }
      std::stable_sort(kept.begin(), kept.end(), [](const Found& x, const Found& y) {
        return std::tie(x.first_op, x.rule) < std::tie(y.first_op, y.rule);
      });
    }
    std::vector<AdaptationInstance> out;
    out.reserve(kept.size());
    for (const Found& f : kept) out.push_back(materialize(f));
    return out;
  }

 private:
  struct Found {
    AdaptationType type;
    std::size_t first_op;
    std::size_t rule;
    std::vector<std::size_t> ops;
  };

  // Node a rule instance is about (the enclosing call, catch clause, ...):
  // tree side (0 source, 1 target) and id.
  using Witness = std::pair<int, NodeId>;

  static Witness source_witness(NodeId a) { return {0, a}; }

  void emit(AdaptationType type, std::vector<std::size_t> ops) {
    std::sort(ops.begin(), ops.end());
    ops.erase(std::unique(ops.begin(), ops.end()), ops.end());
    found_.push_back({type, ops.front(), static_cast<std::size_t>(type),
                      std::move(ops)});
  }

  // Ops of one type that share a witness form a single instance.
  void emit_at(AdaptationType type, std::size_t op, Witness w) {
    auto key = std::make_pair(type, w);
    auto it = witnessed_.find(key);
    if (it != witnessed_.end()) {
      Found& f = found_[it->second];
      f.ops.push_back(op);
      std::sort(f.ops.begin(), f.ops.end());
      f.ops.erase(std::unique(f.ops.begin(), f.ops.end()), f.ops.end());
      f.first_op = f.ops.front();
      return;
    }
    witnessed_.emplace(key, found_.size());
    emit(type, {op});
  }

  std::vector<Event> events(const EditOp& op) const {
    std::vector<Event> out;
    switch (op.kind) {
      case EditKind::Insert:
        out.push_back({EditKind::Insert, kNoNode, op.node});
        for (NodeId d : b_.descendants(op.node)) {
          if (!s_.mapping.has_b(d)) out.push_back({EditKind::Insert, kNoNode, d});
        }
        break;
      case EditKind::Delete:
        out.push_back({EditKind::Delete, op.node, kNoNode});
        for (NodeId d : a_.descendants(op.node)) {
          if (!s_.mapping.has_a(d)) out.push_back({EditKind::Delete, d, kNoNode});
        }
        break;
      case EditKind::Update:
      case EditKind::Move:
        out.push_back({op.kind, op.node, op.target});
        break;
    }
    return out;
  }

  NodeLabel label(const Event& e) const {
    return e.a != kNoNode ? a_.node(e.a).label : b_.node(e.b).label;
  }

  // Values the event's node carries on either side.
  std::vector<std::string_view> values(const Event& e) const {
    std::vector<std::string_view> out;
    if (e.a != kNoNode) out.push_back(a_.node(e.a).value);
    if (e.b != kNoNode) out.push_back(b_.node(e.b).value);
    return out;
  }

  bool event_parent_is(const Event& e, NodeLabel parent_label) const {
    auto check = [&](const SyntaxTree& t, NodeId n) {
      NodeId p = t.node(n).parent;
      return p != kNoNode && t.node(p).label == parent_label;
    };
    return (e.a != kNoNode && check(a_, e.a)) || (e.b != kNoNode && check(b_, e.b));
  }

  // Innermost ancestor present in both versions satisfying `pred`, searched
  // on the op's source side and then its target side. Reported by its source
  // id.
  std::optional<Witness> mapped_ancestor(
      const EditOp& op, const std::function<bool(const SyntaxTree&, NodeId)>& pred)
      const {
    NodeId sa = s_.source_node(op);
    NodeId sb = s_.target_node(op);
    if (sa != kNoNode) {
      for (NodeId p = a_.node(sa).parent; p != kNoNode; p = a_.node(p).parent) {
        if (s_.mapping.has_a(p) && pred(a_, p)) return source_witness(p);
      }
    }
    if (sb != kNoNode) {
      for (NodeId p = b_.node(sb).parent; p != kNoNode; p = b_.node(p).parent) {
        if (s_.mapping.has_b(p) && pred(b_, p)) {
          return source_witness(s_.mapping.to_a(p));
        }
      }
    }
    return std::nullopt;
  }

  // Like mapped_ancestor for CatchClause, but only through the catch body, so
  // edits to the caught parameter do not count as statement changes.
  std::optional<Witness> mapped_catch_body(const EditOp& op) const {
    auto check = [&](const SyntaxTree& t, NodeId n, bool side_b) -> NodeId {
      for (NodeId prev = n, p = t.node(n).parent; p != kNoNode;
           prev = p, p = t.node(p).parent) {
        bool mapped = side_b ? s_.mapping.has_b(p) : s_.mapping.has_a(p);
        if (mapped && t.node(p).label == NodeLabel::CatchClause &&
            t.node(prev).label == NodeLabel::Block) {
          return side_b ? s_.mapping.to_a(p) : p;
        }
      }
      return kNoNode;
    };
    NodeId sa = s_.source_node(op);
    NodeId sb = s_.target_node(op);
    NodeId w = sa != kNoNode ? check(a_, sa, false) : kNoNode;
    if (w == kNoNode && sb != kNoNode) w = check(b_, sb, true);
    if (w == kNoNode) return std::nullopt;
    return source_witness(w);
  }

  // First event node satisfying `pred`, as a witness on its own side.
  std::optional<Witness> event_witness(
      const std::vector<Event>& evs,
      const std::function<bool(const SyntaxTree&, NodeId)>& pred) const {
    for (const Event& e : evs) {
      if (e.a != kNoNode && pred(a_, e.a)) return source_witness(e.a);
      if (e.a == kNoNode && e.b != kNoNode && pred(b_, e.b)) {
        return Witness{1, e.b};
      }
    }
    return std::nullopt;
  }

  static std::function<bool(const SyntaxTree&, NodeId)> labeled(NodeLabel l) {
    return [l](const SyntaxTree& t, NodeId n) { return t.node(n).label == l; };
  }

  bool is_log_call(const SyntaxTree& t, NodeId n) const {
    if (t.node(n).label != NodeLabel::MethodInvocation) return false;
    auto name = invoked_name(t, n);
    return name && opt_.families.is_log_method(*name);
  }

  bool changed_a(NodeId n) const {
    return !s_.mapping.has_a(n) || updated_a_[n] || moved_a_[n];
  }
  bool changed_b(NodeId n) const {
    NodeId a = s_.mapping.to_a(n);
    return a == kNoNode || changed_a(a);
  }

  // Block whose parent is untouched and whose children all sit unchanged
  // inside it, apart from the move across the new or removed braces.
  bool style_block(const EditOp& op) const {
    if (op.kind == EditKind::Insert) {
      if (b_.node(op.node).label != NodeLabel::Block) return false;
      NodeId parent = b_.node(op.node).parent;
      if (parent == kNoNode || changed_b(parent)) return false;
      NodeId parent_a = s_.mapping.to_a(parent);
      const auto& kids = b_.node(op.node).children;
      if (kids.empty()) return false;
      for (NodeId c : kids) {
        NodeId ca = s_.mapping.to_a(c);
        if (ca == kNoNode || updated_a_[ca]) return false;
        if (moved_a_[ca] && a_.node(ca).parent != parent_a) return false;
      }
      return true;
    }
    if (op.kind == EditKind::Delete) {
      if (a_.node(op.node).label != NodeLabel::Block) return false;
      NodeId parent = a_.node(op.node).parent;
      if (parent == kNoNode || changed_a(parent)) return false;
      NodeId parent_b = s_.mapping.to_b(parent);
      const auto& kids = a_.node(op.node).children;
      if (kids.empty()) return false;
      for (NodeId c : kids) {
        NodeId cb = s_.mapping.to_b(c);
        if (cb == kNoNode || updated_a_[c]) return false;
        if (moved_a_[c] && b_.node(cb).parent != parent_b) return false;
      }
      return true;
    }
    return false;
  }

  void evaluate_op_rules() {
    static const std::set<std::string_view> kAccess = {"private", "public",
                                                       "protected", "static"};
    for (std::size_t i = 0; i < s_.ops.size(); ++i) {
      const EditOp& op = s_.ops[i];
      std::vector<Event> evs = events(op);
      auto any = [&](const std::function<bool(const Event&)>& pred) {
        return std::any_of(evs.begin(), evs.end(), pred);
      };
      auto fire = [&](AdaptationType t) { emit(t, {i}); };
      bool is_update = op.kind == EditKind::Update;
      const TreeNode* ua = is_update ? &a_.node(op.node) : nullptr;
      const TreeNode* ub = is_update ? &b_.node(op.target) : nullptr;

      if (any([&](const Event& e) {
            return e.kind == EditKind::Insert && label(e) == NodeLabel::IfStatement;
          })) {
        fire(AdaptationType::AddConditional);
      }
      if (any([&](const Event& e) {
            return e.kind == EditKind::Insert && label(e) == NodeLabel::Modifier &&
                   b_.node(e.b).value == "final";
          })) {
        fire(AdaptationType::InsertFinalModifier);
      }
      if (any([&](const Event& e) {
            if (e.kind != EditKind::Insert ||
                !label_is_a(label(e), NodeLabel::VariableDeclaration)) {
              return false;
            }
            auto v = declared_name(b_, e.b);
            return v && so_.uses_var(*v) && !so_.defines(*v);
          })) {
        fire(AdaptationType::DeclareUndeclaredVariable);
      }
      if (any([&](const Event& e) {
            return (e.kind == EditKind::Insert || e.kind == EditKind::Delete) &&
                   label(e) == NodeLabel::TryStatement;
          })) {
        fire(AdaptationType::InsertDeleteTryCatch);
      }
      if (any([&](const Event& e) {
            if (!label_is_a(label(e), NodeLabel::Type)) return false;
            if (!event_parent_is(e, NodeLabel::MethodDeclaration)) return false;
            auto vs = values(e);
            return std::any_of(vs.begin(), vs.end(), is_exception_type);
          })) {
        fire(AdaptationType::InsertDeleteThrown);
      }
      if (is_update && ua->label == NodeLabel::SimpleType &&
          ub->label == NodeLabel::SimpleType && is_exception_type(ua->value) &&
          is_exception_type(ub->value)) {
        fire(AdaptationType::UpdateExceptionType);
      }
      if (auto w = mapped_catch_body(op)) {
        emit_at(AdaptationType::ChangeCatchBlock, i, *w);
      }
      if (auto w = mapped_ancestor(op, labeled(NodeLabel::FinallyBlock))) {
        emit_at(AdaptationType::ChangeFinallyBlock, i, *w);
      }
      if (auto w = mapped_ancestor(op, labeled(NodeLabel::MethodInvocation))) {
        emit_at(AdaptationType::ChangeMethodCall, i, *w);
      }
      if (is_update && ua->label == NodeLabel::Literal &&
          ub->label == NodeLabel::Literal) {
        fire(AdaptationType::UpdateConstant);
      }
      if (auto w = mapped_ancestor(op, [](const SyntaxTree& t, NodeId n) {
            NodeLabel l = t.node(n).label;
            return l == NodeLabel::IfCondition || l == NodeLabel::LoopCondition ||
                   l == NodeLabel::SwitchCase;
          })) {
        emit_at(AdaptationType::ChangeConditionalExpr, i, *w);
      }
      if (is_update && label_is_a(ua->label, NodeLabel::Type) &&
          label_is_a(ub->label, NodeLabel::Type)) {
        fire(AdaptationType::ChangeVariableType);
      }
      // A call switched to another method is not a rename, and neither is a
      // name swapped for one the counterpart still uses.
      if (is_update && ua->label == NodeLabel::Name && !is_call_name(a_, op.node) &&
          !b_names_.contains(ua->value)) {
        fire(AdaptationType::Rename);
      }
      if (any([&](const Event& e) {
            if (label(e) != NodeLabel::Modifier) return false;
            auto vs = values(e);
            return std::any_of(vs.begin(), vs.end(), [](std::string_view v) {
              return kAccess.contains(v);
            });
          })) {
        fire(AdaptationType::ChangeAccessModifier);
      }
      auto log_call = [&](const SyntaxTree& t, NodeId n) { return is_log_call(t, n); };
      if (auto w = event_witness(evs, log_call)) {
        emit_at(AdaptationType::ChangeLogStatement, i, *w);
      } else if (auto m = mapped_ancestor(op, log_call)) {
        emit_at(AdaptationType::ChangeLogStatement, i, *m);
      }
      if (style_block(op)) fire(AdaptationType::StyleReformat);
      if (auto w = event_witness(evs, labeled(NodeLabel::Annotation))) {
        emit_at(AdaptationType::ChangeAnnotation, i, *w);
      } else if (auto m = mapped_ancestor(op, labeled(NodeLabel::Annotation))) {
        emit_at(AdaptationType::ChangeAnnotation, i, *m);
      }
      if (any([&](const Event& e) { return label(e) == NodeLabel::Comment; })) {
        fire(AdaptationType::ChangeComment);
      }
    }
  }

  // Ops whose node on the given side is an ancestor-or-self of a key node.
  std::vector<std::size_t> ops_covering(bool target_side,
                                        const std::vector<NodeId>& keys) const {
    const SyntaxTree& t = target_side ? b_ : a_;
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < s_.ops.size(); ++i) {
      NodeId n = target_side ? s_.target_node(s_.ops[i]) : s_.source_node(s_.ops[i]);
      if (n == kNoNode) continue;
      for (NodeId k : keys) {
        if (k == n || t.is_ancestor(n, k)) {
          out.push_back(i);
          break;
        }
      }
    }
    return out;
  }

  // A use replaced in place is an update; only deletions remove it.
  std::vector<std::size_t> deletes_only(std::vector<std::size_t> ops) const {
    std::erase_if(ops, [&](std::size_t i) { return s_.ops[i].kind != EditKind::Delete; });
    return ops;
  }

  void emit_each(AdaptationType type, const std::vector<std::size_t>& ops,
                 std::set<std::size_t>& seen) {
    for (std::size_t i : ops) {
      if (seen.insert(i).second) emit(type, {i});
    }
  }

  // Method name position of an invocation: the child right before Arguments.
  static bool is_call_name(const SyntaxTree& t, NodeId n) {
    NodeId p = t.node(n).parent;
    if (p == kNoNode || t.node(p).label != NodeLabel::MethodInvocation) return false;
    const auto& kids = t.node(p).children;
    std::size_t i = t.child_index(n);
    return i + 1 < kids.size() && t.node(kids[i + 1]).label == NodeLabel::Arguments;
  }

  // Method Name child of each invocation site.
  std::vector<NodeId> call_names(const SyntaxTree& t,
                                 const std::vector<NodeId>& sites) const {
    std::vector<NodeId> out;
    for (NodeId mi : sites) {
      const auto& kids = t.node(mi).children;
      for (std::size_t i = 0; i + 1 < kids.size(); ++i) {
        if (t.node(kids[i + 1]).label == NodeLabel::Arguments) out.push_back(kids[i]);
      }
    }
    return out;
  }

  void evaluate_fact_rules() {
    {
      std::set<std::size_t> seen;
      for (const auto& [e, sites] : gh_.exceptions) {
        if (so_.exception(e)) continue;
        emit_each(AdaptationType::HandleNewExceptionType, ops_covering(true, sites),
                  seen);
      }
    }
    {
      std::set<std::size_t> seen;
      auto check = [&](const FactSites& calls) {
        for (const auto& [m, sites] : calls) {
          if (!opt_.families.is_clean_method(m)) continue;
          if (so_.local_call(m) || so_.instance_call(m)) continue;
          emit_each(AdaptationType::CleanUpResources,
                    ops_covering(true, call_names(b_, sites)), seen);
        }
      };
      check(gh_.local_calls);
      check(gh_.instance_calls);
    }
    {
      std::set<std::size_t> seen;
      for (const auto& [m, sites] : gh_.instance_calls) {
        if (!so_.local_call(m)) continue;
        std::vector<NodeId> receivers;
        for (NodeId mi : sites) {
          const auto& kids = b_.node(mi).children;
          for (std::size_t i = 0; i + 2 < kids.size(); ++i) receivers.push_back(kids[i]);
        }
        emit_each(AdaptationType::SpecifyInvocationTarget,
                  ops_covering(true, receivers), seen);
      }
    }
    {
      std::set<std::size_t> seen;
      for (const auto& [v, sites] : so_.uses) {
        if (so_.defines(v) || gh_.uses_var(v)) continue;
        emit_each(AdaptationType::RemoveUndeclared,
                  deletes_only(ops_covering(false, sites)), seen);
      }
      for (const auto& [m, sites] : so_.local_calls) {
        if (gh_.local_call(m) || gh_.instance_call(m)) continue;
        emit_each(AdaptationType::RemoveUndeclared,
                  deletes_only(ops_covering(false, call_names(a_, sites))), seen);
      }
    }
  }

  bool same_position(NodeId a, NodeId b) const {
    NodeId pa = a_.node(a).parent;
    NodeId pb = b_.node(b).parent;
    return pa != kNoNode && pb != kNoNode && s_.mapping.contains(pa, pb) &&
           a_.child_index(a) == b_.child_index(b);
  }

  void evaluate_pair_rules() {
    for (std::size_t i = 0; i < s_.ops.size(); ++i) {
      const EditOp& del = s_.ops[i];
      if (del.kind != EditKind::Delete) continue;
      NodeLabel dl = a_.node(del.node).label;
      for (std::size_t j = 0; j < s_.ops.size(); ++j) {
        const EditOp& ins = s_.ops[j];
        if (ins.kind != EditKind::Insert || !same_position(del.node, ins.node)) {
          continue;
        }
        NodeLabel il = b_.node(ins.node).label;
        if (dl == NodeLabel::Literal && il == NodeLabel::Name) {
          emit(AdaptationType::ReplaceConstantWithVariable, {i, j});
        }
        if (dl == NodeLabel::Name && il == NodeLabel::Literal) {
          emit(AdaptationType::InlineField, {i, j});
        }
      }
    }
  }

  Span anchor(const SyntaxTree& from, const SyntaxTree& to, NodeId n,
              bool from_is_b) const {
    auto partner = [&](NodeId x) {
      return from_is_b ? s_.mapping.to_a(x) : s_.mapping.to_b(x);
    };
    for (NodeId cur = n; cur != kNoNode; cur = from.node(cur).parent) {
      NodeId parent = from.node(cur).parent;
      if (parent == kNoNode) break;
      const auto& kids = from.node(parent).children;
      std::size_t idx = from.child_index(cur);
      for (std::size_t k = idx; k-- > 0;) {
        NodeId p = partner(kids[k]);
        if (p != kNoNode && !to.node(p).synthetic) {
          return {to.node(p).span.end, to.node(p).span.end};
        }
      }
      for (std::size_t k = idx + 1; k < kids.size(); ++k) {
        NodeId p = partner(kids[k]);
        if (p != kNoNode && !to.node(p).synthetic) {
          return {to.node(p).span.begin, to.node(p).span.begin};
        }
      }
      NodeId pp = partner(parent);
      if (pp != kNoNode && !to.node(pp).synthetic) {
        return {to.node(pp).span.begin, to.node(pp).span.begin};
      }
    }
    return {0, 0};
  }

  static void cover(std::optional<Span>& acc, const TreeNode& n) {
    if (n.synthetic) return;
    if (!acc) {
      acc = n.span;
    } else {
      acc->begin = std::min(acc->begin, n.span.begin);
      acc->end = std::max(acc->end, n.span.end);
    }
  }

  AdaptationInstance materialize(const Found& f) const {
    AdaptationInstance inst;
    inst.type = f.type;
    inst.category = category_of(f.type);
    std::optional<Span> ex;
    std::optional<Span> cp;
    for (std::size_t i : f.ops) {
      const EditOp& op = s_.ops[i];
      inst.ops.push_back(op);
      NodeId sa = s_.source_node(op);
      NodeId sb = s_.target_node(op);
      if (sa != kNoNode) cover(ex, a_.node(sa));
      if (sb != kNoNode) cover(cp, b_.node(sb));
    }
    if (!ex) ex = anchor(b_, a_, s_.target_node(inst.ops.front()), true);
    if (!cp) cp = anchor(a_, b_, s_.source_node(inst.ops.front()), false);
    inst.example_span = *ex;
    inst.counterpart_span = *cp;
    return inst;
  }

  const EditScript& s_;
  const SyntaxTree& a_;
  const SyntaxTree& b_;
  const SemanticFacts& so_;
  const SemanticFacts& gh_;
  const ClassifyOptions& opt_;
  std::vector<bool> moved_a_;
  std::vector<bool> updated_a_;
  std::set<std::string, std::less<>> b_names_;
  std::vector<Found> found_;
  std::map<std::pair<AdaptationType, Witness>, std::size_t> witnessed_;
};

}  // namespace

std::string_view adaptation_type_name(AdaptationType type) {
  if (type == AdaptationType::Unclassified) return "Unclassified";
  return kTypes.at(static_cast<std::size_t>(type)).name;
}

std::string_view adaptation_type_description(AdaptationType type) {
  if (type == AdaptationType::Unclassified) return "Edit outside the taxonomy";
  return kTypes.at(static_cast<std::size_t>(type)).description;
}

std::optional<AdaptationType> adaptation_type_from_name(std::string_view name) {
  for (const TypeInfo& t : kTypes) {
    if (t.name == name) return t.type;
  }
  if (name == "Unclassified") return AdaptationType::Unclassified;
  return std::nullopt;
}

std::span<const AdaptationType> all_adaptation_types() { return kAllTypes; }

Category category_of(AdaptationType type) {
  if (type == AdaptationType::Unclassified) return Category::Miscellaneous;
  return kTypes.at(static_cast<std::size_t>(type)).category;
}

std::string_view category_name(Category category) {
  return kCategoryNames.at(static_cast<std::size_t>(category));
}

std::optional<Category> category_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kCategoryNames.size(); ++i) {
    if (kCategoryNames[i] == name) return static_cast<Category>(i);
  }
  return std::nullopt;
}

std::string_view category_color(Category category) {
  return kCategoryColors.at(static_cast<std::size_t>(category));
}

std::vector<AdaptationInstance> classify(const EditScript& pruned,
                                         const SemanticFacts& example_facts,
                                         const SemanticFacts& counterpart_facts,
                                         const ClassifyOptions& options) {
  if (pruned.ops.empty()) return {};
  return Classifier(pruned, example_facts, counterpart_facts, options).run();
}

std::vector<AdaptationInstance> classify(const EditScript& pruned,
                                         const ClassifyOptions& options) {
  SemanticFacts so = collect_facts(*pruned.source);
  SemanticFacts gh = collect_facts(*pruned.target);
  return classify(pruned, so, gh, options);
}

std::set<AdaptationType> distinct_types(
    const std::vector<std::vector<AdaptationInstance>>& per_counterpart) {
  std::set<AdaptationType> out;
  for (const auto& list : per_counterpart) {
    for (const auto& inst : list) out.insert(inst.type);
  }
  return out;
}

std::string adaptation_report(const EditScript& pruned,
                              const std::vector<AdaptationInstance>& instances) {
  nlohmann::json list = nlohmann::json::array();
  for (const AdaptationInstance& inst : instances) {
    nlohmann::json rec;
    rec["type"] = adaptation_type_name(inst.type);
    rec["description"] = adaptation_type_description(inst.type);
    rec["category"] = category_name(inst.category);
    rec["color"] = category_color(inst.category);
    rec["unclassified"] = inst.type == AdaptationType::Unclassified;
    rec["example_span"] = {inst.example_span.begin, inst.example_span.end};
    rec["counterpart_span"] = {inst.counterpart_span.begin,
                               inst.counterpart_span.end};
    nlohmann::json ops = nlohmann::json::array();
    for (const EditOp& op : inst.ops) {
      nlohmann::json o;
      o["kind"] = edit_kind_name(op.kind);
      const SyntaxTree& side =
          op.kind == EditKind::Insert ? *pruned.target : *pruned.source;
      const TreeNode& n = side.node(op.node);
      o["label"] = label_name(n.label);
      if (!n.value.empty()) o["value"] = n.value;
      if (op.kind == EditKind::Update) {
        o["new_value"] = pruned.target->node(op.target).value;
      }
      ops.push_back(std::move(o));
    }
    rec["ops"] = std::move(ops);
    list.push_back(std::move(rec));
  }
  nlohmann::json doc;
  doc["instances"] = std::move(list);
  return doc.dump(2);
}

}  // namespace exstack
