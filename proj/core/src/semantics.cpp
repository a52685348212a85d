#include "exstack/semantics.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace exstack {

namespace {

enum class NameRole { Use, Declaration, MethodName, TypeReference, Other };

bool inside(const SyntaxTree& tree, NodeId id, NodeLabel label) {
  for (NodeId p = tree.node(id).parent; p != kNoNode; p = tree.node(p).parent) {
    if (tree.node(p).label == label) return true;
  }
  return false;
}

NameRole receiver_role(const TreeNode& name) {
  return looks_like_type_name(name.value) ? NameRole::TypeReference
                                          : NameRole::Use;
}

NameRole name_role(const SyntaxTree& tree, NodeId id) {
  const TreeNode& n = tree.node(id);
  if (n.parent == kNoNode) return NameRole::Other;
  const TreeNode& parent = tree.node(n.parent);
  const auto& siblings = parent.children;
  std::size_t index = tree.child_index(id);
  if (inside(tree, id, NodeLabel::Annotation) ||
      parent.label == NodeLabel::Annotation) {
    return NameRole::Other;
  }
  switch (parent.label) {
    case NodeLabel::VariableDeclarationFragment:
      return index == 0 ? NameRole::Declaration : NameRole::Use;
    case NodeLabel::SingleVariableDeclaration:
      return NameRole::Declaration;
    case NodeLabel::MethodInvocation:
      if (index + 1 < siblings.size() &&
          tree.node(siblings[index + 1]).label == NodeLabel::Arguments) {
        return NameRole::MethodName;
      }
      return receiver_role(n);
    case NodeLabel::FieldAccess:
      if (index == 0) return receiver_role(n);
      return tree.node(siblings[0]).label == NodeLabel::ThisExpression
                 ? NameRole::Use
                 : NameRole::Other;
    case NodeLabel::MethodReference:
      return index == 0 ? receiver_role(n) : NameRole::Other;
    case NodeLabel::LabeledStatement:
      return index == 0 ? NameRole::Other : NameRole::Use;
    case NodeLabel::EnumConstant:
      return index == 0 ? NameRole::Declaration : NameRole::Use;
    case NodeLabel::MethodDeclaration:
    case NodeLabel::TypeDeclaration:
    case NodeLabel::EnumDeclaration:
    case NodeLabel::ImportDeclaration:
    case NodeLabel::PackageDeclaration:
    case NodeLabel::BreakStatement:
    case NodeLabel::ContinueStatement:
      return NameRole::Other;
    default:
      return NameRole::Use;
  }
}

void add(FactSites& sites, const std::string& name, NodeId id) {
  if (name.empty()) return;
  sites[name].push_back(id);
}

void add_exception_types(const SyntaxTree& tree, NodeId type, FactSites& out,
                         const std::optional<Span>& within) {
  const TreeNode& t = tree.node(type);
  if (t.label == NodeLabel::UnionType) {
    for (NodeId c : t.children) add_exception_types(tree, c, out, within);
    return;
  }
  if (!label_is_a(t.label, NodeLabel::Type)) return;
  if (within && !within->contains(t.span)) return;
  add(out, t.value, type);
}

}  // namespace

std::set<std::string> fact_names(const FactSites& sites) {
  std::set<std::string> out;
  for (const auto& [name, nodes] : sites) out.insert(name);
  return out;
}

bool is_exception_type(std::string_view name) {
  return name.find("Exception") != std::string_view::npos;
}

bool looks_like_type_name(std::string_view name) {
  if (name.empty() || !std::isupper(static_cast<unsigned char>(name[0]))) {
    return false;
  }
  for (char c : name) {
    if (std::islower(static_cast<unsigned char>(c))) return true;
  }
  return false;
}

std::optional<std::string> declared_name(const SyntaxTree& tree, NodeId id) {
  const TreeNode& n = tree.node(id);
  if (n.label == NodeLabel::VariableDeclarationFragment) {
    if (!n.children.empty() && tree.node(n.children[0]).label == NodeLabel::Name) {
      return tree.node(n.children[0]).value;
    }
    return std::nullopt;
  }
  if (n.label == NodeLabel::SingleVariableDeclaration) {
    for (auto it = n.children.rbegin(); it != n.children.rend(); ++it) {
      if (tree.node(*it).label == NodeLabel::Name) return tree.node(*it).value;
    }
    return std::nullopt;
  }
  if (n.label == NodeLabel::VariableDeclarationStatement ||
      n.label == NodeLabel::FieldDeclaration) {
    std::optional<std::string> found;
    for (NodeId c : n.children) {
      if (tree.node(c).label != NodeLabel::VariableDeclarationFragment) continue;
      if (found) return std::nullopt;
      found = declared_name(tree, c);
    }
    return found;
  }
  return std::nullopt;
}

std::optional<std::string> invoked_name(const SyntaxTree& tree, NodeId id) {
  const TreeNode& n = tree.node(id);
  if (n.label != NodeLabel::MethodInvocation) return std::nullopt;
  for (std::size_t i = 0; i + 1 < n.children.size(); ++i) {
    if (tree.node(n.children[i]).label == NodeLabel::Name &&
        tree.node(n.children[i + 1]).label == NodeLabel::Arguments) {
      return tree.node(n.children[i]).value;
    }
  }
  return std::nullopt;
}

bool has_receiver(const SyntaxTree& tree, NodeId id) {
  const TreeNode& n = tree.node(id);
  return n.label == NodeLabel::MethodInvocation && n.children.size() >= 3;
}

SemanticFacts collect_facts(const SyntaxTree& tree, std::optional<Span> within) {
  SemanticFacts facts;
  if (tree.empty()) return facts;
  auto in_scope = [&](NodeId id) {
    const TreeNode& n = tree.node(id);
    return !n.synthetic && (!within || within->contains(n.span));
  };
  for (NodeId id : tree.preorder()) {
    const TreeNode& n = tree.node(id);
    switch (n.label) {
      case NodeLabel::Name: {
        if (!in_scope(id)) break;
        NameRole role = name_role(tree, id);
        if (role == NameRole::Declaration) add(facts.defs, n.value, id);
        if (role == NameRole::Use) add(facts.uses, n.value, id);
        break;
      }
      case NodeLabel::MethodInvocation: {
        if (!in_scope(id)) break;
        auto name = invoked_name(tree, id);
        if (!name || *name == "this" || *name == "super") break;
        add(has_receiver(tree, id) ? facts.instance_calls : facts.local_calls,
            *name, id);
        break;
      }
      case NodeLabel::CatchClause: {
        for (NodeId c : n.children) {
          if (tree.node(c).label != NodeLabel::SingleVariableDeclaration) continue;
          for (NodeId t : tree.node(c).children) {
            add_exception_types(tree, t, facts.exceptions, within);
          }
        }
        break;
      }
      case NodeLabel::MethodDeclaration: {
        bool after_name = false;
        for (NodeId c : n.children) {
          const TreeNode& child = tree.node(c);
          if (child.label == NodeLabel::Name) after_name = true;
          if (after_name && label_is_a(child.label, NodeLabel::Type)) {
            add_exception_types(tree, c, facts.exceptions, within);
          }
        }
        break;
      }
      default:
        break;
    }
  }
  return facts;
}

MethodFamilies MethodFamilies::defaults() {
  MethodFamilies f;
  f.log_methods = {"log", "println", "print", "error", "warn", "info", "debug"};
  f.clean_methods = {"close", "recycle", "dispose", "release", "shutdown", "flush"};
  return f;
}

MethodFamilies MethodFamilies::from_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("method families: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("method families: expected an object");
  MethodFamilies f = defaults();
  auto read = [&](const char* key, std::set<std::string, std::less<>>& out) {
    if (!doc.contains(key)) return;
    const auto& list = doc.at(key);
    if (!list.is_array() || list.empty()) {
      throw ConfigError(std::string("method families: ") + key +
                        " must be a non-empty array");
    }
    out.clear();
    for (const auto& item : list) {
      if (!item.is_string()) {
        throw ConfigError(std::string("method families: ") + key +
                          " entries must be strings");
      }
      out.insert(item.get<std::string>());
    }
  };
  read("log_methods", f.log_methods);
  read("clean_methods", f.clean_methods);
  return f;
}

MethodFamilies MethodFamilies::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return from_json(ss.str());
}

}  // namespace exstack
