#pragma once

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "exstack/syntax_tree.hpp"

namespace exstack {

/// Name -> nodes where the fact was observed, in preorder.
using FactSites = std::map<std::string, std::vector<NodeId>, std::less<>>;

struct SemanticFacts {
  FactSites defs;
  FactSites uses;
  FactSites local_calls;
  FactSites instance_calls;
  FactSites exceptions;

  [[nodiscard]] bool defines(std::string_view v) const { return defs.contains(v); }
  [[nodiscard]] bool uses_var(std::string_view v) const { return uses.contains(v); }
  [[nodiscard]] bool local_call(std::string_view m) const {
    return local_calls.contains(m);
  }
  [[nodiscard]] bool instance_call(std::string_view m) const {
    return instance_calls.contains(m);
  }
  [[nodiscard]] bool exception(std::string_view e) const {
    return exceptions.contains(e);
  }
};

[[nodiscard]] std::set<std::string> fact_names(const FactSites& sites);

/// Walks the whole tree, or only nodes whose span lies inside `within`.
[[nodiscard]] SemanticFacts collect_facts(const SyntaxTree& tree,
                                          std::optional<Span> within = {});

/// Substring test for "Exception".
[[nodiscard]] bool is_exception_type(std::string_view name);

/// Heuristic for receivers such as `System` or `ManagementFactory`: an
/// upper-case initial followed by at least one lower-case letter.
[[nodiscard]] bool looks_like_type_name(std::string_view name);

/// Declared variable name of a VariableDeclaration-family node, or of a
/// VariableDeclarationStatement / FieldDeclaration with one fragment.
[[nodiscard]] std::optional<std::string> declared_name(const SyntaxTree& tree,
                                                       NodeId id);

/// Invoked method name of a MethodInvocation.
[[nodiscard]] std::optional<std::string> invoked_name(const SyntaxTree& tree,
                                                      NodeId id);

/// True when the MethodInvocation has a receiver expression.
[[nodiscard]] bool has_receiver(const SyntaxTree& tree, NodeId id);

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct MethodFamilies {
  std::set<std::string, std::less<>> log_methods;
  std::set<std::string, std::less<>> clean_methods;

  [[nodiscard]] static MethodFamilies defaults();
  /// JSON object with keys `log_methods` and `clean_methods` (string arrays).
  /// Missing keys keep the defaults; empty lists are rejected.
  [[nodiscard]] static MethodFamilies from_json(std::string_view text);
  [[nodiscard]] static MethodFamilies load(const std::string& path);

  [[nodiscard]] bool is_log_method(std::string_view name) const {
    return log_methods.contains(name);
  }
  [[nodiscard]] bool is_clean_method(std::string_view name) const {
    return clean_methods.contains(name);
  }
};

}  // namespace exstack
