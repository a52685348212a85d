#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "exstack/semantics.hpp"
#include "exstack/tree_diff.hpp"

namespace exstack {

#define EXSTACK_ADAPTATION_TYPES(X)                                           \
  X(AddConditional, CodeHardening, "Add a conditional")                       \
  X(InsertFinalModifier, CodeHardening, "Insert a final modifier")            \
  X(HandleNewExceptionType, CodeHardening, "Handle a new exception type")     \
  X(CleanUpResources, CodeHardening, "Clean up unmanaged resources")          \
  X(DeclareUndeclaredVariable, ResolveCompilationErrors,                      \
    "Declare an undeclared variable")                                         \
  X(SpecifyInvocationTarget, ResolveCompilationErrors,                        \
    "Specify a target of method invocation")                                  \
  X(RemoveUndeclared, ResolveCompilationErrors,                               \
    "Remove undeclared variables or local method calls")                      \
  X(InsertDeleteTryCatch, ExceptionHandling, "Insert/delete a try-catch block") \
  X(InsertDeleteThrown, ExceptionHandling,                                    \
    "Insert/delete a thrown exception in a method header")                    \
  X(UpdateExceptionType, ExceptionHandling, "Update the exception type")      \
  X(ChangeCatchBlock, ExceptionHandling, "Change statements in a catch block") \
  X(ChangeFinallyBlock, ExceptionHandling,                                    \
    "Change statements in a finally block")                                   \
  X(ChangeMethodCall, LogicCustomization, "Change a method call")             \
  X(UpdateConstant, LogicCustomization, "Update a constant value")            \
  X(ChangeConditionalExpr, LogicCustomization,                                \
    "Change a conditional expression")                                        \
  X(ChangeVariableType, LogicCustomization, "Change the type of a variable")  \
  X(Rename, Refactoring, "Rename a variable/field/method")                    \
  X(ReplaceConstantWithVariable, Refactoring,                                 \
    "Replace hardcoded constant values with variables")                       \
  X(InlineField, Refactoring, "Inline a field")                               \
  X(ChangeAccessModifier, Miscellaneous, "Change access modifiers")           \
  X(ChangeLogStatement, Miscellaneous, "Change a log/print statement")        \
  X(StyleReformat, Miscellaneous, "Style reformatting")                       \
  X(ChangeAnnotation, Miscellaneous, "Change Java annotations")               \
  X(ChangeComment, Miscellaneous, "Change code comments")

enum class AdaptationType : std::uint8_t {
#define EXSTACK_TYPE_ENTRY(name, category, text) name,
  EXSTACK_ADAPTATION_TYPES(EXSTACK_TYPE_ENTRY)
#undef EXSTACK_TYPE_ENTRY
  Unclassified,
};

inline constexpr std::size_t kAdaptationTypeCount = 24;

enum class Category : std::uint8_t {
  CodeHardening,
  ResolveCompilationErrors,
  ExceptionHandling,
  LogicCustomization,
  Refactoring,
  Miscellaneous,
};

inline constexpr std::size_t kCategoryCount = 6;

[[nodiscard]] std::string_view adaptation_type_name(AdaptationType type);
[[nodiscard]] std::string_view adaptation_type_description(AdaptationType type);
[[nodiscard]] std::optional<AdaptationType> adaptation_type_from_name(
    std::string_view name);
/// The 24 taxonomy members in table order (Unclassified excluded).
[[nodiscard]] std::span<const AdaptationType> all_adaptation_types();

[[nodiscard]] Category category_of(AdaptationType type);
[[nodiscard]] std::string_view category_name(Category category);
[[nodiscard]] std::optional<Category> category_from_name(std::string_view name);
/// Background color used by the template view, as "#rrggbb".
[[nodiscard]] std::string_view category_color(Category category);

struct AdaptationInstance {
  AdaptationType type = AdaptationType::Unclassified;
  Category category = Category::Miscellaneous;
  /// Ops of the pruned script that satisfied the rule, in script order.
  std::vector<EditOp> ops;
  Span example_span;
  Span counterpart_span;
};

struct ClassifyOptions {
  MethodFamilies families = MethodFamilies::defaults();
  /// Keep only the first instance (in table order) claiming each op.
  bool single_count = false;
  /// Emit Unclassified instances for ops no rule claims.
  bool report_unclassified = true;
};

/// Evaluates every rule over a pruned script. Instances are ordered by the
/// position of their first op in the script, then by table order.
[[nodiscard]] std::vector<AdaptationInstance> classify(
    const EditScript& pruned, const SemanticFacts& example_facts,
    const SemanticFacts& counterpart_facts, const ClassifyOptions& options = {});

/// Convenience wrapper: collects facts from the script's trees.
[[nodiscard]] std::vector<AdaptationInstance> classify(
    const EditScript& pruned, const ClassifyOptions& options = {});

[[nodiscard]] std::set<AdaptationType> distinct_types(
    const std::vector<std::vector<AdaptationInstance>>& per_counterpart);

/// JSON document with one record per instance.
[[nodiscard]] std::string adaptation_report(
    const EditScript& pruned, const std::vector<AdaptationInstance>& instances);

}  // namespace exstack
