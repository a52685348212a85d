#pragma once

#include <memory>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "exstack/template.hpp"
#include "exstack/tree_diff.hpp"

namespace exstack::testkit {

/// Copy of `a` with random deletions, duplications, value updates, sibling
/// swaps, wrappers and fresh leaves.
[[nodiscard]] SyntaxTree mutate_tree(const SyntaxTree& a, std::mt19937& rng, double p);

/// Prune postconditions; empty when they hold, else the first violation.
[[nodiscard]] std::string prune_violation(const EditScript& full, const EditScript& pruned);

/// A template together with the inputs it was lifted from.
struct LiftedCase {
  std::shared_ptr<const SyntaxTree> example;
  std::vector<CounterpartDiff> diffs;
  LiftedTemplate tmpl;
};

/// Counterpart i gets stars 10 * (i + 1).
[[nodiscard]] LiftedCase lift_texts(std::string_view example,
                                    const std::vector<std::string>& counterparts);

/// One single-counterpart template per fixture pair.
[[nodiscard]] const std::vector<LiftedCase>& fixture_templates();

/// Counterparts contributing to every non-original chosen option.
[[nodiscard]] std::set<std::size_t> intersection_oracle(const LiftedTemplate& t,
                                                        const SelectionState& s);

/// Names a chosen option uses that the example lacks and that another hot
/// spot option of a shared counterpart declares.
[[nodiscard]] std::set<std::string> introduced_variables(const LiftedCase& c,
                                                         const SelectionState& s);

/// Reconstruction, coverage and frequency conservation; empty when all hold.
[[nodiscard]] std::string template_violation(const LiftedCase& c);

struct DriverReport {
  int sequences = 0;
  int steps = 0;
  int conflicts = 0;
  /// Introduced variables checked against the rendered code.
  int checked_variables = 0;
  int violations = 0;
  std::string first_violation;
};

/// Random select/undo sequences over `pool`, checking filter correctness,
/// per-option frequencies, undo restoration and that every introduced
/// variable is declared in the rendered code.
[[nodiscard]] DriverReport run_selection_driver(const std::vector<const LiftedCase*>& pool,
                                                int min_sequences, std::uint32_t seed);

}  // namespace exstack::testkit
