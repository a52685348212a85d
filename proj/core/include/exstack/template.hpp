#pragma once

#include <cstdint>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "exstack/classifier.hpp"
#include "exstack/tree_diff.hpp"

namespace exstack {

struct CounterpartInfo {
  std::string id;
  std::string repo;
  std::string path;
  std::string url;
  std::int64_t stars = 0;
  std::int64_t contributors = 0;
  std::int64_t watches = 0;
};

/// One counterpart's pruned diff against the example and its classification.
struct CounterpartDiff {
  CounterpartInfo info;
  EditScript script;
  std::vector<AdaptationInstance> instances;
};

/// Diffs, prunes and classifies `counterpart` against `example`.
[[nodiscard]] CounterpartDiff make_counterpart_diff(
    CounterpartInfo info, std::shared_ptr<const SyntaxTree> example,
    std::shared_ptr<const SyntaxTree> counterpart,
    const ClassifyOptions& options = {});

struct ChangeRegion {
  Span span;
  std::string replacement;
  std::size_t counterpart = 0;
  /// Where `replacement` comes from in the counterpart text.
  Span target_span;
  Category category = Category::Miscellaneous;
  std::set<Category> categories;
  /// Indices into the counterpart's pruned op list.
  std::vector<std::size_t> ops;
};

struct Option {
  std::string content;
  std::size_t frequency = 0;
  Category category = Category::Miscellaneous;
  std::set<Category> categories;
  /// Counterpart indices, ascending.
  std::vector<std::size_t> contributors;
  bool original = false;
  std::set<std::string> defines;
  std::set<std::string> uses;
};

struct HotSpot {
  Span span;
  std::vector<Option> options;
};

struct Segment {
  enum class Kind { Text, HotSpot };
  Kind kind = Kind::Text;
  std::string text;
  std::size_t hotspot = 0;
};

/// Option `from` uses `variable`, which option `to` of the same counterpart
/// defines and the example does not.
struct DefUseEdge {
  std::size_t from_hotspot = 0;
  std::size_t from_option = 0;
  std::size_t to_hotspot = 0;
  std::size_t to_option = 0;
  std::string variable;
  std::size_t counterpart = 0;

  friend bool operator==(const DefUseEdge&, const DefUseEdge&) = default;
};

struct LiftedTemplate {
  std::string example_id;
  std::string example_text;
  std::vector<Segment> segments;
  std::vector<HotSpot> hotspots;
  std::vector<DefUseEdge> edges;
  std::vector<CounterpartInfo> counterparts;
  /// Per-counterpart regions before grouping; not serialized.
  std::vector<std::vector<ChangeRegion>> regions;
};

class EmptyDiffSet : public std::invalid_argument {
 public:
  EmptyDiffSet() : std::invalid_argument("no counterpart diffs to lift") {}
};

class ConflictingSelection : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class EmptyHistory : public std::logic_error {
 public:
  EmptyHistory() : std::logic_error("nothing to undo") {}
};

class InvalidSelection : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Change regions of one counterpart: each op's example-side and
/// counterpart-side extent widened to the surrounding unchanged tokens,
/// merged when they share a gap, then trimmed of common whitespace.
[[nodiscard]] std::vector<ChangeRegion> change_regions(
    const CounterpartDiff& diff, std::size_t counterpart_index);

/// `example` must carry its source text.
[[nodiscard]] LiftedTemplate lift_template(const SyntaxTree& example,
                                           const std::vector<CounterpartDiff>& diffs,
                                           std::string example_id = {});

/// Recomputes option def/use sets and the edge list from the diffs the
/// template was lifted from.
void build_defuse_edges(LiftedTemplate& tmpl, const SyntaxTree& example,
                        const std::vector<CounterpartDiff>& diffs);

/// Text of `tmpl.example_text` with the given regions substituted.
[[nodiscard]] std::string apply_regions(std::string_view text,
                                        const std::vector<ChangeRegion>& regions);

class SelectionState {
 public:
  SelectionState() = default;
  explicit SelectionState(const LiftedTemplate& tmpl);

  /// Option index per hot spot; 0 is the original text.
  [[nodiscard]] const std::vector<std::size_t>& chosen() const { return chosen_; }
  /// Hot spots whose choice the user made (as opposed to auto-selection).
  [[nodiscard]] const std::vector<bool>& explicit_choices() const {
    return explicit_;
  }
  [[nodiscard]] const std::set<std::size_t>& active_counterparts() const {
    return active_;
  }
  [[nodiscard]] bool has_history() const { return previous_ != nullptr; }
  [[nodiscard]] std::size_t history_depth() const;

  /// Equality of the visible state (history excluded).
  friend bool operator==(const SelectionState& x, const SelectionState& y) {
    return x.chosen_ == y.chosen_ && x.explicit_ == y.explicit_ &&
           x.active_ == y.active_;
  }

 private:
  friend SelectionState select_option(const LiftedTemplate&, const SelectionState&,
                                      std::size_t, std::size_t);
  friend SelectionState undo(const SelectionState&);

  std::vector<std::size_t> chosen_;
  std::vector<bool> explicit_;
  std::set<std::size_t> active_;
  std::shared_ptr<const SelectionState> previous_;
};

/// Chooses `option` at `hotspot`, auto-chooses options it depends on through
/// def-use edges and recomputes the active counterparts. Throws
/// ConflictingSelection, leaving `state` untouched, when that would override
/// an explicit choice or leave a chosen option's variable undefined.
[[nodiscard]] SelectionState select_option(const LiftedTemplate& tmpl,
                                           const SelectionState& state,
                                           std::size_t hotspot, std::size_t option);
[[nodiscard]] SelectionState undo(const SelectionState& state);
[[nodiscard]] std::string render(const LiftedTemplate& tmpl,
                                 const SelectionState& state);

/// Contributors of an option that are still active.
[[nodiscard]] std::size_t active_frequency(const LiftedTemplate& tmpl,
                                           const SelectionState& state,
                                           std::size_t hotspot, std::size_t option);

struct TemplateStats {
  std::size_t lines = 0;
  std::size_t hotspot_count = 0;
  double mean_options = 0.0;
};

[[nodiscard]] TemplateStats template_stats(const LiftedTemplate& tmpl);

inline constexpr int kTemplateFormatVersion = 1;

[[nodiscard]] std::string template_to_json(const LiftedTemplate& tmpl);
/// Throws std::invalid_argument on malformed or unsupported documents.
[[nodiscard]] LiftedTemplate template_from_json(std::string_view text);

}  // namespace exstack
