#pragma once

#include <chrono>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "exstack/classifier.hpp"
#include "exstack/syntax_tree.hpp"
#include "exstack/template.hpp"
#include "exstack/tokenizer.hpp"

namespace exstack {

using Timestamp = std::chrono::sys_seconds;

/// Accepts "YYYY-MM-DD", optionally followed by "THH:MM[:SS[.fff]]" and a
/// "Z" or "+HH:MM" / "-HH:MM" offset. A missing offset means UTC.
[[nodiscard]] std::optional<Timestamp> parse_timestamp(std::string_view text);
/// "YYYY-MM-DDTHH:MM:SSZ".
[[nodiscard]] std::string format_timestamp(Timestamp t);

class CorpusError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Role { Example, Counterpart };

struct CorpusRecord {
  std::string id;
  Role role = Role::Example;
  /// Question post the example belongs to.
  std::optional<std::int64_t> post_id;
  std::optional<std::int64_t> answer_id;
  std::optional<std::int64_t> vote_score;
  std::string repo;
  std::string path;
  std::string url;
  std::optional<Timestamp> created_at;
  std::int64_t stars = 0;
  std::int64_t contributors = 0;
  std::int64_t watches = 0;
};

/// One JSON object per line; blank lines are skipped. Throws CorpusError with
/// the line number on malformed records.
[[nodiscard]] std::vector<CorpusRecord> read_metadata(std::istream& in);
void write_metadata(std::ostream& out, const std::vector<CorpusRecord>& records);

struct SourceFile {
  std::string id;
  std::string text;
};

/// A corpus directory: `metadata.jsonl` plus `snippets/<id>.java`.
struct Corpus {
  std::vector<CorpusRecord> records;
  std::map<std::string, std::string, std::less<>> texts;

  [[nodiscard]] const CorpusRecord* find(std::string_view id) const;
  [[nodiscard]] std::vector<SourceFile> files(Role role) const;
};

[[nodiscard]] Corpus load_corpus(const std::string& dir);
void save_corpus(const Corpus& corpus, const std::string& dir);

struct DedupResult {
  /// First file of each identical-content group, in input order.
  std::vector<SourceFile> kept;
  /// Removed id -> id of the kept file with the same content.
  std::map<std::string, std::string> duplicate_of;
};

[[nodiscard]] DedupResult dedup_files(std::vector<SourceFile> files);

/// |multiset intersection| / max(|a|, |b|) over countable tokens; 0 when both
/// are empty.
[[nodiscard]] double clone_similarity(const TokenStream& a, const TokenStream& b);

struct CloneOptions {
  double threshold = 0.7;
  std::size_t min_tokens = 50;
  /// Compare every example with every method instead of using the index.
  bool brute_force = false;
  unsigned threads = 1;
};

/// A method of a counterpart file considered for clone detection.
struct MethodFragment {
  std::string file_id;
  std::string name;
  Span span;
};

/// Every non-synthetic MethodDeclaration of `text`. Throws ParseError.
[[nodiscard]] std::vector<MethodFragment> extract_methods(const std::string& file_id,
                                                          std::string_view text);

struct ClonePair {
  std::string example_id;
  std::string counterpart_id;
  std::string method;
  /// Extent of the matched method in the counterpart file.
  Span counterpart_span;
  double similarity = 0.0;
  std::optional<Timestamp> example_time;
  std::optional<Timestamp> counterpart_time;
  bool attributed = false;

  friend bool operator==(const ClonePair&, const ClonePair&) = default;
};

struct CloneResult {
  /// Sorted by example id, counterpart id, then span.
  std::vector<ClonePair> pairs;
  /// Counterpart files that failed to parse, with the error.
  std::vector<std::pair<std::string, std::string>> skipped;
};

[[nodiscard]] CloneResult detect_clones(const std::vector<SourceFile>& examples,
                                        const std::vector<SourceFile>& files,
                                        const CloneOptions& options = {});

/// Fills in example_time / counterpart_time from the corpus records.
void attach_timestamps(std::vector<ClonePair>& pairs, const Corpus& corpus);

struct MissingTimestamp {
  std::string example_id;
  std::string counterpart_id;
  bool example_missing = false;
  bool counterpart_missing = false;
};

struct TimestampFilterResult {
  std::vector<ClonePair> kept;
  std::vector<MissingTimestamp> missing;
};

/// Keeps pairs whose counterpart is strictly newer than the example.
[[nodiscard]] TimestampFilterResult filter_by_timestamp(std::vector<ClonePair> pairs);

struct PostIndex {
  /// Answer post id -> examples extracted from it.
  std::map<std::int64_t, std::vector<std::string>> examples_by_answer;
  /// Question post id -> its indexed answer ids.
  std::map<std::int64_t, std::set<std::int64_t>> answers_by_question;

  void add(const std::string& example_id, std::int64_t question_id,
           std::int64_t answer_id);
  [[nodiscard]] static PostIndex from_corpus(const Corpus& corpus);
};

struct PostReference {
  std::int64_t id = 0;
  bool answer = false;

  friend bool operator==(const PostReference&, const PostReference&) = default;
};

/// Forum post references in one comment's text.
[[nodiscard]] std::vector<PostReference> find_post_references(std::string_view text);

/// Example ids referenced from the comments of `file_text`.
[[nodiscard]] std::set<std::string> scan_attribution(std::string_view file_text,
                                                     const PostIndex& index);

/// Sets `attributed` on pairs whose counterpart file references the example.
void link_attribution(std::vector<ClonePair>& pairs, const Corpus& corpus,
                      const PostIndex& index);

enum class DatasetLabel { Variation, Adaptation };

[[nodiscard]] std::string_view dataset_label_name(DatasetLabel label);
[[nodiscard]] std::vector<DatasetLabel> dataset_labels(const ClonePair& pair);
[[nodiscard]] std::vector<ClonePair> select_dataset(const std::vector<ClonePair>& pairs,
                                                    DatasetLabel label);

[[nodiscard]] std::string clone_pair_to_json(const ClonePair& pair);
/// Throws CorpusError.
[[nodiscard]] ClonePair clone_pair_from_json(std::string_view line);
void write_pairs(std::ostream& out, const std::vector<ClonePair>& pairs);
[[nodiscard]] std::vector<ClonePair> read_pairs(std::istream& in);

/// Diff result of one pair as consumed by aggregate_stats.
struct PairAnalysis {
  ClonePair pair;
  std::size_t edit_count = 0;
  std::set<AdaptationType> types;
};

/// Parses both sides, diffs, prunes and classifies. Throws ParseError.
[[nodiscard]] PairAnalysis analyze_pair(const ClonePair& pair,
                                        std::string_view example_text,
                                        std::string_view counterpart_text,
                                        const ClassifyOptions& options = {});

struct LabelStats {
  std::size_t examples = 0;
  std::size_t pairs = 0;
  /// Examples whose mean edit count is positive.
  std::size_t examples_with_edits = 0;
  /// Over examples with edits.
  double median_edits = 0.0;
  double mean_edits = 0.0;
  /// Example id -> mean edit count over its counterparts.
  std::map<std::string, double> mean_edits_by_example;
  /// Examples whose counterparts exhibit the type at least once.
  std::map<AdaptationType, std::size_t> type_frequency;
};

struct StatsReport {
  std::map<DatasetLabel, LabelStats> labels;
};

/// Text of the matched method, or the whole file when the span is empty.
/// Throws CorpusError when the counterpart is not in the corpus.
[[nodiscard]] std::string_view counterpart_text(const Corpus& corpus,
                                                const ClonePair& pair);
/// Example text; throws CorpusError when missing.
[[nodiscard]] std::string_view example_text(const Corpus& corpus,
                                            const ClonePair& pair);

struct LiftFailure {
  std::string example_id;
  std::string message;
};

struct LiftResult {
  std::vector<LiftedTemplate> templates;
  std::vector<LiftFailure> failures;
};

/// One template per example with at least one pair. Counterparts are ordered
/// by descending stars; pairs whose sides fail to parse are left out.
[[nodiscard]] LiftResult lift_corpus(const Corpus& corpus,
                                     const std::vector<ClonePair>& pairs,
                                     const ClassifyOptions& options = {});

[[nodiscard]] StatsReport aggregate_stats(const std::vector<PairAnalysis>& analyses);
[[nodiscard]] std::string stats_to_json(const StatsReport& report);

}  // namespace exstack
