#include <gtest/gtest.h>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

#include "exstack/corpus.hpp"
#include "exstack/parser.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"
#include "synthetic.hpp"

using namespace exstack;
using namespace std::chrono_literals;

namespace {

std::string mini_dir() { return testkit::fixture_root() + "/minicorpus"; }

const Corpus& mini() {
  static const Corpus c = load_corpus(mini_dir());
  return c;
}

Timestamp at(std::string_view text) {
  auto t = parse_timestamp(text);
  EXPECT_TRUE(t) << text;
  return t.value_or(Timestamp{});
}

ClonePair timed(std::string e, std::string c, std::optional<Timestamp> te,
                std::optional<Timestamp> tc) {
  ClonePair p;
  p.example_id = std::move(e);
  p.counterpart_id = std::move(c);
  p.similarity = 1.0;
  p.example_time = te;
  p.counterpart_time = tc;
  return p;
}

// A method of exactly `n` countable tokens: each statement `vK = K;` adds an
// identifier, an operator and a literal.
std::string method_with_tokens(std::size_t n) {
  std::string body;
  std::size_t used = 1;  // method name
  for (std::size_t k = 0; used + 3 <= n; ++k, used += 3) {
    body += "  v" + std::to_string(k) + " = " + std::to_string(k) + ";\n";
  }
  for (; used < n; ++used) body += "  w" + std::to_string(used) + ";\n";
  return "void fill() {\n" + body + "}\n";
}

std::set<std::tuple<std::string, std::string, std::size_t, std::size_t>> keys(
    const std::vector<ClonePair>& pairs) {
  std::set<std::tuple<std::string, std::string, std::size_t, std::size_t>> out;
  for (const auto& p : pairs) {
    out.insert({p.example_id, p.counterpart_id, p.counterpart_span.begin, p.counterpart_span.end});
  }
  return out;
}

PairAnalysis row(const nlohmann::json& r) {
  PairAnalysis a;
  a.pair.example_id = r.at("example").get<std::string>();
  a.pair.counterpart_id = r.at("counterpart").get<std::string>();
  a.pair.attributed = r.at("attributed").get<bool>();
  a.edit_count = r.at("edits").get<std::size_t>();
  for (const auto& t : r.at("types")) a.types.insert(*adaptation_type_from_name(t.get<std::string>()));
  return a;
}

}  // namespace

TEST(Timestamps, ParseAndFormat) {
  EXPECT_EQ(format_timestamp(at("2016-01-01")), "2016-01-01T00:00:00Z");
  EXPECT_EQ(format_timestamp(at("2017-06-10T08:30")), "2017-06-10T08:30:00Z");
  EXPECT_EQ(format_timestamp(at("2017-06-10T08:30:15.250Z")), "2017-06-10T08:30:15Z");
  EXPECT_EQ(format_timestamp(at("2018-02-01T00:00:00+02:00")), "2018-01-31T22:00:00Z");
  EXPECT_EQ(format_timestamp(at("2018-01-31T20:30:00-01:30")), "2018-01-31T22:00:00Z");
  EXPECT_EQ(format_timestamp(at("2016-02-29T23:59:59Z")), "2016-02-29T23:59:59Z");
  EXPECT_EQ(at("2016-01-02") - at("2016-01-01"), 24h);
}

TEST(Timestamps, RejectsMalformed) {
  for (const char* bad : {"", "yesterday", "2016-13-01", "2015-02-29", "2016-01-01T25:00",
                          "2016-01-01T10:00:00+5", "2016-1-1", "2016-01-01 10:00:00junk"}) {
    EXPECT_FALSE(parse_timestamp(bad)) << bad;
  }
}

TEST(Dedup, TrivialCases) {
  auto two = dedup_files({{"a", "class A {}"}, {"b", "class A {}"}});
  ASSERT_EQ(two.kept.size(), 1u);
  EXPECT_EQ(two.kept[0].id, "a");
  EXPECT_EQ(two.duplicate_of.at("b"), "a");
  auto distinct = dedup_files({{"a", "x"}, {"b", "y"}, {"c", "z"}});
  EXPECT_EQ(distinct.kept.size(), 3u);
  EXPECT_TRUE(distinct.duplicate_of.empty());
  EXPECT_TRUE(dedup_files({}).kept.empty());
}

// Three duplicate groups among singletons, checked against pairwise comparison.
TEST(Dedup, GroupsMatchPairwiseOracle) {
  std::vector<SourceFile> files{
      {"f0", "class A { int a; }"}, {"f1", "class B { int b; }"}, {"f2", "class A { int a; }"},
      {"f3", "class C { }"},        {"f4", "class B { int b; }"}, {"f5", "class A { int a; }"},
      {"f6", "class D { }"},        {"f7", "class C { }"},        {"f8", "class A { int a;  }"},
      {"f9", ""},                   {"f10", ""}};
  std::vector<std::size_t> rep(files.size());
  for (std::size_t i = 0; i < files.size(); ++i) {
    rep[i] = i;
    for (std::size_t j = 0; j < i; ++j) {
      if (files[j].text == files[i].text) {
        rep[i] = rep[j];
        break;
      }
    }
  }
  std::set<std::size_t> groups(rep.begin(), rep.end());
  auto result = dedup_files(files);
  EXPECT_EQ(result.kept.size(), groups.size());
  for (std::size_t i = 0; i < files.size(); ++i) {
    if (rep[i] == i) {
      EXPECT_FALSE(result.duplicate_of.contains(files[i].id));
    } else {
      EXPECT_EQ(result.duplicate_of.at(files[i].id), files[rep[i]].id);
    }
  }
  std::size_t dup_groups = 0;
  for (std::size_t g : groups) dup_groups += std::count(rep.begin(), rep.end(), g) > 1;
  EXPECT_EQ(dup_groups, 4u);  // A, B, C and the empty file
}

TEST(Similarity, FormulaCases) {
  auto a = tokenize("alpha(beta, gamma);");
  EXPECT_DOUBLE_EQ(clone_similarity(a, a), 1.0);
  EXPECT_DOUBLE_EQ(clone_similarity(a, tokenize("delta.epsilon();")), 0.0);
  EXPECT_DOUBLE_EQ(clone_similarity(tokenize(""), tokenize("")), 0.0);
  EXPECT_DOUBLE_EQ(clone_similarity(tokenize("// only a comment"), tokenize("{ ; }")), 0.0);
  // Ten identifiers against nine, seven shared: 7 / max(10, 9).
  auto ten = tokenize("a; b; c; d; e; f; g; h; i; j;");
  auto nine = tokenize("a; b; c; d; e; f; g; x; y;");
  EXPECT_EQ(measured_token_count(ten), 10u);
  EXPECT_EQ(measured_token_count(nine), 9u);
  EXPECT_DOUBLE_EQ(clone_similarity(ten, nine), 0.7);
  EXPECT_DOUBLE_EQ(clone_similarity(nine, ten), 0.7);
  // Multiset: a repeated token only matches as often as it occurs on both sides.
  EXPECT_DOUBLE_EQ(clone_similarity(tokenize("x; x; x; y;"), tokenize("x; y; y; y;")), 0.5);
}

TEST(Clones, ExtractMethods) {
  auto methods = extract_methods("f", "class A {\n  void a() {}\n  class B { int b() { return 1; } }\n}");
  ASSERT_EQ(methods.size(), 2u);
  std::set<std::string> names{methods[0].name, methods[1].name};
  EXPECT_EQ(names, (std::set<std::string>{"a", "b"}));
  EXPECT_TRUE(extract_methods("f", "int x = 1;").empty());
  EXPECT_THROW((void)extract_methods("f", "class {"), ParseError);
}

TEST(Clones, MinimumTokenBoundary) {
  std::string at_min = method_with_tokens(50);
  std::string below = method_with_tokens(49);
  ASSERT_EQ(measured_token_count(tokenize(at_min)), 50u);
  ASSERT_EQ(measured_token_count(tokenize(below)), 49u);
  std::vector<SourceFile> files{{"file", "class Host {\n" + at_min + below + "}\n"}};
  auto short_pairs = detect_clones({{"short", below}}, files).pairs;
  EXPECT_TRUE(short_pairs.empty());
  auto copy = detect_clones({{"copy", at_min}}, files).pairs;
  ASSERT_FALSE(copy.empty());
  EXPECT_DOUBLE_EQ(copy.front().similarity, 1.0);
  EXPECT_EQ(copy.front().method, "fill");
}

TEST(Clones, UnparsableFilesAreSkipped) {
  std::string m = method_with_tokens(60);
  auto result = detect_clones({{"e", m}}, {{"bad", "class X { void f( }"}, {"good", "class Y {" + m + "}"}});
  ASSERT_EQ(result.skipped.size(), 1u);
  EXPECT_EQ(result.skipped[0].first, "bad");
  ASSERT_EQ(result.pairs.size(), 1u);
  EXPECT_EQ(result.pairs[0].counterpart_id, "good");
}

TEST(Clones, SyntheticCorpusMatchesBruteForce) {
  auto corpus = testkit::make_synthetic_corpus(200, 77);
  auto start = std::chrono::steady_clock::now();
  auto got = detect_clones(corpus.examples, corpus.files).pairs;
  EXPECT_LT(std::chrono::steady_clock::now() - start, 30s);
  auto want = testkit::brute_force_clones(corpus.examples, corpus.files, 0.7, 50);
  ASSERT_EQ(got.size(), want.size());
  for (std::size_t i = 0; i < got.size(); ++i) {
    EXPECT_EQ(got[i].example_id, want[i].example_id);
    EXPECT_EQ(got[i].counterpart_id, want[i].counterpart_id);
    EXPECT_EQ(got[i].counterpart_span, want[i].span);
    EXPECT_DOUBLE_EQ(got[i].similarity, double(want[i].overlap) / double(want[i].size));
    EXPECT_GE(got[i].similarity, 0.7);
  }
  // The corpus must exercise both sides of the threshold.
  EXPECT_GT(want.size(), 20u);
  EXPECT_GT(testkit::brute_force_clones(corpus.examples, corpus.files, 0.5, 50).size(), want.size());
  EXPECT_TRUE(std::any_of(got.begin(), got.end(), [](const ClonePair& p) { return p.similarity < 1.0; }));
}

TEST(Clones, IndexAgreesWithBruteForceFlagAndThreads) {
  auto corpus = testkit::make_synthetic_corpus(120, 5);
  for (double theta : {0.5, 0.7, 0.9, 1.0}) {
    CloneOptions index;
    index.threshold = theta;
    CloneOptions brute = index;
    brute.brute_force = true;
    CloneOptions threaded = index;
    threaded.threads = 4;
    auto base = detect_clones(corpus.examples, corpus.files, index).pairs;
    EXPECT_EQ(base, detect_clones(corpus.examples, corpus.files, brute).pairs) << theta;
    EXPECT_EQ(base, detect_clones(corpus.examples, corpus.files, threaded).pairs) << theta;
  }
}

TEST(Clones, ThresholdMonotonicity) {
  auto corpus = testkit::make_synthetic_corpus(200, 77);
  std::vector<std::set<std::tuple<std::string, std::string, std::size_t, std::size_t>>> sets;
  for (double theta : {0.5, 0.7, 0.9}) {
    CloneOptions o;
    o.threshold = theta;
    sets.push_back(keys(detect_clones(corpus.examples, corpus.files, o).pairs));
  }
  for (std::size_t i = 1; i < sets.size(); ++i) {
    EXPECT_TRUE(std::includes(sets[i - 1].begin(), sets[i - 1].end(), sets[i].begin(), sets[i].end()));
    EXPECT_LT(sets[i].size(), sets[i - 1].size());
  }
}

TEST(TimestampFilter, Boundaries) {
  Timestamp post = at("2016-01-01T00:00:00Z");
  std::vector<ClonePair> pairs{
      timed("e", "earlier", post, post - 1s),
      timed("e", "equal", post, post),
      timed("e", "later", post, post + 1s),
      timed("e", "no_counterpart_time", post, std::nullopt),
      timed("e", "no_example_time", std::nullopt, post + 1s),
  };
  auto result = filter_by_timestamp(pairs);
  ASSERT_EQ(result.kept.size(), 1u);
  EXPECT_EQ(result.kept[0].counterpart_id, "later");
  ASSERT_EQ(result.missing.size(), 2u);
  EXPECT_EQ(result.missing[0].counterpart_id, "no_counterpart_time");
  EXPECT_TRUE(result.missing[0].counterpart_missing);
  EXPECT_FALSE(result.missing[0].example_missing);
  EXPECT_EQ(result.missing[1].counterpart_id, "no_example_time");
  EXPECT_TRUE(result.missing[1].example_missing);
}

TEST(TimestampFilter, OffsetsCompareByInstant) {
  // 01:00+02:00 is 23:00Z the previous day, so it predates 2016-01-01T00:00Z.
  auto result = filter_by_timestamp({timed("e", "c", at("2016-01-01T00:00:00Z"),
                                           at("2016-01-01T01:00:00+02:00"))});
  EXPECT_TRUE(result.kept.empty());
}

TEST(Attribution, PostReferences) {
  using R = PostReference;
  EXPECT_EQ(find_post_references("https://stackoverflow.com/a/101"), (std::vector<R>{{101, true}}));
  EXPECT_EQ(find_post_references("http://www.stackoverflow.com/answers/7/"), (std::vector<R>{{7, true}}));
  EXPECT_EQ(find_post_references("stackoverflow.com/questions/100/how-to-copy"),
            (std::vector<R>{{100, false}}));
  EXPECT_EQ(find_post_references("https://stackoverflow.com/questions/100/how-to-copy/101#101"),
            (std::vector<R>{{101, true}}));
  EXPECT_EQ(find_post_references("https://stackoverflow.com/questions/100#102"), (std::vector<R>{{102, true}}));
  EXPECT_EQ(find_post_references("https://stackoverflow.com/q/100"), (std::vector<R>{{100, false}}));
  EXPECT_TRUE(find_post_references("https://example.com/a/101").empty());
  EXPECT_EQ(find_post_references("see stackoverflow.com/a/1 and stackoverflow.com/q/2").size(), 2u);
}

TEST(Attribution, BoundaryFixtures) {
  PostIndex index;
  index.add("ex_copy", 100, 101);
  index.add("ex_other", 100, 105);
  index.add("ex_sort", 200, 201);
  auto scan = [&](const std::string& comment) {
    return scan_attribution(comment + "\nclass A { }", index);
  };
  EXPECT_EQ(scan("// https://stackoverflow.com/a/101"), std::set<std::string>{"ex_copy"});
  EXPECT_EQ(scan("/* https://stackoverflow.com/questions/100/title */"),
            (std::set<std::string>{"ex_copy", "ex_other"}));
  EXPECT_TRUE(scan("// https://stackoverflow.com/questions/999").empty());
  EXPECT_TRUE(scan("// https://stackoverflow.com/a/999").empty());
  // Only comments count; a URL in a string literal is not attribution.
  EXPECT_TRUE(scan_attribution("String u = \"https://stackoverflow.com/a/101\";", index).empty());
}

TEST(Attribution, IndexFromCorpus) {
  PostIndex index = PostIndex::from_corpus(mini());
  EXPECT_EQ(index.examples_by_answer.at(101), std::vector<std::string>{"ex_copy"});
  EXPECT_EQ(index.answers_by_question.at(200), std::set<std::int64_t>{201});
}

TEST(Labels, AdaptationIsSubsetOfVariation) {
  std::mt19937 rng(3);
  std::vector<ClonePair> pairs;
  for (int i = 0; i < 200; ++i) {
    ClonePair p;
    p.example_id = "e" + std::to_string(rng() % 20);
    p.counterpart_id = "c" + std::to_string(i);
    p.attributed = rng() % 3 == 0;
    pairs.push_back(p);
  }
  auto variation = select_dataset(pairs, DatasetLabel::Variation);
  auto adaptation = select_dataset(pairs, DatasetLabel::Adaptation);
  EXPECT_EQ(variation.size(), pairs.size());
  for (const auto& p : adaptation) {
    EXPECT_TRUE(p.attributed);
    EXPECT_NE(std::find(variation.begin(), variation.end(), p), variation.end());
  }
  EXPECT_EQ(adaptation.size(),
            static_cast<std::size_t>(std::count_if(pairs.begin(), pairs.end(),
                                                   [](const ClonePair& p) { return p.attributed; })));
}

TEST(Pairs, JsonRoundTrip) {
  ClonePair p = timed("ex", "cp", at("2015-03-01T12:00:00Z"), at("2017-06-10T08:30:00Z"));
  p.method = "copy";
  p.counterpart_span = {10, 240};
  p.similarity = 0.9272727272727272;
  p.attributed = true;
  ClonePair bare;
  bare.example_id = "e2";
  bare.counterpart_id = "c2";
  std::stringstream ss;
  write_pairs(ss, {p, bare});
  auto back = read_pairs(ss);
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[0], p);
  EXPECT_EQ(back[1], bare);
  auto doc = nlohmann::json::parse(clone_pair_to_json(p));
  EXPECT_EQ(doc["labels"], (nlohmann::json{"variation", "adaptation"}));
  EXPECT_THROW((void)clone_pair_from_json("{\"example_id\": 1}"), CorpusError);
  EXPECT_THROW((void)clone_pair_from_json("nope"), CorpusError);
}

TEST(Metadata, MalformedRecords) {
  auto read = [](const std::string& text) {
    std::istringstream in(text);
    return read_metadata(in);
  };
  EXPECT_EQ(read("{\"id\": \"a\"}\n\n{\"id\": \"b\", \"role\": \"counterpart\"}\n").size(), 2u);
  EXPECT_THROW((void)read("{\"id\": \"a\"}\n{\"id\": \"a\"}\n"), CorpusError);
  EXPECT_THROW((void)read("{\"id\": \"a\", \"role\": \"answer\"}\n"), CorpusError);
  EXPECT_THROW((void)read("{\"id\": \"a\", \"created_at\": \"soon\"}\n"), CorpusError);
  try {
    (void)read("{\"id\": \"a\"}\n{oops\n");
    FAIL() << "expected CorpusError";
  } catch (const CorpusError& e) {
    EXPECT_NE(std::string(e.what()).find('2'), std::string::npos) << e.what();
  }
}

TEST(Metadata, CorpusSaveLoadRoundTrip) {
  const Corpus& c = mini();
  EXPECT_EQ(c.records.size(), 9u);
  EXPECT_EQ(c.files(Role::Example).size(), 2u);
  EXPECT_EQ(c.files(Role::Counterpart).size(), 7u);
  ASSERT_NE(c.find("cp_a1"), nullptr);
  EXPECT_EQ(c.find("cp_a1")->stars, 120);
  EXPECT_FALSE(c.find("cp_nots")->created_at);
  auto dir = std::filesystem::temp_directory_path() / "exstack_corpus_roundtrip";
  std::filesystem::remove_all(dir);
  save_corpus(c, dir.string());
  Corpus back = load_corpus(dir.string());
  std::ostringstream x, y;
  write_metadata(x, c.records);
  write_metadata(y, back.records);
  EXPECT_EQ(x.str(), y.str());
  EXPECT_EQ(back.texts, c.texts);
  std::filesystem::remove_all(dir);
  EXPECT_THROW((void)load_corpus("/nonexistent/corpus"), CorpusError);
}

TEST(Stats, MeanOverCounterparts) {
  PairAnalysis a, b;
  a.pair.example_id = b.pair.example_id = "e";
  a.pair.counterpart_id = "c1";
  b.pair.counterpart_id = "c2";
  a.edit_count = 10;
  b.edit_count = 20;
  StatsReport r = aggregate_stats({a, b});
  const LabelStats& v = r.labels.at(DatasetLabel::Variation);
  EXPECT_DOUBLE_EQ(v.mean_edits_by_example.at("e"), 15.0);
  EXPECT_DOUBLE_EQ(v.median_edits, 15.0);
  EXPECT_FALSE(r.labels.contains(DatasetLabel::Adaptation));
}

TEST(Stats, EmptyCorpusGivesEmptyReport) {
  StatsReport r = aggregate_stats({});
  EXPECT_TRUE(r.labels.empty());
  EXPECT_EQ(nlohmann::json::parse(stats_to_json(r)), nlohmann::json::object());
}

// Spreadsheet of per-pair edit counts and types with hand-aggregated values.
TEST(Stats, HandComputedAggregation) {
  auto doc = nlohmann::json::parse(testkit::read_text(mini_dir() + "/aggregation.json"));
  std::vector<PairAnalysis> rows;
  for (const auto& r : doc.at("rows")) rows.push_back(row(r));
  StatsReport report = aggregate_stats(rows);
  ASSERT_EQ(report.labels.size(), 2u);
  for (DatasetLabel label : {DatasetLabel::Variation, DatasetLabel::Adaptation}) {
    const auto& want = doc.at("expected").at(std::string(dataset_label_name(label)));
    const LabelStats& got = report.labels.at(label);
    EXPECT_EQ(got.examples, want.at("examples").get<std::size_t>());
    EXPECT_EQ(got.pairs, want.at("pairs").get<std::size_t>());
    EXPECT_EQ(got.examples_with_edits, want.at("examples_with_edits").get<std::size_t>());
    EXPECT_DOUBLE_EQ(got.median_edits, want.at("median_edits").get<double>());
    EXPECT_DOUBLE_EQ(got.mean_edits, want.at("mean_edits").get<double>());
    EXPECT_EQ(got.mean_edits_by_example, (want.at("mean_edits_by_example").get<std::map<std::string, double>>()));
    std::map<std::string, std::size_t> freq;
    for (const auto& [t, n] : got.type_frequency) freq[std::string(adaptation_type_name(t))] = n;
    EXPECT_EQ(freq, (want.at("type_frequency").get<std::map<std::string, std::size_t>>()));
  }
}

// Dedup, clone detection, timestamps and attribution over the bundled corpus,
// with the expected outcome of each file written down by hand.
TEST(Pipeline, MiniCorpusEndToEnd) {
  const Corpus& c = mini();
  auto dedup = dedup_files(c.files(Role::Counterpart));
  EXPECT_EQ(dedup.duplicate_of, (std::map<std::string, std::string>{{"cp_dup", "cp_b2"}}));
  auto clones = detect_clones(c.files(Role::Example), dedup.kept);
  EXPECT_TRUE(clones.skipped.empty());
  attach_timestamps(clones.pairs, c);
  link_attribution(clones.pairs, c, PostIndex::from_corpus(c));
  std::map<std::string, bool> attributed;
  for (const auto& p : clones.pairs) attributed[p.counterpart_id] = p.attributed;
  EXPECT_EQ(attributed, (std::map<std::string, bool>{{"cp_a1", true},
                                                     {"cp_a2", true},
                                                     {"cp_a3", false},
                                                     {"cp_b1", false},
                                                     {"cp_b2", false},
                                                     {"cp_nots", false}}));
  auto filtered = filter_by_timestamp(clones.pairs);
  std::set<std::string> kept;
  for (const auto& p : filtered.kept) kept.insert(p.counterpart_id);
  EXPECT_EQ(kept, (std::set<std::string>{"cp_a1", "cp_a2", "cp_b2"}));
  ASSERT_EQ(filtered.missing.size(), 1u);
  EXPECT_EQ(filtered.missing[0].counterpart_id, "cp_nots");

  std::vector<PairAnalysis> analyses;
  for (const auto& p : filtered.kept) analyses.push_back(analyze_pair(p, example_text(c, p), counterpart_text(c, p)));
  std::map<std::string, PairAnalysis> by_cp;
  for (const auto& a : analyses) by_cp.emplace(a.pair.counterpart_id, a);
  // buffer -> chunk at four sites; the flush call wrapped in a null check.
  EXPECT_EQ(by_cp.at("cp_a1").edit_count, 4u);
  EXPECT_TRUE(by_cp.at("cp_a1").types.contains(AdaptationType::Rename));
  EXPECT_TRUE(by_cp.at("cp_a2").types.contains(AdaptationType::AddConditional));
  EXPECT_EQ(by_cp.at("cp_b2").edit_count, 0u);
  EXPECT_TRUE(by_cp.at("cp_b2").types.empty());

  StatsReport report = aggregate_stats(analyses);
  const LabelStats& v = report.labels.at(DatasetLabel::Variation);
  const LabelStats& a = report.labels.at(DatasetLabel::Adaptation);
  double copy_mean = (by_cp.at("cp_a1").edit_count + by_cp.at("cp_a2").edit_count) / 2.0;
  EXPECT_DOUBLE_EQ(v.mean_edits_by_example.at("ex_copy"), copy_mean);
  EXPECT_DOUBLE_EQ(v.mean_edits_by_example.at("ex_sort"), 0.0);
  EXPECT_EQ(v.examples, 2u);
  EXPECT_EQ(v.examples_with_edits, 1u);
  EXPECT_EQ(a.examples, 1u);
  EXPECT_EQ(a.pairs, 2u);
  EXPECT_EQ(v.type_frequency.at(AdaptationType::Rename), 1u);
  EXPECT_EQ(v.type_frequency.at(AdaptationType::AddConditional), 1u);
}

TEST(Pipeline, LiftCorpusOrdersCounterpartsByStars) {
  const Corpus& c = mini();
  auto clones = detect_clones(c.files(Role::Example), c.files(Role::Counterpart));
  auto result = lift_corpus(c, clones.pairs);
  EXPECT_TRUE(result.failures.empty());
  ASSERT_EQ(result.templates.size(), 2u);
  for (const auto& t : result.templates) {
    ASSERT_FALSE(t.counterparts.empty());
    for (std::size_t i = 1; i < t.counterparts.size(); ++i) {
      EXPECT_GE(t.counterparts[i - 1].stars, t.counterparts[i].stars);
    }
    EXPECT_EQ(render(t, SelectionState(t)), t.example_text);
  }
}
