#include <gtest/gtest.h>

#include <memory>
#include <set>

#include <nlohmann/json.hpp>

#include "exstack/classifier.hpp"
#include "exstack/parser.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace exstack;
using testkit::classify_texts;
using testkit::instance_counts;

namespace {

int count_of(const std::vector<AdaptationInstance>& instances, AdaptationType type) {
  int n = 0;
  for (const auto& i : instances) n += i.type == type;
  return n;
}

std::set<AdaptationType> types_of(std::string_view a, std::string_view b) {
  std::set<AdaptationType> out;
  for (const auto& i : classify_texts(a, b)) out.insert(i.type);
  return out;
}

}  // namespace

TEST(Classifier, TaxonomyTables) {
  ASSERT_EQ(all_adaptation_types().size(), 24u);
  std::set<std::string_view> colors;
  std::map<Category, int> per_category;
  for (AdaptationType t : all_adaptation_types()) {
    EXPECT_EQ(adaptation_type_from_name(adaptation_type_name(t)), t);
    EXPECT_FALSE(adaptation_type_description(t).empty());
    ++per_category[category_of(t)];
  }
  EXPECT_EQ(per_category.size(), kCategoryCount);
  for (std::size_t c = 0; c < kCategoryCount; ++c) {
    auto cat = static_cast<Category>(c);
    EXPECT_EQ(category_from_name(category_name(cat)), cat);
    colors.insert(category_color(cat));
  }
  EXPECT_EQ(colors.size(), kCategoryCount);
  EXPECT_FALSE(adaptation_type_from_name("NoSuchType"));
}

TEST(Classifier, EmptyScriptHasNoInstances) {
  EXPECT_TRUE(classify_texts("f(x);", "f(x);").empty());
}

TEST(Classifier, InsertedIfStatementIsAddConditional) {
  auto instances = classify_texts("s.run();", "if (s != null) {\n  s.run();\n}");
  ASSERT_EQ(count_of(instances, AdaptationType::AddConditional), 1);
  for (const auto& i : instances) {
    if (i.type == AdaptationType::AddConditional) {
      EXPECT_EQ(i.category, Category::CodeHardening);
      EXPECT_FALSE(i.counterpart_span.empty());
    }
  }
}

TEST(Classifier, DeclaringAnUndeclaredVariable) {
  auto types = types_of("total += price;", "int total = 0;\ntotal += price;");
  EXPECT_TRUE(types.contains(AdaptationType::DeclareUndeclaredVariable));
}

TEST(Classifier, SliderRename) {
  auto instances = classify_texts("JSlider slider = new JSlider(0, 100, 50);",
                                  "JSlider timeSlider = new JSlider(0, 100, 50);");
  ASSERT_EQ(instances.size(), 1u);
  EXPECT_EQ(instances[0].type, AdaptationType::Rename);
  EXPECT_EQ(instances[0].category, Category::Refactoring);
}

TEST(Classifier, ConstantAndFieldInlining) {
  const char* literal = "byte[] buf = new byte[8192];\nin.read(buf);";
  const char* field = "byte[] buf = new byte[BUFFER_SIZE];\nin.read(buf);";
  EXPECT_TRUE(types_of(literal, field).contains(AdaptationType::ReplaceConstantWithVariable));
  EXPECT_FALSE(types_of(literal, field).contains(AdaptationType::InlineField));
  EXPECT_TRUE(types_of(field, literal).contains(AdaptationType::InlineField));
  EXPECT_FALSE(types_of(field, literal).contains(AdaptationType::ReplaceConstantWithVariable));
}

TEST(Classifier, CallingAnotherMethodIsNotARename) {
  auto types = types_of("try { run(); } catch (Exception e) { e.printStackTrace(); }",
                        "try { run(); } catch (Exception e) { log.error(\"failed\", e); }");
  EXPECT_FALSE(types.contains(AdaptationType::Rename));
  EXPECT_TRUE(types.contains(AdaptationType::ChangeCatchBlock));
  EXPECT_TRUE(types.contains(AdaptationType::ChangeLogStatement));
}

TEST(Classifier, EditsInOneCallAreOneInstance) {
  auto instances = classify_texts("String s = load(\"data.json\");",
                                  "String s = Assets.load(context, \"data.json\");");
  EXPECT_EQ(count_of(instances, AdaptationType::ChangeMethodCall), 1);
}

TEST(Classifier, CustomLogFamily) {
  const auto& p = testkit::fixture("mixed_http_get");
  auto a = std::make_shared<const SyntaxTree>(parse_snippet(p.example));
  auto b = std::make_shared<const SyntaxTree>(parse_snippet(p.counterpart));
  EditScript s = prune_inner_ops(compute_edit_script(a, b));
  EXPECT_EQ(count_of(classify(s), AdaptationType::ChangeLogStatement), 0);
  ClassifyOptions opts;
  opts.families = MethodFamilies::from_json(R"({"log_methods": ["e", "println"]})");
  EXPECT_EQ(count_of(classify(s, opts), AdaptationType::ChangeLogStatement), 1);
}

TEST(Classifier, SingleCountClaimsEachOpOnce) {
  for (const auto& p : testkit::fixture_pairs()) {
    auto a = std::make_shared<const SyntaxTree>(parse_snippet(p.example));
    auto b = std::make_shared<const SyntaxTree>(parse_snippet(p.counterpart));
    EditScript s = prune_inner_ops(compute_edit_script(a, b));
    ClassifyOptions opts;
    opts.single_count = true;
    std::vector<EditOp> claimed;
    for (const auto& inst : classify(s, opts)) {
      for (const EditOp& op : inst.ops) {
        EXPECT_EQ(std::count(claimed.begin(), claimed.end(), op), 0) << p.name;
        claimed.push_back(op);
      }
    }
    auto multi = classify(s);
    EXPECT_LE(classify(s, opts).size(), multi.size()) << p.name;
  }
}

TEST(Classifier, UnclassifiedOpsAreReportedOnRequest) {
  const char* a = "int x = 1;";
  const char* b = "int x = 1;\n;";
  auto sa = std::make_shared<const SyntaxTree>(parse_snippet(a));
  auto sb = std::make_shared<const SyntaxTree>(parse_snippet(b));
  EditScript s = prune_inner_ops(compute_edit_script(sa, sb));
  ASSERT_FALSE(s.ops.empty());
  ClassifyOptions quiet;
  quiet.report_unclassified = false;
  for (const auto& i : classify(s, quiet)) EXPECT_NE(i.type, AdaptationType::Unclassified);
  // Every op is claimed by some instance when unclassified ones are kept.
  std::vector<EditOp> claimed;
  for (const auto& i : classify(s)) claimed.insert(claimed.end(), i.ops.begin(), i.ops.end());
  for (const EditOp& op : s.ops) EXPECT_NE(std::count(claimed.begin(), claimed.end(), op), 0);
}

TEST(Classifier, ReportIsJson) {
  auto a = std::make_shared<const SyntaxTree>(parse_snippet("s.run();"));
  auto b = std::make_shared<const SyntaxTree>(parse_snippet("if (s != null) s.run();"));
  EditScript s = prune_inner_ops(compute_edit_script(a, b));
  auto doc = nlohmann::json::parse(adaptation_report(s, classify(s)));
  ASSERT_TRUE(doc.contains("instances"));
  EXPECT_FALSE(doc["instances"].empty());
}

TEST(Classifier, DistinctTypesAcrossCounterparts) {
  AdaptationInstance rename;
  rename.type = AdaptationType::Rename;
  EXPECT_EQ(distinct_types({{rename}, {rename}}), std::set{AdaptationType::Rename});
  EXPECT_TRUE(distinct_types({}).empty());
  AdaptationInstance a, b, c;
  a.type = AdaptationType::AddConditional;
  b.type = AdaptationType::UpdateConstant;
  c.type = AdaptationType::ChangeComment;
  EXPECT_EQ(distinct_types({{a}, {b}, {c}}).size(), 3u);
}

TEST(Classifier, EveryRuleHasPositiveAndNegativeFixture) {
  std::map<std::string, std::set<std::string>> polarities;
  for (const auto& p : testkit::fixture_pairs()) {
    if (p.rule) polarities[*p.rule].insert(p.polarity);
  }
  for (AdaptationType t : all_adaptation_types()) {
    std::string name(adaptation_type_name(t));
    EXPECT_TRUE(polarities[name].contains("positive")) << name;
    EXPECT_TRUE(polarities[name].contains("negative")) << name;
  }
}

// A positive fixture yields the labeled number of instances of its rule; a
// negative one yields none.
TEST(Classifier, RuleFixtures) {
  for (const auto& p : testkit::fixture_pairs()) {
    if (!p.rule) continue;
    auto got = instance_counts(classify_texts(p.example, p.counterpart));
    int want = p.instances.contains(*p.rule) ? p.instances.at(*p.rule) : 0;
    int have = got.contains(*p.rule) ? got.at(*p.rule) : 0;
    if (p.polarity == "positive") {
      EXPECT_GT(want, 0) << p.name;
      EXPECT_EQ(have, want) << p.name;
    } else {
      EXPECT_EQ(want, 0) << p.name;
      EXPECT_EQ(have, 0) << p.name;
    }
  }
}

TEST(Classifier, PrecisionAndRecallOnLabeledFixtures) {
  testkit::Tally total;
  int labeled = 0;
  for (const auto& p : testkit::fixture_pairs()) {
    for (const auto& [_, n] : p.instances) labeled += n;
    total += testkit::compare_counts(p.instances,
                                     instance_counts(classify_texts(p.example, p.counterpart)));
  }
  EXPECT_GE(labeled, 100);
  EXPECT_GE(total.precision(), 0.95) << "tp=" << total.tp << " fp=" << total.fp;
  EXPECT_GE(total.recall(), 0.95) << "tp=" << total.tp << " fn=" << total.fn;
}
