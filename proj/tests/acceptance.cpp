// Acceptance gate: one PASS/FAIL line per primary criterion. Exit status is
// the number of failing criteria.
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "exstack/classifier.hpp"
#include "exstack/corpus.hpp"
#include "exstack/parser.hpp"
#include "exstack/service.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"
#include "properties.hpp"
#include "synthetic.hpp"

using namespace exstack;
using Clock = std::chrono::steady_clock;
using nlohmann::json;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

std::shared_ptr<const SyntaxTree> parse(std::string_view text) {
  return std::make_shared<const SyntaxTree>(parse_snippet(text));
}

Outcome round_trip() {
  const auto& pairs = testkit::fixture_pairs();
  std::set<std::string> covered;
  for (const auto& p : pairs) {
    for (const auto& [type, n] : p.instances) {
      if (n > 0) covered.insert(type);
    }
  }
  auto start = Clock::now();
  std::size_t ok = 0;
  for (const auto& p : pairs) {
    auto a = parse(p.example);
    auto b = parse(p.counterpart);
    ok += isomorphic(apply_edit_script(*a, compute_edit_script(a, b)), *b);
  }
  double secs = seconds_since(start);
  bool all_types = true;
  for (AdaptationType t : all_adaptation_types()) {
    all_types = all_types && covered.contains(std::string(adaptation_type_name(t)));
  }
  return {pairs.size() >= 40 && all_types && ok == pairs.size() && secs < 5.0,
          fmt("%zu/%zu pairs reproduced, %zu/24 types labeled, %.2fs (need >=40 pairs, 100%%, <5s)",
              ok, pairs.size(), covered.size(), secs)};
}

Outcome classifier_accuracy() {
  testkit::Tally total;
  int labeled = 0;
  std::map<std::string, std::set<std::string>> passing;
  for (const auto& p : testkit::fixture_pairs()) {
    for (const auto& [_, n] : p.instances) labeled += n;
    auto got = testkit::instance_counts(testkit::classify_texts(p.example, p.counterpart));
    total += testkit::compare_counts(p.instances, got);
    if (!p.rule) continue;
    int want = p.instances.contains(*p.rule) ? p.instances.at(*p.rule) : 0;
    int have = got.contains(*p.rule) ? got.at(*p.rule) : 0;
    bool ok = p.polarity == "positive" ? (want > 0 && have == want) : (want == 0 && have == 0);
    if (ok) passing[*p.rule].insert(p.polarity);
  }
  int rules_ok = 0;
  for (AdaptationType t : all_adaptation_types()) {
    const auto& s = passing[std::string(adaptation_type_name(t))];
    rules_ok += s.contains("positive") && s.contains("negative");
  }
  bool pass = labeled >= 100 && total.precision() >= 0.95 && total.recall() >= 0.95 && rules_ok == 24;
  return {pass, fmt("precision %.3f recall %.3f over %d labeled instances (tp=%d fp=%d fn=%d), "
                    "%d/24 rules with passing pos+neg fixtures (need >=0.95, >=0.95, >=100, 24)",
                    total.precision(), total.recall(), labeled, total.tp, total.fp, total.fn, rules_ok)};
}

Outcome prune_soundness() {
  const auto& pairs = testkit::fixture_pairs();
  std::mt19937 rng(20260);
  int cases = 0;
  int violations = 0;
  std::string first;
  for (int i = 0; cases < 1000; ++i) {
    const auto& p = pairs[static_cast<std::size_t>(i) % pairs.size()];
    auto a = parse(i % 2 ? p.example : p.counterpart);
    auto b = std::make_shared<const SyntaxTree>(testkit::mutate_tree(*a, rng, 0.15 + 0.1 * (i % 4)));
    EditScript s = compute_edit_script(a, b);
    std::string v = testkit::prune_violation(s, prune_inner_ops(s));
    if (!v.empty() && violations++ == 0) first = v;
    ++cases;
  }
  return {violations == 0 && cases >= 1000,
          fmt("%d generated cases, %d violations%s%s (need >=1000, 0)", cases, violations,
              first.empty() ? "" : ": ", first.c_str())};
}

Outcome clone_oracle() {
  auto corpus = testkit::make_synthetic_corpus(200, 77);
  auto start = Clock::now();
  auto got = detect_clones(corpus.examples, corpus.files).pairs;
  std::vector<std::set<std::tuple<std::string, std::string, std::size_t>>> sets;
  for (double theta : {0.5, 0.7, 0.9}) {
    CloneOptions o;
    o.threshold = theta;
    std::set<std::tuple<std::string, std::string, std::size_t>> s;
    for (const auto& p : detect_clones(corpus.examples, corpus.files, o).pairs) {
      s.insert({p.example_id, p.counterpart_id, p.counterpart_span.begin});
    }
    sets.push_back(std::move(s));
  }
  double secs = seconds_since(start);
  auto want = testkit::brute_force_clones(corpus.examples, corpus.files, 0.7, 50);
  bool equal = got.size() == want.size();
  for (std::size_t i = 0; equal && i < got.size(); ++i) {
    equal = got[i].example_id == want[i].example_id && got[i].counterpart_id == want[i].counterpart_id &&
            got[i].counterpart_span == want[i].span &&
            got[i].similarity == double(want[i].overlap) / double(want[i].size);
  }
  bool monotone = std::includes(sets[0].begin(), sets[0].end(), sets[1].begin(), sets[1].end()) &&
                  std::includes(sets[1].begin(), sets[1].end(), sets[2].begin(), sets[2].end());
  return {equal && monotone && secs < 30.0,
          fmt("%zu pairs vs %zu brute-force (%s), |pairs| at 0.5/0.7/0.9 = %zu/%zu/%zu %s, %.2fs (need equal, monotone, <30s)",
              got.size(), want.size(), equal ? "equal" : "DIFFERENT", sets[0].size(), sets[1].size(),
              sets[2].size(), monotone ? "monotone" : "NOT monotone", secs)};
}

Outcome timestamp_attribution() {
  using namespace std::chrono_literals;
  Timestamp post = *parse_timestamp("2016-01-01T00:00:00Z");
  auto pair = [&](std::string id, Timestamp t) {
    ClonePair p;
    p.example_id = "ex";
    p.counterpart_id = std::move(id);
    p.example_time = post;
    p.counterpart_time = t;
    return p;
  };
  auto kept = filter_by_timestamp({pair("earlier", post - 1s), pair("equal", post), pair("later", post + 1s)}).kept;
  int ok = 0;
  std::set<std::string> ids;
  for (const auto& p : kept) ids.insert(p.counterpart_id);
  ok += !ids.contains("earlier");
  ok += !ids.contains("equal");
  ok += ids.contains("later");

  PostIndex index;
  index.add("ex_copy", 100, 101);
  index.add("ex_sort", 200, 201);
  ok += scan_attribution("// https://stackoverflow.com/a/101\nclass A {}", index) ==
        std::set<std::string>{"ex_copy"};
  ok += scan_attribution("// https://stackoverflow.com/questions/200/sorting\nclass A {}", index) ==
        std::set<std::string>{"ex_sort"};
  ok += scan_attribution("// https://stackoverflow.com/questions/999\nclass A {}", index).empty();
  return {ok == 6, fmt("%d/6 boundary fixtures classified per rule (need 6/6)", ok)};
}

Outcome template_invariants() {
  std::vector<const testkit::LiftedCase*> pool;
  int violations = 0;
  std::string first;
  for (const auto& c : testkit::fixture_templates()) {
    pool.push_back(&c);
    std::string v = testkit::template_violation(c);
    if (!v.empty() && violations++ == 0) first = v;
  }
  // Multi-counterpart templates so filtering and auto-selection have work to do.
  static const std::vector<testkit::LiftedCase> crafted = [] {
    std::vector<testkit::LiftedCase> out;
    for (const char* name : {"mixed_json_asset", "mixed_http_get", "mixed_stream_copy"}) {
      const auto& p = testkit::fixture(name);
      out.push_back(testkit::lift_texts(p.example, {p.counterpart, p.example, p.counterpart}));
    }
    out.push_back(testkit::lift_texts("open(path);\nlog(path);\nwrite(text);\nlog(text);\nflush(out);",
                                      {"Charset cs = X;\nopen(path);\nlog(path);\nwrite(text, cs);\nlog(text);\nflush(out, cs);",
                                       "open(path);\nlog(path, level);\nwrite(text);\nlog(text);\nflush(out);",
                                       "int level = 2;\nopen(path);\nlog(path, level);\nwrite(text);\nflush(out);"}));
    return out;
  }();
  for (const auto& c : crafted) {
    pool.push_back(&c);
    std::string v = testkit::template_violation(c);
    if (!v.empty() && violations++ == 0) first = v;
  }
  testkit::DriverReport r = testkit::run_selection_driver(pool, 600, 4242);
  bool pass = violations == 0 && r.violations == 0 && r.sequences >= 500;
  std::string why = !first.empty() ? first : r.first_violation;
  return {pass, fmt("%zu templates, %d invariant violations; %d sequences, %d steps, %d conflicts, "
                    "%d introduced variables checked, %d driver violations%s%s (need 0, >=500, 0)",
                    pool.size(), violations, r.sequences, r.steps, r.conflicts, r.checked_variables,
                    r.violations, why.empty() ? "" : ": ", why.c_str())};
}

Outcome aggregation() {
  auto doc = json::parse(testkit::read_text(testkit::fixture_root() + "/minicorpus/aggregation.json"));
  std::vector<PairAnalysis> rows;
  for (const auto& r : doc.at("rows")) {
    PairAnalysis a;
    a.pair.example_id = r.at("example").get<std::string>();
    a.pair.counterpart_id = r.at("counterpart").get<std::string>();
    a.pair.attributed = r.at("attributed").get<bool>();
    a.edit_count = r.at("edits").get<std::size_t>();
    for (const auto& t : r.at("types")) a.types.insert(*adaptation_type_from_name(t.get<std::string>()));
    rows.push_back(a);
  }
  StatsReport report = aggregate_stats(rows);
  int checked = 0;
  int ok = 0;
  for (DatasetLabel label : {DatasetLabel::Variation, DatasetLabel::Adaptation}) {
    const auto& want = doc.at("expected").at(std::string(dataset_label_name(label)));
    if (!report.labels.contains(label)) {
      checked += 3;
      continue;
    }
    const LabelStats& got = report.labels.at(label);
    checked += 3;
    ok += got.mean_edits_by_example == want.at("mean_edits_by_example").get<std::map<std::string, double>>();
    ok += got.median_edits == want.at("median_edits").get<double>();
    std::map<std::string, std::size_t> freq;
    for (const auto& [t, n] : got.type_frequency) freq[std::string(adaptation_type_name(t))] = n;
    ok += freq == want.at("type_frequency").get<std::map<std::string, std::size_t>>();
  }
  PairAnalysis x, y;
  x.pair.example_id = y.pair.example_id = "e";
  x.edit_count = 10;
  y.edit_count = 20;
  auto two = aggregate_stats({x, y});
  ++checked;
  ok += two.labels.at(DatasetLabel::Variation).mean_edits_by_example.at("e") == 15.0;
  return {ok == checked, fmt("%d/%d hand-computed values matched exactly (need all)", ok, checked)};
}

Outcome service_contract() {
  TemplateStore store;
  for (const auto& c : testkit::fixture_templates()) {
    LiftedTemplate t = c.tmpl;
    t.example_id = "t" + std::to_string(store.all().size());
    store.add(std::move(t));
  }
  {
    const auto& p = testkit::fixture("mixed_json_asset");
    LiftedTemplate t = testkit::lift_texts(p.example, {p.counterpart, p.example}).tmpl;
    t.example_id = "multi";
    store.add(std::move(t));
  }
  Service service(store);
  int checks = 0;
  int ok = 0;
  std::string first;
  auto expect = [&](bool cond, const std::string& what) {
    ++checks;
    if (cond) {
      ++ok;
    } else if (first.empty()) {
      first = what;
    }
  };
  Response list = service.handle("GET", "/examples");
  expect(list.status == 200 && json::parse(list.body)["examples"].size() == store.all().size(), "list");
  for (const auto& [id, tmpl] : store.all()) {
    Response t = service.handle("GET", "/examples/" + id + "/template");
    expect(t.status == 200 &&
               json::parse(t.body)["hotspots"].size() == template_stats(tmpl).hotspot_count,
           "template " + id);
    Response created = service.handle("POST", "/sessions", json{{"example_id", id}}.dump());
    expect(created.status == 201, "create " + id);
    std::string s = json::parse(created.body)["session_id"];
    std::string base = "/sessions/" + s;
    expect(service.handle("POST", base + "/undo").status == 410, "410 " + id);
    expect(service.handle("GET", base + "/render").body == tmpl.example_text, "render " + id);
    for (std::size_t h = 0; h < tmpl.hotspots.size(); ++h) {
      for (std::size_t o = 0; o < tmpl.hotspots[h].options.size(); ++o) {
        std::string before = service.handle("GET", base).body;
        std::string text = service.handle("GET", base + "/render").body;
        Response r = service.handle("POST", base + "/select", json{{"hotspot", h}, {"option", o}}.dump());
        if (r.status == 409) continue;
        expect(r.status == 200, "select " + id);
        Response back = service.handle("POST", base + "/undo");
        expect(back.status == 200 && back.body == before &&
                   service.handle("GET", base + "/render").body == text,
               "select/undo round trip " + id);
      }
    }
  }
  expect(service.handle("GET", "/examples/none/template").status == 404, "404 example");
  expect(service.handle("GET", "/sessions/none").status == 404, "404 session");
  // Force a conflict: explicitly pick an option, then one whose definition
  // lives in a different option of the same hot spot.
  bool saw_conflict = false;
  for (const auto& [id, tmpl] : store.all()) {
    for (const DefUseEdge& e : tmpl.edges) {
      for (std::size_t other = 0; other < tmpl.hotspots[e.to_hotspot].options.size() && !saw_conflict; ++other) {
        if (other == e.to_option) continue;
        Response created = service.handle("POST", "/sessions", json{{"example_id", id}}.dump());
        std::string base = "/sessions/" + json::parse(created.body)["session_id"].get<std::string>();
        (void)service.handle("POST", base + "/select", json{{"hotspot", e.to_hotspot}, {"option", other}}.dump());
        std::string before = service.handle("GET", base).body;
        Response r = service.handle("POST", base + "/select",
                                    json{{"hotspot", e.from_hotspot}, {"option", e.from_option}}.dump());
        if (r.status == 409) {
          saw_conflict = true;
          expect(service.handle("GET", base).body == before, "409 leaves state");
        }
      }
    }
  }
  expect(saw_conflict, "409 conflict reachable");
  return {ok == checks, fmt("%d/%d API checks passed%s%s", ok, checks, first.empty() ? "" : "; first failure: ",
                            first.c_str())};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"edit-script round-trip", round_trip},
      {"classifier accuracy", classifier_accuracy},
      {"prune soundness", prune_soundness},
      {"clone-detection oracle equivalence", clone_oracle},
      {"timestamp and attribution", timestamp_attribution},
      {"template invariants", template_invariants},
      {"aggregation", aggregation},
      {"service contract", service_contract},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  " << name << ": " << o.detail << '\n';
  }
  return failed;
}
