#include "exstack/corpus.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <regex>
#include <sstream>

#include <nlohmann/json.hpp>

#include "exstack/parser.hpp"
#include "exstack/tree_diff.hpp"

namespace exstack {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

bool read_int(std::string_view text, std::size_t& pos, std::size_t digits, int& out) {
  if (pos + digits > text.size()) return false;
  auto [end, ec] = std::from_chars(text.data() + pos, text.data() + pos + digits, out);
  if (ec != std::errc() || end != text.data() + pos + digits) return false;
  pos += digits;
  return true;
}

bool expect(std::string_view text, std::size_t& pos, char c) {
  if (pos >= text.size() || text[pos] != c) return false;
  ++pos;
  return true;
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CorpusError("cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string_view role_name(Role role) {
  return role == Role::Example ? "example" : "counterpart";
}

template <typename T>
std::optional<T> optional_field(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<T>();
}

CorpusRecord record_from_json(const json& j) {
  CorpusRecord r;
  r.id = j.at("id").get<std::string>();
  if (r.id.empty()) throw CorpusError("empty id");
  std::string role = j.value("role", "example");
  if (role == "example") {
    r.role = Role::Example;
  } else if (role == "counterpart") {
    r.role = Role::Counterpart;
  } else {
    throw CorpusError("unknown role '" + role + "'");
  }
  r.post_id = optional_field<std::int64_t>(j, "post_id");
  r.answer_id = optional_field<std::int64_t>(j, "answer_id");
  r.vote_score = optional_field<std::int64_t>(j, "vote_score");
  r.repo = j.value("repo", "");
  r.path = j.value("path", "");
  r.url = j.value("url", "");
  if (auto created = optional_field<std::string>(j, "created_at")) {
    r.created_at = parse_timestamp(*created);
    if (!r.created_at) throw CorpusError("bad created_at '" + *created + "'");
  }
  r.stars = j.value("stars", std::int64_t{0});
  r.contributors = j.value("contributors", std::int64_t{0});
  r.watches = j.value("watches", std::int64_t{0});
  return r;
}

json record_to_json(const CorpusRecord& r) {
  json j;
  j["id"] = r.id;
  j["role"] = role_name(r.role);
  if (r.post_id) j["post_id"] = *r.post_id;
  if (r.answer_id) j["answer_id"] = *r.answer_id;
  if (r.vote_score) j["vote_score"] = *r.vote_score;
  if (!r.repo.empty()) j["repo"] = r.repo;
  if (!r.path.empty()) j["path"] = r.path;
  if (!r.url.empty()) j["url"] = r.url;
  if (r.created_at) j["created_at"] = format_timestamp(*r.created_at);
  if (r.role == Role::Counterpart) {
    j["stars"] = r.stars;
    j["contributors"] = r.contributors;
    j["watches"] = r.watches;
  }
  return j;
}

template <typename F>
void for_each_line(std::istream& in, F&& f) {
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      f(line);
    } catch (const json::exception& e) {
      throw CorpusError("line " + std::to_string(number) + ": " + e.what());
    } catch (const CorpusError& e) {
      throw CorpusError("line " + std::to_string(number) + ": " + e.what());
    }
  }
}

double median_of(std::vector<double> values) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  std::size_t n = values.size();
  return n % 2 == 1 ? values[n / 2] : (values[n / 2 - 1] + values[n / 2]) / 2.0;
}

}  // namespace

std::optional<Timestamp> parse_timestamp(std::string_view text) {
  using namespace std::chrono;
  std::size_t pos = 0;
  int y = 0, mo = 0, d = 0, h = 0, mi = 0, s = 0;
  if (!read_int(text, pos, 4, y) || !expect(text, pos, '-') ||
      !read_int(text, pos, 2, mo) || !expect(text, pos, '-') ||
      !read_int(text, pos, 2, d)) {
    return std::nullopt;
  }
  year_month_day date{year{y}, month{static_cast<unsigned>(mo)},
                      day{static_cast<unsigned>(d)}};
  if (!date.ok()) return std::nullopt;
  int offset = 0;
  if (pos < text.size() && (text[pos] == 'T' || text[pos] == ' ')) {
    ++pos;
    if (!read_int(text, pos, 2, h) || !expect(text, pos, ':') ||
        !read_int(text, pos, 2, mi)) {
      return std::nullopt;
    }
    if (pos < text.size() && text[pos] == ':') {
      ++pos;
      if (!read_int(text, pos, 2, s)) return std::nullopt;
      if (pos < text.size() && text[pos] == '.') {
        ++pos;
        std::size_t start = pos;
        while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') ++pos;
        if (pos == start) return std::nullopt;
      }
    }
    if (h > 23 || mi > 59 || s > 60) return std::nullopt;
    if (pos < text.size() && text[pos] == 'Z') {
      ++pos;
    } else if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
      int sign = text[pos] == '+' ? 1 : -1;
      ++pos;
      int oh = 0, om = 0;
      if (!read_int(text, pos, 2, oh)) return std::nullopt;
      expect(text, pos, ':');
      if (!read_int(text, pos, 2, om)) return std::nullopt;
      offset = sign * (oh * 3600 + om * 60);
    }
  }
  if (pos != text.size()) return std::nullopt;
  return sys_days{date} + hours{h} + minutes{mi} + seconds{s} - seconds{offset};
}

std::string format_timestamp(Timestamp t) {
  using namespace std::chrono;
  auto days = floor<std::chrono::days>(t);
  year_month_day date{days};
  hh_mm_ss<seconds> time{t - days};
  char buf[64];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02ld:%02ld:%02ldZ",
                static_cast<int>(date.year()), static_cast<unsigned>(date.month()),
                static_cast<unsigned>(date.day()),
                static_cast<long>(time.hours().count()),
                static_cast<long>(time.minutes().count()),
                static_cast<long>(time.seconds().count()));
  return buf;
}

std::vector<CorpusRecord> read_metadata(std::istream& in) {
  std::vector<CorpusRecord> out;
  std::set<std::string> seen;
  for_each_line(in, [&](const std::string& line) {
    CorpusRecord r = record_from_json(json::parse(line));
    if (!seen.insert(r.id).second) throw CorpusError("duplicate id '" + r.id + "'");
    out.push_back(std::move(r));
  });
  return out;
}

void write_metadata(std::ostream& out, const std::vector<CorpusRecord>& records) {
  for (const auto& r : records) out << record_to_json(r).dump() << '\n';
}

const CorpusRecord* Corpus::find(std::string_view id) const {
  auto it = std::find_if(records.begin(), records.end(),
                         [&](const CorpusRecord& r) { return r.id == id; });
  return it == records.end() ? nullptr : &*it;
}

std::vector<SourceFile> Corpus::files(Role role) const {
  std::vector<SourceFile> out;
  for (const auto& r : records) {
    if (r.role != role) continue;
    auto it = texts.find(r.id);
    if (it != texts.end()) out.push_back({r.id, it->second});
  }
  return out;
}

Corpus load_corpus(const std::string& dir) {
  Corpus corpus;
  fs::path root(dir);
  std::ifstream meta(root / "metadata.jsonl");
  if (!meta) throw CorpusError("cannot open " + (root / "metadata.jsonl").string());
  corpus.records = read_metadata(meta);
  for (const auto& r : corpus.records) {
    fs::path snippet = root / "snippets" / (r.id + ".java");
    if (!fs::exists(snippet)) throw CorpusError("missing snippet " + snippet.string());
    corpus.texts.emplace(r.id, read_text(snippet));
  }
  return corpus;
}

void save_corpus(const Corpus& corpus, const std::string& dir) {
  fs::path root(dir);
  fs::create_directories(root / "snippets");
  std::ofstream meta(root / "metadata.jsonl");
  write_metadata(meta, corpus.records);
  for (const auto& [id, text] : corpus.texts) {
    std::ofstream out(root / "snippets" / (id + ".java"), std::ios::binary);
    out << text;
  }
}

DedupResult dedup_files(std::vector<SourceFile> files) {
  DedupResult result;
  std::map<std::size_t, std::vector<std::size_t>> buckets;
  std::hash<std::string_view> hasher;
  for (auto& f : files) {
    auto& bucket = buckets[hasher(f.text)];
    auto same = std::find_if(bucket.begin(), bucket.end(), [&](std::size_t k) {
      return result.kept[k].text == f.text;
    });
    if (same != bucket.end()) {
      result.duplicate_of.emplace(f.id, result.kept[*same].id);
      continue;
    }
    bucket.push_back(result.kept.size());
    result.kept.push_back(std::move(f));
  }
  return result;
}

void attach_timestamps(std::vector<ClonePair>& pairs, const Corpus& corpus) {
  std::map<std::string_view, std::optional<Timestamp>> created;
  for (const auto& r : corpus.records) created.emplace(r.id, r.created_at);
  auto lookup = [&](const std::string& id) -> std::optional<Timestamp> {
    auto it = created.find(id);
    return it == created.end() ? std::nullopt : it->second;
  };
  for (auto& p : pairs) {
    p.example_time = lookup(p.example_id);
    p.counterpart_time = lookup(p.counterpart_id);
  }
}

TimestampFilterResult filter_by_timestamp(std::vector<ClonePair> pairs) {
  TimestampFilterResult result;
  for (auto& p : pairs) {
    if (!p.example_time || !p.counterpart_time) {
      result.missing.push_back({p.example_id, p.counterpart_id, !p.example_time,
                                !p.counterpart_time});
      continue;
    }
    if (*p.counterpart_time > *p.example_time) result.kept.push_back(std::move(p));
  }
  return result;
}

void PostIndex::add(const std::string& example_id, std::int64_t question_id,
                    std::int64_t answer_id) {
  auto& ids = examples_by_answer[answer_id];
  if (std::find(ids.begin(), ids.end(), example_id) == ids.end()) {
    ids.push_back(example_id);
  }
  answers_by_question[question_id].insert(answer_id);
}

PostIndex PostIndex::from_corpus(const Corpus& corpus) {
  PostIndex index;
  for (const auto& r : corpus.records) {
    if (r.role == Role::Example && r.post_id && r.answer_id) {
      index.add(r.id, *r.post_id, *r.answer_id);
    }
  }
  return index;
}

std::vector<PostReference> find_post_references(std::string_view text) {
  // questions/<q>[/slug[/<a>]][#<a>], a/<a>, q/<q>, answers/<a>
  static const std::regex url(
      R"((?:https?://)?(?:www\.)?stackoverflow\.com/(?:(questions)/(\d+)(?:/[^/\s#?]*(?:/(\d+))?)?(?:\?[^\s#]*)?(?:#(\d+))?|(a|answers)/(\d+)|(q)/(\d+)))",
      std::regex::icase);
  std::vector<PostReference> out;
  std::string s(text);
  for (auto it = std::sregex_iterator(s.begin(), s.end(), url);
       it != std::sregex_iterator(); ++it) {
    const auto& m = *it;
    auto id = [&](int group) { return std::stoll(m[group].str()); };
    if (m[1].matched) {
      if (m[3].matched) {
        out.push_back({id(3), true});
      } else if (m[4].matched) {
        out.push_back({id(4), true});
      } else {
        out.push_back({id(2), false});
      }
    } else if (m[5].matched) {
      out.push_back({id(6), true});
    } else if (m[7].matched) {
      out.push_back({id(8), false});
    }
  }
  return out;
}

std::set<std::string> scan_attribution(std::string_view file_text,
                                       const PostIndex& index) {
  std::set<std::string> matched;
  auto add_answer = [&](std::int64_t answer) {
    auto it = index.examples_by_answer.find(answer);
    if (it == index.examples_by_answer.end()) return;
    matched.insert(it->second.begin(), it->second.end());
  };
  for (const Token& t : tokenize(file_text).tokens) {
    if (t.cls != TokenClass::Comment) continue;
    for (const PostReference& ref : find_post_references(t.lexeme)) {
      if (ref.answer) {
        add_answer(ref.id);
        continue;
      }
      auto q = index.answers_by_question.find(ref.id);
      if (q == index.answers_by_question.end()) continue;
      for (std::int64_t answer : q->second) add_answer(answer);
    }
  }
  return matched;
}

void link_attribution(std::vector<ClonePair>& pairs, const Corpus& corpus,
                      const PostIndex& index) {
  std::map<std::string, std::set<std::string>> cache;
  for (auto& p : pairs) {
    auto it = cache.find(p.counterpart_id);
    if (it == cache.end()) {
      auto text = corpus.texts.find(p.counterpart_id);
      std::set<std::string> refs;
      if (text != corpus.texts.end()) refs = scan_attribution(text->second, index);
      it = cache.emplace(p.counterpart_id, std::move(refs)).first;
    }
    p.attributed = it->second.count(p.example_id) > 0;
  }
}

std::string_view dataset_label_name(DatasetLabel label) {
  return label == DatasetLabel::Variation ? "variation" : "adaptation";
}

std::vector<DatasetLabel> dataset_labels(const ClonePair& pair) {
  if (pair.attributed) return {DatasetLabel::Variation, DatasetLabel::Adaptation};
  return {DatasetLabel::Variation};
}

std::vector<ClonePair> select_dataset(const std::vector<ClonePair>& pairs,
                                      DatasetLabel label) {
  std::vector<ClonePair> out;
  for (const auto& p : pairs) {
    auto labels = dataset_labels(p);
    if (std::find(labels.begin(), labels.end(), label) != labels.end()) {
      out.push_back(p);
    }
  }
  return out;
}

std::string clone_pair_to_json(const ClonePair& p) {
  json j;
  j["example_id"] = p.example_id;
  j["counterpart_id"] = p.counterpart_id;
  j["method"] = p.method;
  j["counterpart_span"] = {p.counterpart_span.begin, p.counterpart_span.end};
  j["similarity"] = p.similarity;
  j["example_time"] = p.example_time ? json(format_timestamp(*p.example_time)) : json();
  j["counterpart_time"] =
      p.counterpart_time ? json(format_timestamp(*p.counterpart_time)) : json();
  j["attributed"] = p.attributed;
  json labels = json::array();
  for (DatasetLabel l : dataset_labels(p)) labels.push_back(dataset_label_name(l));
  j["labels"] = labels;
  return j.dump();
}

ClonePair clone_pair_from_json(std::string_view line) {
  try {
    json j = json::parse(line);
    ClonePair p;
    p.example_id = j.at("example_id").get<std::string>();
    p.counterpart_id = j.at("counterpart_id").get<std::string>();
    p.method = j.value("method", "");
    if (j.contains("counterpart_span")) {
      const auto& s = j.at("counterpart_span");
      p.counterpart_span = {s.at(0).get<std::size_t>(), s.at(1).get<std::size_t>()};
      if (p.counterpart_span.end < p.counterpart_span.begin) {
        throw CorpusError("inverted counterpart_span");
      }
    }
    p.similarity = j.value("similarity", 0.0);
    auto time = [&](const char* key) -> std::optional<Timestamp> {
      auto text = optional_field<std::string>(j, key);
      if (!text) return std::nullopt;
      auto t = parse_timestamp(*text);
      if (!t) throw CorpusError(std::string("bad ") + key);
      return t;
    };
    p.example_time = time("example_time");
    p.counterpart_time = time("counterpart_time");
    p.attributed = j.value("attributed", false);
    return p;
  } catch (const json::exception& e) {
    throw CorpusError(std::string("clone pair: ") + e.what());
  }
}

void write_pairs(std::ostream& out, const std::vector<ClonePair>& pairs) {
  for (const auto& p : pairs) out << clone_pair_to_json(p) << '\n';
}

std::vector<ClonePair> read_pairs(std::istream& in) {
  std::vector<ClonePair> out;
  for_each_line(in, [&](const std::string& line) {
    out.push_back(clone_pair_from_json(line));
  });
  return out;
}

PairAnalysis analyze_pair(const ClonePair& pair, std::string_view example_text,
                          std::string_view counterpart_text,
                          const ClassifyOptions& options) {
  auto a = std::make_shared<const SyntaxTree>(parse_snippet(example_text));
  auto b = std::make_shared<const SyntaxTree>(parse_snippet(counterpart_text));
  EditScript script = compute_edit_script(a, b);
  ClassifyOptions quiet = options;
  quiet.report_unclassified = false;
  PairAnalysis result;
  result.pair = pair;
  result.edit_count = script.ops.size();
  for (const auto& inst : classify(prune_inner_ops(script), quiet)) {
    result.types.insert(inst.type);
  }
  return result;
}

std::string_view counterpart_text(const Corpus& corpus, const ClonePair& pair) {
  auto it = corpus.texts.find(pair.counterpart_id);
  if (it == corpus.texts.end()) {
    throw CorpusError("unknown counterpart '" + pair.counterpart_id + "'");
  }
  std::string_view text = it->second;
  if (pair.counterpart_span.empty()) return text;
  if (pair.counterpart_span.end > text.size()) {
    throw CorpusError("span outside counterpart '" + pair.counterpart_id + "'");
  }
  return text.substr(pair.counterpart_span.begin, pair.counterpart_span.size());
}

std::string_view example_text(const Corpus& corpus, const ClonePair& pair) {
  auto it = corpus.texts.find(pair.example_id);
  if (it == corpus.texts.end()) {
    throw CorpusError("unknown example '" + pair.example_id + "'");
  }
  return it->second;
}

LiftResult lift_corpus(const Corpus& corpus, const std::vector<ClonePair>& pairs,
                       const ClassifyOptions& options) {
  std::map<std::string, std::vector<const ClonePair*>> by_example;
  for (const auto& p : pairs) by_example[p.example_id].push_back(&p);
  LiftResult result;
  for (auto& [id, group] : by_example) {
    try {
      auto example = std::make_shared<const SyntaxTree>(
          parse_snippet(std::string(example_text(corpus, *group.front()))));
      std::vector<std::pair<CounterpartInfo, const ClonePair*>> infos;
      for (const ClonePair* p : group) {
        CounterpartInfo info;
        info.id = p->counterpart_id;
        if (!p->method.empty()) info.id += "#" + p->method;
        if (const CorpusRecord* r = corpus.find(p->counterpart_id)) {
          info.repo = r->repo;
          info.path = r->path;
          info.url = r->url;
          info.stars = r->stars;
          info.contributors = r->contributors;
          info.watches = r->watches;
        }
        infos.emplace_back(std::move(info), p);
      }
      std::stable_sort(infos.begin(), infos.end(), [](const auto& x, const auto& y) {
        return x.first.stars > y.first.stars;
      });
      std::vector<CounterpartDiff> diffs;
      for (auto& [info, p] : infos) {
        try {
          auto cp = std::make_shared<const SyntaxTree>(
              parse_snippet(std::string(counterpart_text(corpus, *p))));
          diffs.push_back(make_counterpart_diff(std::move(info), example, cp, options));
        } catch (const ParseError& e) {
          result.failures.push_back({id, p->counterpart_id + ": " + e.what()});
        }
      }
      if (diffs.empty()) continue;
      result.templates.push_back(lift_template(*example, diffs, id));
    } catch (const std::exception& e) {
      result.failures.push_back({id, e.what()});
    }
  }
  return result;
}

StatsReport aggregate_stats(const std::vector<PairAnalysis>& analyses) {
  StatsReport report;
  for (DatasetLabel label : {DatasetLabel::Variation, DatasetLabel::Adaptation}) {
    std::map<std::string, std::pair<std::size_t, std::size_t>> edits;
    std::map<std::string, std::set<AdaptationType>> types;
    std::size_t pairs = 0;
    for (const auto& a : analyses) {
      auto labels = dataset_labels(a.pair);
      if (std::find(labels.begin(), labels.end(), label) == labels.end()) continue;
      ++pairs;
      auto& [total, count] = edits[a.pair.example_id];
      total += a.edit_count;
      ++count;
      types[a.pair.example_id].insert(a.types.begin(), a.types.end());
    }
    if (edits.empty()) continue;
    LabelStats& stats = report.labels[label];
    stats.examples = edits.size();
    stats.pairs = pairs;
    std::vector<double> positive;
    for (const auto& [id, tc] : edits) {
      double mean = static_cast<double>(tc.first) / static_cast<double>(tc.second);
      stats.mean_edits_by_example[id] = mean;
      if (mean > 0.0) positive.push_back(mean);
    }
    stats.examples_with_edits = positive.size();
    stats.median_edits = median_of(positive);
    double sum = 0.0;
    for (double v : positive) sum += v;
    stats.mean_edits = positive.empty() ? 0.0 : sum / static_cast<double>(positive.size());
    for (const auto& [id, set] : types) {
      for (AdaptationType t : set) {
        if (t != AdaptationType::Unclassified) ++stats.type_frequency[t];
      }
    }
  }
  return report;
}

std::string stats_to_json(const StatsReport& report) {
  json doc = json::object();
  for (const auto& [label, stats] : report.labels) {
    json j;
    j["examples"] = stats.examples;
    j["pairs"] = stats.pairs;
    j["examples_with_edits"] = stats.examples_with_edits;
    j["median_edits"] = stats.median_edits;
    j["mean_edits"] = stats.mean_edits;
    j["mean_edits_by_example"] = stats.mean_edits_by_example;
    json freq = json::object();
    for (const auto& [type, n] : stats.type_frequency) {
      freq[std::string(adaptation_type_name(type))] = n;
    }
    j["type_frequency"] = freq;
    doc[std::string(dataset_label_name(label))] = j;
  }
  return doc.dump(2);
}

}  // namespace exstack
