#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "exstack/classifier.hpp"
#include "exstack/corpus.hpp"
#include "exstack/parser.hpp"
#include "exstack/service.hpp"
#include "exstack/template.hpp"
#include "exstack/tree_diff.hpp"

namespace fs = std::filesystem;
using namespace exstack;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<ClonePair> load_pairs(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_pairs(in);
}

/// Writes to `path`, or stdout when it is empty or "-".
template <typename F>
void with_output(const std::string& path, F&& f) {
  if (path.empty() || path == "-") {
    f(std::cout);
    return;
  }
  if (auto parent = fs::path(path).parent_path(); !parent.empty()) {
    fs::create_directories(parent);
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  f(out);
}

ClassifyOptions classify_options(const std::string& families, bool single_count) {
  ClassifyOptions opts;
  if (!families.empty()) opts.families = MethodFamilies::load(families);
  opts.single_count = single_count;
  return opts;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adaptation-aware analysis of online code examples"};
  app.require_subcommand(1);

  std::string corpus_dir;
  std::string out;
  std::string pairs_path;
  std::string families;
  bool single_count = false;

  auto* dedup = app.add_subcommand("dedup", "Drop counterpart files with identical content");
  dedup->add_option("--corpus-dir", corpus_dir, "Corpus directory")->required();
  dedup->add_option("--out", out, "Output corpus directory")->required();

  CloneOptions clone_opts;
  auto* clones = app.add_subcommand("clones", "Detect example/method clone pairs");
  clones->add_option("--corpus-dir", corpus_dir, "Corpus directory")->required();
  clones->add_option("--out", out, "Output pairs (JSON lines)");
  clones->add_option("--threshold", clone_opts.threshold, "Similarity threshold")
      ->check(CLI::Range(0.0, 1.0));
  clones->add_option("--min-tokens", clone_opts.min_tokens, "Minimum example tokens");
  clones->add_option("--threads", clone_opts.threads, "Worker threads")
      ->check(CLI::PositiveNumber);
  clones->add_flag("--brute-force", clone_opts.brute_force,
                   "Compare all pairs instead of using the index");

  auto* link = app.add_subcommand(
      "link", "Apply the timestamp filter and mark attributed pairs");
  link->add_option("--corpus-dir", corpus_dir, "Corpus directory")->required();
  link->add_option("--pairs", pairs_path, "Pairs from `clones`")->required();
  link->add_option("--out", out, "Output dataset (JSON lines)");

  auto* stats = app.add_subcommand("stats", "Edit-count and adaptation-type statistics");
  stats->add_option("--corpus-dir", corpus_dir, "Corpus directory")->required();
  stats->add_option("--pairs", pairs_path, "Dataset from `link`")->required();
  stats->add_option("--out", out, "Output report (JSON)");
  stats->add_option("--families", families, "Method family configuration (JSON)");
  stats->add_flag("--single-count", single_count, "Count each edit under one type only");

  auto* lift = app.add_subcommand("lift", "Lift one template per example");
  lift->add_option("--corpus-dir", corpus_dir, "Corpus directory")->required();
  lift->add_option("--pairs", pairs_path, "Dataset from `link`")->required();
  lift->add_option("--out", out, "Output data directory")->required();
  lift->add_option("--families", families, "Method family configuration (JSON)");

  std::string file_a;
  std::string file_b;
  bool pruned = false;
  bool as_json = false;
  auto* diff = app.add_subcommand("diff", "Edit script between two Java snippets");
  diff->add_option("example", file_a, "Source snippet")->required()->check(CLI::ExistingFile);
  diff->add_option("counterpart", file_b, "Target snippet")->required()->check(CLI::ExistingFile);
  diff->add_flag("--pruned", pruned, "Drop ops implied by an enclosing op");
  diff->add_flag("--json", as_json, "JSON output");

  auto* classify_cmd = app.add_subcommand("classify", "Adaptation instances between two snippets");
  classify_cmd->add_option("example", file_a, "Source snippet")
      ->required()
      ->check(CLI::ExistingFile);
  classify_cmd->add_option("counterpart", file_b, "Target snippet")
      ->required()
      ->check(CLI::ExistingFile);
  classify_cmd->add_option("--families", families, "Method family configuration (JSON)");
  classify_cmd->add_flag("--single-count", single_count,
                         "Count each edit under one type only");

  std::string data_dir;
  std::string host = "127.0.0.1";
  int port = 8080;
  std::size_t max_sessions = 256;
  auto* serve = app.add_subcommand("serve", "Serve templates and selection sessions over HTTP");
  serve->add_option("--data-dir", data_dir, "Directory written by `lift`")->required();
  serve->add_option("--port", port, "Port")->check(CLI::Range(1, 65535));
  serve->add_option("--host", host, "Bind address");
  serve->add_option("--max-sessions", max_sessions, "Live session bound")
      ->check(CLI::PositiveNumber);

  CLI11_PARSE(app, argc, argv);

  try {
    if (dedup->parsed()) {
      Corpus corpus = load_corpus(corpus_dir);
      DedupResult result = dedup_files(corpus.files(Role::Counterpart));
      Corpus kept;
      for (const auto& r : corpus.records) {
        if (result.duplicate_of.count(r.id)) continue;
        kept.records.push_back(r);
        kept.texts.emplace(r.id, corpus.texts.at(r.id));
      }
      save_corpus(kept, out);
      std::cerr << "kept " << result.kept.size() << " counterpart files, dropped "
                << result.duplicate_of.size() << " duplicates\n";
    } else if (clones->parsed()) {
      Corpus corpus = load_corpus(corpus_dir);
      CloneResult result = detect_clones(corpus.files(Role::Example),
                                         corpus.files(Role::Counterpart), clone_opts);
      attach_timestamps(result.pairs, corpus);
      for (const auto& [id, message] : result.skipped) {
        std::cerr << "skipped " << id << ": " << message << '\n';
      }
      with_output(out, [&](std::ostream& os) { write_pairs(os, result.pairs); });
      std::cerr << result.pairs.size() << " clone pairs\n";
    } else if (link->parsed()) {
      Corpus corpus = load_corpus(corpus_dir);
      std::vector<ClonePair> pairs = load_pairs(pairs_path);
      attach_timestamps(pairs, corpus);
      TimestampFilterResult filtered = filter_by_timestamp(std::move(pairs));
      for (const auto& m : filtered.missing) {
        std::cerr << "missing timestamp: " << m.example_id << " / " << m.counterpart_id
                  << (m.example_missing ? " (example)" : "")
                  << (m.counterpart_missing ? " (counterpart)" : "") << '\n';
      }
      link_attribution(filtered.kept, corpus, PostIndex::from_corpus(corpus));
      with_output(out, [&](std::ostream& os) { write_pairs(os, filtered.kept); });
      std::size_t attributed = select_dataset(filtered.kept, DatasetLabel::Adaptation).size();
      std::cerr << filtered.kept.size() << " variation pairs, " << attributed
                << " adaptation pairs\n";
    } else if (stats->parsed()) {
      Corpus corpus = load_corpus(corpus_dir);
      ClassifyOptions opts = classify_options(families, single_count);
      std::vector<PairAnalysis> analyses;
      for (const auto& p : load_pairs(pairs_path)) {
        try {
          analyses.push_back(analyze_pair(p, example_text(corpus, p),
                                          counterpart_text(corpus, p), opts));
        } catch (const ParseError& e) {
          std::cerr << "skipped " << p.example_id << " / " << p.counterpart_id << ": "
                    << e.what() << '\n';
        }
      }
      std::string report = stats_to_json(aggregate_stats(analyses));
      with_output(out, [&](std::ostream& os) { os << report << '\n'; });
    } else if (lift->parsed()) {
      Corpus corpus = load_corpus(corpus_dir);
      LiftResult result =
          lift_corpus(corpus, load_pairs(pairs_path), classify_options(families, false));
      fs::create_directories(fs::path(out) / "templates");
      for (const auto& t : result.templates) {
        with_output((fs::path(out) / "templates" / (t.example_id + ".json")).string(),
                    [&](std::ostream& os) { os << template_to_json(t) << '\n'; });
      }
      for (const auto& f : result.failures) {
        std::cerr << "failed " << f.example_id << ": " << f.message << '\n';
      }
      std::cerr << result.templates.size() << " templates\n";
    } else if (diff->parsed()) {
      auto a = std::make_shared<const SyntaxTree>(parse_snippet(read_file(file_a)));
      auto b = std::make_shared<const SyntaxTree>(parse_snippet(read_file(file_b)));
      EditScript script = compute_edit_script(a, b);
      if (pruned) script = prune_inner_ops(script);
      if (as_json) {
        std::cout << serialize_edit_script(script) << '\n';
      } else {
        for (const EditOp& op : script.ops) {
          const SyntaxTree& tree = op.kind == EditKind::Insert ? *b : *a;
          const TreeNode& n = tree.node(op.node);
          std::cout << edit_kind_name(op.kind) << ' ' << label_name(n.label);
          if (!n.value.empty()) std::cout << " '" << n.value << '\'';
          if (op.kind == EditKind::Update) {
            std::cout << " -> '" << b->node(op.target).value << '\'';
          }
          LineColumn at = line_column_at(tree.text(), n.span.begin);
          std::cout << " @" << (op.kind == EditKind::Insert ? "counterpart" : "example")
                    << ':' << at.line << ':' << at.column << '\n';
        }
      }
    } else if (classify_cmd->parsed()) {
      auto a = std::make_shared<const SyntaxTree>(parse_snippet(read_file(file_a)));
      auto b = std::make_shared<const SyntaxTree>(parse_snippet(read_file(file_b)));
      EditScript script = prune_inner_ops(compute_edit_script(a, b));
      auto instances = classify(script, classify_options(families, single_count));
      std::cout << adaptation_report(script, instances) << '\n';
    } else if (serve->parsed()) {
      ServiceOptions opts;
      opts.max_sessions = max_sessions;
      Service service(TemplateStore::load_dir(data_dir), opts);
      std::cerr << "serving " << data_dir << " on http://" << host << ':' << port << '\n';
      serve_http(service, host, port);
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error at " << e.line() << ':' << e.column() << ": " << e.what()
              << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
