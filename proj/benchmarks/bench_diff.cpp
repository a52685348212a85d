#include <benchmark/benchmark.h>

#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "exstack/classifier.hpp"
#include "exstack/parser.hpp"
#include "exstack/tree_diff.hpp"

namespace fs = std::filesystem;
using namespace exstack;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct TextPair {
  std::string a;
  std::string b;
};

const std::vector<TextPair>& fixture_pairs() {
  static const std::vector<TextPair> pairs = [] {
    std::vector<TextPair> out;
    for (const auto& dir : fs::directory_iterator(EXSTACK_FIXTURE_DIR)) {
      out.push_back({slurp(dir.path() / "example.java"),
                     slurp(dir.path() / "counterpart.java")});
    }
    return out;
  }();
  return pairs;
}

// A method body of `n` statements; every 7th one differs between versions.
std::string long_method(int n, bool variant) {
  std::string s = "public int run(int[] xs) {\n  int acc = 0;\n";
  for (int i = 0; i < n; ++i) {
    std::string v = "v" + std::to_string(i);
    if (variant && i % 7 == 0) {
      s += "  if (xs.length > " + std::to_string(i) + ") { acc -= xs[" +
           std::to_string(i) + "]; }\n";
    } else {
      s += "  int " + v + " = xs[" + std::to_string(i % 5) + "] * " +
           std::to_string(i) + ";\n  acc += " + v + ";\n";
    }
  }
  return s + "  return acc;\n}\n";
}

void BM_ParseFixtures(benchmark::State& state) {
  const auto& pairs = fixture_pairs();
  for (auto _ : state) {
    for (const auto& p : pairs) benchmark::DoNotOptimize(parse_snippet(p.a));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(pairs.size()));
}
BENCHMARK(BM_ParseFixtures);

void BM_DiffFixtures(benchmark::State& state) {
  std::vector<std::pair<std::shared_ptr<const SyntaxTree>, std::shared_ptr<const SyntaxTree>>>
      trees;
  for (const auto& p : fixture_pairs()) {
    trees.emplace_back(std::make_shared<const SyntaxTree>(parse_snippet(p.a)),
                       std::make_shared<const SyntaxTree>(parse_snippet(p.b)));
  }
  for (auto _ : state) {
    for (const auto& [a, b] : trees) {
      benchmark::DoNotOptimize(prune_inner_ops(compute_edit_script(a, b)));
    }
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(trees.size()));
}
BENCHMARK(BM_DiffFixtures);

void BM_ClassifyFixtures(benchmark::State& state) {
  std::vector<EditScript> scripts;
  for (const auto& p : fixture_pairs()) {
    scripts.push_back(prune_inner_ops(
        compute_edit_script(std::make_shared<const SyntaxTree>(parse_snippet(p.a)),
                            std::make_shared<const SyntaxTree>(parse_snippet(p.b)))));
  }
  for (auto _ : state) {
    for (const auto& s : scripts) benchmark::DoNotOptimize(classify(s));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(scripts.size()));
}
BENCHMARK(BM_ClassifyFixtures);

void BM_DiffLongMethod(benchmark::State& state) {
  auto a = std::make_shared<const SyntaxTree>(
      parse_snippet(long_method(static_cast<int>(state.range(0)), false)));
  auto b = std::make_shared<const SyntaxTree>(
      parse_snippet(long_method(static_cast<int>(state.range(0)), true)));
  for (auto _ : state) benchmark::DoNotOptimize(compute_edit_script(a, b));
  state.counters["nodes"] = static_cast<double>(a->size());
}
BENCHMARK(BM_DiffLongMethod)->RangeMultiplier(4)->Range(16, 1024)->Unit(benchmark::kMillisecond);

}  // namespace
