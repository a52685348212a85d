#include <benchmark/benchmark.h>

#include <random>
#include <string>
#include <vector>

#include "exstack/corpus.hpp"

using namespace exstack;

namespace {

const std::vector<std::string> kWords = {
    "reader", "line",  "count", "buffer", "stream", "result", "items", "index",
    "value",  "key",   "map",   "list",   "file",   "path",   "name",  "size",
    "total",  "input", "out",   "conn",   "query",  "row",    "data",  "text"};

std::string statement(std::mt19937& rng) {
  auto w = [&] { return kWords[rng() % kWords.size()]; };
  switch (rng() % 4) {
    case 0: return "    " + w() + " = " + w() + ".get(" + w() + ");\n";
    case 1: return "    if (" + w() + " != null) { " + w() + ".add(" + w() + "); }\n";
    case 2: return "    " + w() + " += " + w() + ".size() * " + std::to_string(rng() % 100) + ";\n";
    default: return "    log(" + w() + ", \"" + w() + "\");\n";
  }
}

std::string method(std::mt19937& rng, int index, int statements) {
  std::string s = "  void m" + std::to_string(index) + "() {\n";
  for (int i = 0; i < statements; ++i) s += statement(rng);
  return s + "  }\n";
}

struct Workload {
  std::vector<SourceFile> examples;
  std::vector<SourceFile> files;
};

Workload workload(int files) {
  std::mt19937 rng(7);
  Workload w;
  for (int f = 0; f < files; ++f) {
    std::string text = "class C" + std::to_string(f) + " {\n";
    for (int m = 0; m < 4; ++m) text += method(rng, m, 8 + static_cast<int>(rng() % 8));
    w.files.push_back({"f" + std::to_string(f), text + "}\n"});
  }
  for (int e = 0; e < files / 4; ++e) {
    std::string body;
    for (int i = 0; i < 10; ++i) body += statement(rng);
    w.examples.push_back({"e" + std::to_string(e), body});
  }
  return w;
}

void BM_DetectClones(benchmark::State& state, bool brute_force) {
  Workload w = workload(static_cast<int>(state.range(0)));
  CloneOptions opts;
  opts.brute_force = brute_force;
  opts.min_tokens = 20;
  for (auto _ : state) {
    benchmark::DoNotOptimize(detect_clones(w.examples, w.files, opts));
  }
}
BENCHMARK_CAPTURE(BM_DetectClones, index, false)
    ->RangeMultiplier(2)->Range(50, 400)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_DetectClones, brute_force, true)
    ->RangeMultiplier(2)->Range(50, 400)->Unit(benchmark::kMillisecond);

}  // namespace
