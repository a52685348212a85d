#include "fixtures.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace exstack::testkit {

namespace fs = std::filesystem;

std::string fixture_root() { return EXSTACK_FIXTURE_DIR; }

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const std::vector<FixturePair>& fixture_pairs() {
  static const std::vector<FixturePair> pairs = [] {
    std::vector<FixturePair> out;
    for (const auto& entry : fs::directory_iterator(fs::path(fixture_root()) / "pairs")) {
      if (!entry.is_directory()) continue;
      const fs::path dir = entry.path();
      FixturePair p;
      p.name = dir.filename().string();
      p.example = read_text((dir / "example.java").string());
      p.counterpart = read_text((dir / "counterpart.java").string());
      auto labels = nlohmann::json::parse(read_text((dir / "labels.json").string()));
      if (labels["rule"].is_string()) p.rule = labels["rule"].get<std::string>();
      p.polarity = labels["polarity"].get<std::string>();
      for (const auto& [type, count] : labels["instances"].items()) {
        p.instances[type] = count.get<int>();
      }
      out.push_back(std::move(p));
    }
    std::sort(out.begin(), out.end(),
              [](const FixturePair& x, const FixturePair& y) { return x.name < y.name; });
    return out;
  }();
  return pairs;
}

const FixturePair& fixture(const std::string& name) {
  for (const auto& p : fixture_pairs()) {
    if (p.name == name) return p;
  }
  throw std::runtime_error("no fixture " + name);
}

}  // namespace exstack::testkit
