#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace exstack::testkit {

/// One `tests/fixtures/pairs/<name>` directory.
struct FixturePair {
  std::string name;
  std::string example;
  std::string counterpart;
  /// Rule the fixture targets; empty for mixed fixtures.
  std::optional<std::string> rule;
  /// "positive", "negative" or "mixed".
  std::string polarity;
  /// Hand-labeled instance counts per adaptation type name.
  std::map<std::string, int> instances;
};

[[nodiscard]] std::string fixture_root();
[[nodiscard]] std::string read_text(const std::string& path);
/// Sorted by name.
[[nodiscard]] const std::vector<FixturePair>& fixture_pairs();
[[nodiscard]] const FixturePair& fixture(const std::string& name);

}  // namespace exstack::testkit
