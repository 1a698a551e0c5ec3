#pragma once

#include <string>
#include <utility>
#include <vector>

namespace fkgraph {

/// Outcome of a self-check: counterexamples are collected, never thrown.
struct Report {
  std::string name;
  std::size_t checks = 0;
  std::vector<std::string> failures;

  Report() = default;
  explicit Report(std::string n) : name(std::move(n)) {}

  bool ok() const { return failures.empty(); }

  void expect(bool condition, const std::string& what) {
    ++checks;
    if (!condition && failures.size() < kMaxFailures) failures.push_back(what);
  }

  static constexpr std::size_t kMaxFailures = 20;
};

}  // namespace fkgraph
