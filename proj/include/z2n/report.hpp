#pragma once

#include <string>
#include <vector>

namespace z2n {

/// One numeric claim: a residual compared against the tolerance it must meet.
struct Check {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool passed = true;
  std::string detail;
};

struct Report {
  std::string operation;
  std::vector<Check> checks;
  std::vector<std::string> notes;

  explicit Report(std::string op = {}) : operation(std::move(op)) {}

  bool passed() const;
  /// Records residual <= tolerance.
  Check& add(std::string name, double residual, double tolerance, std::string detail = {});
  /// Records a verdict with no natural residual (exact/structural checks).
  Check& add_flag(std::string name, bool ok, std::string detail = {});
  void note(std::string text) { notes.push_back(std::move(text)); }
  void merge(const Report& other, const std::string& prefix = {});
  const Check* find(const std::string& name) const;
  /// Largest residual over checks whose name starts with prefix.
  double max_residual(const std::string& prefix) const;
  std::string text() const;
};

}  // namespace z2n
