#include "z2n/report.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace z2n {

bool Report::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

Check& Report::add(std::string name, double residual, double tolerance, std::string detail) {
  // NaN residuals must fail.
  const bool ok = residual <= tolerance;
  checks.push_back({std::move(name), residual, tolerance, ok, std::move(detail)});
  return checks.back();
}

Check& Report::add_flag(std::string name, bool ok, std::string detail) {
  checks.push_back({std::move(name), ok ? 0.0 : 1.0, 0.0, ok, std::move(detail)});
  return checks.back();
}

void Report::merge(const Report& other, const std::string& prefix) {
  for (auto c : other.checks) {
    c.name = prefix + c.name;
    checks.push_back(std::move(c));
  }
  for (const auto& n : other.notes) notes.push_back(prefix + n);
}

const Check* Report::find(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

double Report::max_residual(const std::string& prefix) const {
  double m = 0.0;
  for (const auto& c : checks) {
    if (c.name.rfind(prefix, 0) == 0) m = std::max(m, c.residual);
  }
  return m;
}

std::string Report::text() const {
  std::ostringstream os;
  os << operation << ": " << (passed() ? "PASS" : "FAIL") << "\n";
  char buf[64];
  for (const auto& c : checks) {
    std::snprintf(buf, sizeof buf, "%.3e <= %.3e", c.residual, c.tolerance);
    os << "  [" << (c.passed ? "ok" : "FAIL") << "] " << c.name << "  " << buf;
    if (!c.detail.empty()) os << "  (" << c.detail << ")";
    os << "\n";
  }
  for (const auto& n : notes) os << "  note: " << n << "\n";
  return os.str();
}

}  // namespace z2n
