#pragma once

#include <string>
#include <vector>

namespace grpd {

// An ordered log of checked claims. Certificates carry one so a reader can
// see which checks ran and which failed.
struct Check {
  std::string claim;
  bool passed = false;
  std::string detail;
};

struct Transcript {
  std::vector<Check> checks;

  bool ok() const {
    for (const Check& c : checks)
      if (!c.passed) return false;
    return true;
  }
  bool record(std::string claim, bool passed, std::string detail = {}) {
    checks.push_back({std::move(claim), passed, std::move(detail)});
    return passed;
  }
  void append(const Transcript& other, const std::string& prefix = {}) {
    for (const Check& c : other.checks) checks.push_back({prefix + c.claim, c.passed, c.detail});
  }
  std::string first_failure() const {
    for (const Check& c : checks)
      if (!c.passed) return c.claim + (c.detail.empty() ? "" : ": " + c.detail);
    return {};
  }
  std::string to_string() const {
    std::string out;
    for (const Check& c : checks) {
      out += c.passed ? "  ok    " : "  FAIL  ";
      out += c.claim;
      if (!c.detail.empty()) out += " (" + c.detail + ")";
      out += '\n';
    }
    return out;
  }
};

}  // namespace grpd
