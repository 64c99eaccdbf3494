#pragma once

#include <algorithm>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "errors.hpp"

namespace atlaskit {

/// Outcome of one named check: the first witness is kept, later ones only counted.
struct Check {
  std::string name;
  bool passed = true;
  std::string witness;
  std::size_t violations = 0;
};

/// Structured validator output. Every axiom gets an entry, so callers can
/// assert on specific names even when several axioms fail at once.
class ValidationReport {
 public:
  ValidationReport() = default;

  /// Registers a check that passes unless fail() is called for it.
  Check& declare(const std::string& name) {
    if (auto* c = find(name)) return *c;
    checks_.push_back(Check{name, true, {}, {}});
    return checks_.back();
  }

  void fail(const std::string& name, const std::string& witness) {
    Check& c = declare(name);
    if (c.passed) {
      c.passed = false;
      c.witness = witness;
    }
    ++c.violations;
  }

  void note(const std::string& line) { notes_.push_back(line); }

  bool valid() const {
    return std::all_of(checks_.begin(), checks_.end(), [](const Check& c) { return c.passed; });
  }

  bool passed(const std::string& name) const {
    const Check* c = find(name);
    if (c == nullptr) throw InputError("no check named '" + name + "'");
    return c->passed;
  }

  const Check* find(const std::string& name) const {
    for (const auto& c : checks_)
      if (c.name == name) return &c;
    return nullptr;
  }

  Check* find(const std::string& name) {
    for (auto& c : checks_)
      if (c.name == name) return &c;
    return nullptr;
  }

  const std::vector<Check>& checks() const { return checks_; }
  const std::vector<std::string>& notes() const { return notes_; }

  std::vector<std::string> failures() const {
    std::vector<std::string> out;
    for (const auto& c : checks_)
      if (!c.passed) out.push_back(c.name);
    return out;
  }

  /// Appends every check of `other`, prefixing names with `prefix`.
  void merge(const ValidationReport& other, const std::string& prefix = "") {
    for (const auto& c : other.checks_) {
      Check& mine = declare(prefix + c.name);
      if (!c.passed && mine.passed) {
        mine.passed = false;
        mine.witness = c.witness;
      }
      mine.violations += c.violations;
    }
    for (const auto& n : other.notes_) notes_.push_back(n);
  }

  /// One line per check: `<name>: <pass|fail> [witness]`, then notes.
  std::string to_text() const {
    std::ostringstream os;
    for (const auto& c : checks_) {
      os << c.name << ": " << (c.passed ? "pass" : "fail");
      if (!c.passed && !c.witness.empty()) os << " " << c.witness;
      os << "\n";
    }
    for (const auto& n : notes_) os << "NOTE " << n << "\n";
    return os.str();
  }

 private:
  std::vector<Check> checks_;
  std::vector<std::string> notes_;
};

inline std::ostream& operator<<(std::ostream& os, const ValidationReport& r) { return os << r.to_text(); }

/// Thrown when an operation requires a valid input and receives an invalid one.
class ReportError : public InvalidStructure {
 public:
  ReportError(const std::string& what, ValidationReport report)
      : InvalidStructure(what + "\n" + report.to_text()), report_(std::move(report)) {}

  const ValidationReport& report() const noexcept { return report_; }

 private:
  ValidationReport report_;
};

}  // namespace atlaskit
