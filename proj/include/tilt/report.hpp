#pragma once

#include <string>
#include <vector>

namespace tilt {

/// Deterministic verification report: a human-readable section followed by a
/// fenced machine-readable block of key-value pairs and dimension tables.
class Report {
 public:
  explicit Report(std::string command);

  void input(const std::string& name, const std::string& contents);
  void note(const std::string& text);
  void diagram(const std::string& name, const std::string& body);
  void kv(const std::string& key, const std::string& value);
  void kv(const std::string& key, std::size_t value);
  void table(const std::string& name, const std::vector<std::size_t>& dims);
  /// Verdict of one check; `bound` names the depth/degree the check ran to,
  /// e.g. "depth 8", empty for unbounded checks.
  void check(const std::string& name, bool pass, const std::string& bound,
             const std::string& detail = "");

  bool all_passed() const { return failures_ == 0; }
  std::size_t failures() const { return failures_; }
  std::string str() const;

 private:
  std::string command_;
  std::vector<std::string> human_;
  std::vector<std::string> machine_;
  std::size_t checks_ = 0, failures_ = 0;
};

}  // namespace tilt
