#include "tilt/report.hpp"

#include <sstream>

namespace tilt {

namespace {

std::string fnv1a_hex(const std::string& s) {
  unsigned long long h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream os;
  os << std::hex << h;
  return os.str();
}

}  // namespace

Report::Report(std::string command) : command_(std::move(command)) {
  human_.push_back("tiltlab " + command_);
  machine_.push_back("command " + command_);
}

void Report::input(const std::string& name, const std::string& contents) {
  std::string d = fnv1a_hex(contents);
  human_.push_back("input " + name + " (digest " + d + ")");
  machine_.push_back("input " + name + " " + d);
}

void Report::note(const std::string& text) { human_.push_back(text); }

void Report::diagram(const std::string& name, const std::string& body) {
  human_.push_back(name + ":");
  std::istringstream in(body);
  std::string line;
  std::ostringstream flat;
  while (std::getline(in, line)) {
    human_.push_back("  " + line);
    flat << (flat.tellp() > 0 ? "; " : "") << line;
  }
  machine_.push_back("diagram " + name + " " + flat.str());
}

void Report::kv(const std::string& key, const std::string& value) {
  human_.push_back(key + ": " + value);
  machine_.push_back(key + " " + value);
}

void Report::kv(const std::string& key, std::size_t value) { kv(key, std::to_string(value)); }

void Report::table(const std::string& name, const std::vector<std::size_t>& dims) {
  std::ostringstream os;
  for (std::size_t d : dims) os << " " << d;
  human_.push_back(name + ":" + os.str());
  machine_.push_back("table " + name + os.str());
}

void Report::check(const std::string& name, bool pass, const std::string& bound,
                   const std::string& detail) {
  ++checks_;
  if (!pass) ++failures_;
  std::string b = bound.empty() ? "" : " (" + bound + ")";
  std::string d = detail.empty() ? "" : ": " + detail;
  human_.push_back(std::string("check ") + name + b + ": " + (pass ? "PASS" : "FAIL") + d);
  std::string mb = bound;
  for (char& c : mb)
    if (c == ' ') c = '=';
  machine_.push_back("check " + name + " " + (pass ? "pass" : "fail") +
                     (mb.empty() ? "" : " " + mb) + (detail.empty() ? "" : " # " + detail));
}

std::string Report::str() const {
  std::ostringstream os;
  for (const std::string& l : human_) os << l << "\n";
  os << (failures_ == 0 ? "RESULT: PASS" : "RESULT: FAIL") << " (" << (checks_ - failures_) << "/"
     << checks_ << " checks)\n";
  os << "```\n";
  for (const std::string& l : machine_) os << l << "\n";
  os << "result " << (failures_ == 0 ? "pass" : "fail") << " " << (checks_ - failures_) << "/"
     << checks_ << "\n";
  os << "```\n";
  return os.str();
}

}  // namespace tilt
