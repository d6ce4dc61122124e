#pragma once

// Structured verification output shared by the checking routines and the CLI.

#include <string>
#include <vector>

namespace hopfrep {

enum class Status { pass, fail, unknown, unsupported };

inline const char* status_name(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::unknown: return "unknown";
    case Status::unsupported: return "unsupported";
  }
  return "?";
}

struct Check {
  std::string name;
  Status status = Status::pass;
  std::string observed;
  std::string expected;
  std::string citation;
};

struct Report {
  std::vector<Check> checks;

  void add(std::string name, bool ok, std::string observed, std::string expected,
           std::string citation = {}) {
    checks.push_back({std::move(name), ok ? Status::pass : Status::fail, std::move(observed),
                      std::move(expected), std::move(citation)});
  }

  void add_status(std::string name, Status st, std::string observed, std::string expected,
                  std::string citation = {}) {
    checks.push_back(
        {std::move(name), st, std::move(observed), std::move(expected), std::move(citation)});
  }

  void merge(const Report& other) {
    checks.insert(checks.end(), other.checks.begin(), other.checks.end());
  }

  bool ok() const {
    for (const auto& c : checks)
      if (c.status == Status::fail) return false;
    return true;
  }

  std::size_t failures() const {
    std::size_t n = 0;
    for (const auto& c : checks)
      if (c.status == Status::fail) ++n;
    return n;
  }
};

}  // namespace hopfrep
