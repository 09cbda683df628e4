#pragma once

// Pass/fail bookkeeping shared by every checker.

#include <cstdint>
#include <string>
#include <vector>

namespace qg {

enum class Status { Pass, Fail, Skipped };
std::string to_string(Status s);

struct Check {
  std::string name;
  Status status = Status::Pass;
  std::string detail;                 // reason for FAIL or SKIPPED, or a short note
  std::vector<std::int64_t> witness;  // element indices that replay the failure
};

struct CheckList {
  std::vector<Check> checks;

  Check& add(std::string name, bool passed, std::string detail = {}, std::vector<std::int64_t> witness = {});
  Check& skip(std::string name, std::string reason);
  void append(const CheckList& other, const std::string& prefix = {});
  bool all_pass() const;  // skipped checks do not count as failures
  std::size_t count(Status s) const;
  const Check* find(const std::string& name) const;
};

}  // namespace qg
