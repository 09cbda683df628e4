#include "quadgroup/report.hpp"

#include <utility>

namespace qg {

std::string to_string(Status s) {
  switch (s) {
    case Status::Pass:
      return "PASS";
    case Status::Fail:
      return "FAIL";
    case Status::Skipped:
      return "SKIPPED";
  }
  return "?";
}

Check& CheckList::add(std::string name, bool passed, std::string detail, std::vector<std::int64_t> witness) {
  checks.push_back(Check{std::move(name), passed ? Status::Pass : Status::Fail, std::move(detail), std::move(witness)});
  return checks.back();
}

Check& CheckList::skip(std::string name, std::string reason) {
  checks.push_back(Check{std::move(name), Status::Skipped, std::move(reason), {}});
  return checks.back();
}

void CheckList::append(const CheckList& other, const std::string& prefix) {
  for (Check c : other.checks) {
    if (!prefix.empty()) c.name = prefix + "." + c.name;
    checks.push_back(std::move(c));
  }
}

bool CheckList::all_pass() const { return count(Status::Fail) == 0; }

std::size_t CheckList::count(Status s) const {
  std::size_t n = 0;
  for (const auto& c : checks) n += c.status == s;
  return n;
}

const Check* CheckList::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

}  // namespace qg
