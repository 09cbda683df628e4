#pragma once

// Reports in two renderings, JSON and aligned text, produced from one JSON
// document so that both carry the same findings.

#include <ostream>
#include <string>

#include "cli_io.hpp"
#include "quadgroup/verify.hpp"

namespace qg::cli {

inline constexpr const char* kSchema = "quadgroup-report/1";

class Report {
 public:
  explicit Report(std::string command);

  /// Command-specific findings.
  Json& results() { return root_["results"]; }
  void add_section(const std::string& title, Json instance, const CheckList& checks);
  /// A negative verdict that is not itself a check (e.g. "not quadratic").
  void fail_verdict() { verdict_failed_ = true; }

  bool failed() const;
  Json document() const;
  std::string json() const;
  std::string text() const;

 private:
  Json root_;
  bool verdict_failed_ = false;
};

Json checks_json(const CheckList& checks);
Json elements_json(const std::vector<Elem>& elements);
Json vec_json(const Vec& v);
Json factors_json(const FgAb& a);
Json matrix_json(const AbMap& m);
Json group_json(const FiniteGroup& g);

/// The battery over the named zoo groups as a "verify" report.  Per-instance
/// wall times go to `timings` when given; they never enter the report.
Report verify_report(const std::vector<std::string>& names, const Limits& limits, std::ostream* timings = nullptr);

}  // namespace qg::cli
