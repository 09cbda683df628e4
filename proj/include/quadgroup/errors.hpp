#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace qg {

/// Malformed input files or command-line usage.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input that parses but violates an algebraic requirement (non-associative
/// table, subgroup not normal, map not quadratic, ...).  The message carries
/// the witness.
class AlgebraError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A configured size or work budget would be exceeded.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A postcondition that holds mathematically failed at runtime.  Seeing one
/// of these means the library is wrong, not the input.
class LibraryDefect : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Resource bounds shared by every exhaustive computation.
struct Limits {
  std::uint64_t max_order = 10'000;        // materialized group tables
  std::uint64_t scan_budget = 10'000'000;  // pair/triple scans
  std::uint64_t enum_cap = 1'000'000;      // element enumeration of FgAb
  int max_degree = 3;                      // Passi degree
  std::uint64_t pointwise_budget = 1'000'000'000;  // nested-loop identity checks
};

inline void require_within(std::uint64_t value, std::uint64_t cap,
                           const std::string& what) {
  if (value > cap)
    throw CapExceeded(what + ": " + std::to_string(value) + " exceeds cap " +
                      std::to_string(cap));
}

inline void ensure(bool condition, const std::string& what) {
  if (!condition) throw LibraryDefect(what);
}

}  // namespace qg
