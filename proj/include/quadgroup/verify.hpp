#pragma once

// Cross-construction checks: Q(G, B)^ab against P_2(G, B), the three exact
// sequences around P_2(G, B), and the battery over a zoo of small groups.

#include <string>
#include <vector>

#include "quadgroup/passi.hpp"
#include "quadgroup/universal_q.hpp"

namespace qg {

struct TheoremReport {
  std::string theorem;
  std::string group;
  std::size_t group_order = 0;
  /// Elements of B; empty for group-level reports.
  std::vector<Elem> subgroup;
  bool group_level = false;
  CheckList checks;
  double seconds = 0;  // wall time, not part of any serialized report
};

/// α: Q(G, B)^ab -> P_2(G, B) from the universal property of q, its inverse
/// from that of p_2, and α ab q = p_2, α ab w_q = μ_2 pointwise.  B central.
TheoremReport q_abelianization_check(const FiniteGroup& g, const Subgroup& b, const Limits& limits = {});

/// Exactness of
///   0 -> Ker c_2 -> T⊗T -> P_2(G, B) -> G^ab -> 1
///   0 -> Λ²T -> BG'/γ_3 ⊕ T⊗T -> P_2(G, B) -> T -> 1
///   0 -> Bγ_3/γ_3 -> P_2(G, B) -> P_2(G/B) -> 0
/// with T = G/BG', node by node, plus order bookkeeping and p_2 i c_2 = μ_2 l_2.
/// B central.
TheoremReport passi_sequences_check(const FiniteGroup& g, const Subgroup& b, const Limits& limits = {});

/// Names accepted by zoo_group, in battery order.
std::vector<std::string> default_zoo();
/// C2, C4, C2xC2, C6, Q8, D4, S3, D8 (order 16), Heis3.  Throws ParseError
/// for any other name.
FiniteGroup zoo_group(const std::string& name);

/// Every group of the selection with every subgroup of its centre, in zoo
/// order then subgroup order.  Instances run concurrently; the result order
/// does not depend on scheduling.
std::vector<TheoremReport> run_battery(const std::vector<std::string>& selection, const Limits& limits = {});

struct BatterySummary {
  std::size_t claims = 0, instances = 0, passed = 0, failed = 0, skipped = 0;
  std::string line() const;
};
BatterySummary summarize(const std::vector<TheoremReport>& reports);

}  // namespace qg
