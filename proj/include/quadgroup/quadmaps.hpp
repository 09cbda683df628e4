#pragma once

// Deviation calculus for functions between finite groups.
//
// The additive formulas of the theory are read in the codomain with one fixed
// convention: "x + y" is x·y, "-x" is x^{-1}, and the order of terms is kept
// literally.  In particular the deviation is
//
//   d_f(a, b) = f(ab) · f(b)^{-1} · f(a)^{-1}.

#include <optional>
#include <string>
#include <vector>

#include "quadgroup/abelian.hpp"
#include "quadgroup/groups.hpp"
#include "quadgroup/report.hpp"

namespace qg {

/// A total function between finite groups, given by its table.
class GroupFunction {
 public:
  GroupFunction() = default;
  GroupFunction(FiniteGroup domain, FiniteGroup codomain, std::vector<Elem> table);
  static GroupFunction from_hom(const GroupHom& h);
  static GroupFunction constant_identity(const FiniteGroup& domain, const FiniteGroup& codomain);
  /// a ↦ a^k on G.
  static GroupFunction power_map(const FiniteGroup& g, long k);

  const FiniteGroup& domain() const { return domain_; }
  const FiniteGroup& codomain() const { return codomain_; }
  const std::vector<Elem>& table() const { return table_; }
  Elem operator()(Elem a) const { return table_[a]; }

  Elem deviation(Elem a, Elem b) const;
  /// -f: x ↦ f(x)^{-1}
  GroupFunction negated() const;
  /// this ∘ first
  GroupFunction after(const GroupFunction& first) const;
  bool operator==(const GroupFunction& other) const { return table_ == other.table_; }

 private:
  FiniteGroup domain_, codomain_;
  std::vector<Elem> table_;
};

/// f + g: x ↦ f(x) g(x)
GroupFunction pointwise_product(const GroupFunction& f, const GroupFunction& g);

/// All values d_f(a, b), row-major in a.
class DeviationTable {
 public:
  explicit DeviationTable(const GroupFunction& f);
  Elem operator()(Elem a, Elem b) const { return d_[static_cast<std::size_t>(a) * n_ + b]; }
  const std::vector<Elem>& values() const { return d_; }

 private:
  std::size_t n_;
  std::vector<Elem> d_;
};

enum class QuadLaw { LeftBilinear, RightBilinear, CentralInImage, RelativeVanishing };
std::string to_string(QuadLaw law);

/// A violated law with the tuple that violates it:
///   LeftBilinear      (a, a', b):  d(aa', b) != d(a, b) d(a', b)
///   RightBilinear     (a, b, b'):  d(a, bb') != d(a, b) d(a, b')
///   CentralInImage    (a, b, c):   [d(a, b), f(c)] != 1
///   RelativeVanishing (a, b):      d(a, b) != 1 with a or b in B
struct QuadWitness {
  QuadLaw law;
  std::vector<Elem> tuple;
  std::string describe() const;
};

struct QuadVerdict {
  bool is_linear = false;
  bool is_quadratic = false;
  Subgroup relative;
  /// Least (a, b) with d(a, b) != 1, present iff not linear.
  std::optional<std::pair<Elem, Elem>> linearity_witness;
  /// Present iff not quadratic relative `relative`.
  std::optional<QuadWitness> counterexample;
  Subgroup image_subgroup;      // I_f
  Subgroup deviation_subgroup;  // D_f
  /// "exhaustive", or "generator-reduced" when bilinearity was certified by
  /// checking one argument over a generating set of the domain.
  std::string method;
};

/// Checks the laws in the order left bilinearity, right bilinearity,
/// centrality of D_f in I_f, vanishing on B; each scan is lexicographic and
/// the first failing law reports its least tuple.
QuadVerdict quadratic_verdict(const GroupFunction& f, const std::optional<Subgroup>& relative = std::nullopt,
                              const Limits& limits = {});
/// True iff the witness really violates its law for f.
bool replay(const GroupFunction& f, const QuadWitness& w, const Subgroup& relative);

struct Radical {
  Subgroup subgroup;
  CheckList checks;  // derived subgroup inside, quadratic relative rad, maximality
};
/// Throws AlgebraError if f is not quadratic.
Radical radical(const GroupFunction& f, const Limits& limits = {});

/// w_f: T ⊗ T -> D_f with T = G/BG', landing in the abelian group D_f.
struct BilinearPart {
  Subgroup relative;
  AbelianView t;             // G -> T
  TensorProduct square;      // T ⊗ T
  Subgroup deviation_group;  // D_f inside the codomain
  AbelianView d_view;        // D_f as an FgAb
  AbMap w;                   // T ⊗ T -> D_f

  /// w_f(x) as an element of the codomain.
  Elem value(const Vec& x) const;
};
/// Requires f quadratic relative B; throws AlgebraError otherwise.
BilinearPart bilinear_part(const GroupFunction& f, const std::optional<Subgroup>& relative = std::nullopt,
                           const Limits& limits = {});

/// Pointwise checks of the basic identities of a quadratic map:
///   product_expansion_left   f(ab) = d(a,b) f(a) f(b)
///   product_expansion_right  f(ab) = f(a) f(b) d(a,b)
///   deviation_formula        d(a,b) = f(a)^{-1} f(ab) f(b)^{-1}
///   inverse_formula          f(a^{-1}) = f(a)^{-1} d(a,a)
///   quotient_formula         f(ab^{-1}) = f(a) f(b)^{-1} d(ab^{-1},b)^{-1}
///   commutator_formula       f[a,b] = [f a, f b] d(a,b) d(b,a)^{-1}
///   conjugation_formula      f(aba^{-1}) = f(a) f(b) f(a)^{-1} d(a,b) d(b,a)^{-1}
///   negated_deviation        d_{-f}(a,b) = d(b,a)^{-1} f(a^{-1}b^{-1}ab)^{-1}
/// plus normalization f(1) = 1 and linearity of f on B.
CheckList identity_suite(const GroupFunction& f, const std::optional<Subgroup>& relative = std::nullopt);

struct PairComposition {
  GroupFunction composite;  // f ∘ g
  CheckList checks;
};
/// g: K -> G quadratic relative A, f: G -> H quadratic relative B.  Throws
/// AlgebraError with a witness when (f, g) is not a quadratic pair.
PairComposition pair_compose(const GroupFunction& g, const Subgroup& a, const GroupFunction& f, const Subgroup& b,
                             const Limits& limits = {});

/// Sum formula for f + g when (2_H, f) and (2_H, g) are quadratic pairs.
/// Throws AlgebraError naming the failed hypothesis.
CheckList sum_check(const GroupFunction& f, const GroupFunction& g, const Limits& limits = {});

/// One of the five properties compared by the nilpotency battery.
struct BatteryProperty {
  std::string name;
  std::optional<bool> holds;  // nullopt when skipped
  std::string detail;         // witness description or skip reason
};

struct NilpotencyReport {
  int n = 2;
  std::optional<std::size_t> nilpotency_class;
  /// two_step_nilpotent, multiplication_quadratic, products_of_linear_quadratic,
  /// squaring_quadratic, power_map_quadratic
  std::vector<BatteryProperty> properties;
  /// first_four_equivalent, class_two_implies_power_map, commutator_collection,
  /// multiplication_deviation
  CheckList checks;
};

/// The equivalences between 2-step nilpotency, quadraticity of the
/// multiplication map on G^n, of products of linear maps, of squaring, and
/// of the n-th power map; with the commutator-collection identities checked
/// pointwise for class-2 groups.
NilpotencyReport nilpotency_battery(const FiniteGroup& g, int n, const Limits& limits = {});

}  // namespace qg
