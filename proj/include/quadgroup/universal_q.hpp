#pragma once

// The universal quadratic group Q(G, B) = (T ⊗ T) × G, T = G/BG', with the
// law (x, a)(y, b) = (x + y - ā⊗b̄, ab); functoriality, the free-group
// formula and quadratic maps on presented groups.

#include <optional>
#include <vector>

#include "quadgroup/quadmaps.hpp"

namespace qg {

struct QGroup {
  FiniteGroup base;
  Subgroup relative;
  AbelianView t;         // G -> T = G/BG'
  TensorProduct square;  // T ⊗ T
  /// Element (x, a) has index tensor_index(x)·|G| + a.
  FiniteGroup group;
  GroupFunction q;      // a -> (0, a)
  std::vector<Elem> w;  // tensor index -> (x, 1)
  GroupHom id_hat;      // (x, a) -> a
  /// Cocycle data and the central extension T⊗T -> Q -> G.
  CheckList checks;

  Elem element(std::uint64_t tensor_index, Elem a) const {
    return static_cast<Elem>(tensor_index * base.size() + a);
  }
  std::uint64_t tensor_index(Elem e) const { return e / base.size(); }
  Elem base_part(Elem e) const { return static_cast<Elem>(e % base.size()); }
  Elem w_of(const Vec& x) const { return w[square.group().index_of(x)]; }
};

/// Throws CapExceeded when |T⊗T|·|G| exceeds max_order.
QGroup build_q(const FiniteGroup& g, const std::optional<Subgroup>& relative = std::nullopt,
               const Limits& limits = {});

struct Factorization {
  GroupHom hat;  // f̂: Q -> H with f̂ q = f
  CheckList checks;
};
/// f̂(x, a) = w_f(x) f(a).  Throws AlgebraError unless f is quadratic relative
/// q.relative.
Factorization factor_quadratic(const GroupFunction& f, const QGroup& q, const Limits& limits = {});

/// Q(h) = (q_2 h)^: Q(G_1, B_1) -> Q(G_2, B_2); needs h(B_1) ⊆ B_2.
GroupHom q_of_hom(const GroupHom& h, const QGroup& q1, const QGroup& q2, const Limits& limits = {});

/// Class of Q(G) against the class of G.
CheckList q_nilpotency(const FiniteGroup& g, const Limits& limits = {});

/// Exactness of Q(G_1) × T_1⊗T_2 × T_2⊗T_1 -> Q(G_2) -> Q(G_3) -> 1 for an
/// exact G_1 -> G_2 -> G_3 -> 1, and the description of Ker Q(β) through
/// q_2 α and the tensor images.  Throws AlgebraError if the input is not
/// exact.
CheckList q_sequence_check(const GroupHom& alpha, const GroupHom& beta, const Limits& limits = {});

// ---------------------------------------------------------------- free groups

struct Letter {
  std::size_t gen = 0;
  int exp = 1;  // +1 or -1
  bool operator==(const Letter&) const = default;
};
using FreeWord = std::vector<Letter>;

FreeWord free_reduce(const FreeWord& w);
std::string to_string(const FreeWord& w);
/// Exponent sum of each generator.
std::vector<long> exponent_sums(const FreeWord& w, std::size_t rank);

struct FreeValue {
  Vec tensor;     // coefficient of x̄⊗ȳ at x·rank + y
  FreeWord word;  // freely reduced
};
/// φq(w) for the free group of the given rank, summing the explicit formula
/// over the spelling as given.
FreeValue free_eval(const FreeWord& w, std::size_t rank);

// ---------------------------------------------------------------- presentations

struct Presentation {
  std::size_t generators = 0;
  std::vector<FreeWord> relators;
  /// Optional evaluation onto a finite group: images of the generators.
  std::optional<FiniteGroup> target;
  std::vector<Elem> images;
};

struct GenPair {
  std::vector<Elem> chi;               // X -> H
  std::vector<std::vector<Elem>> psi;  // X × X -> H
};

/// Value in H of the quadratic map on the free group determined by (χ, ψ):
/// ψ extended linearly over the tensor part times the χ-product of w.
/// Assumes Im ψ is abelian and commutes with Im χ.
Elem free_quadratic_value(const FiniteGroup& h, const GenPair& gp, const FreeWord& w);

struct PresentedVerdict {
  bool accepted = false;
  CheckList conditions;  // commuting_images, relator_values, relator_pairings
};
/// Throws AlgebraError when the data do not have the right shape.
PresentedVerdict presented_check(const Presentation& p, const FiniteGroup& h, const GenPair& gp);

/// Builds f: G -> H from shortlex words over X and certifies it.  Throws
/// AlgebraError if the pair is rejected, π is missing, not surjective or does
/// not kill the relators, or the result is not a well-defined quadratic map
/// with the prescribed values.
GroupFunction presented_build(const Presentation& p, const FiniteGroup& h, const GenPair& gp,
                              const Limits& limits = {});

}  // namespace qg
