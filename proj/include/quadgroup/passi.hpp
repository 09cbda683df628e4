#pragma once

// Integral group rings, powers of the augmentation ideal, relative
// polynomial maps and the groups P_n(G, B) = I(G) / (I(B)I(G) + I^{n+1}(G)).

#include <optional>
#include <string>
#include <vector>

#include "quadgroup/quadmaps.hpp"

namespace qg {

/// An element of Z(G): coefficient of element g at index g.
using RingElt = Vec;

namespace ring {

RingElt unit(const FiniteGroup& g, Elem a);
/// a - 1
RingElt minus_one(const FiniteGroup& g, Elem a);
RingElt mul(const FiniteGroup& g, const RingElt& x, const RingElt& y);
RingElt add(const RingElt& x, const RingElt& y);
RingElt sub(const RingElt& x, const RingElt& y);
/// xy - yx
RingElt commutator(const FiniteGroup& g, const RingElt& x, const RingElt& y);
BigInt augmentation(const RingElt& x);

}  // namespace ring

/// I^k(G) as a sublattice of Z^{|G|}, built as I^{k-1}(G) · (a - 1); I^0 = Z(G).
Lattice ideal_power(const FiniteGroup& g, int k, const Limits& limits = {});
/// I(B)I(G), spanned by (b - 1)(a - 1).
Lattice ideal_product(const Subgroup& b, const Limits& limits = {});

/// A function from a finite group into a finitely generated abelian group.
struct AbValuedMap {
  FiniteGroup domain;
  FgAb target;
  std::vector<Vec> values;

  /// Linear extension to Z(G).
  Vec extend(const RingElt& x) const;
  /// f(ab) - f(a) - f(b)
  Vec deviation(Elem a, Elem b) const;
};

struct PassiGroup {
  FiniteGroup g;
  Subgroup b;
  int n = 0;
  Lattice relations;  // I(B)I(G) + I^{n+1}(G)
  /// Cokernel on the coordinates of the non-identity elements: x in I(G) is
  /// determined by its coefficients off the identity.
  Presented pres;
  /// For n = 2 and central B: μ_2 on T ⊗ T, T = G/BG'.
  std::optional<AbelianView> t;
  std::optional<TensorProduct> square;
  std::optional<AbMap> mu2;
  CheckList checks;

  const FgAb& group() const { return pres.group; }
  /// ρ_n; throws AlgebraError unless x lies in I(G).
  Vec rho(const RingElt& x) const;
  /// p_n(a) = ρ_n(a - 1)
  Vec p(Elem a) const;
};

/// B must be normal and n <= max_degree.  With check_reductions the two
/// reduction isomorphisms to G/γ_{n+1} and to Bγ_n are built and verified.
PassiGroup passi_group(const FiniteGroup& g, const Subgroup& b, int n, const Limits& limits = {},
                       bool check_reductions = true);

/// P_n(φ): P_n(G, B) -> P_n(G', B') for φ(B) ⊆ B'.
AbMap passi_map(const GroupHom& phi, const PassiGroup& src, const PassiGroup& dst);

struct PolyVerdict {
  int degree = 0;
  Subgroup relative;
  bool passed = false;
  /// Ring element in 1 + I(B)I(G) + I^{n+1}(G) not killed by f̄ (the unit
  /// element 1 when f(1) != 0).
  std::optional<RingElt> witness;
  std::string reason;
};

/// Vanishing of f̄ on a lattice basis of I(B)I(G) + I^{n+1}(G), plus f(1) = 0.
PolyVerdict is_polynomial(const AbValuedMap& f, int n, const Subgroup& b, const Limits& limits = {});
PolyVerdict is_polynomial(const AbValuedMap& f, const PassiGroup& p);
/// The inductive characterization: f ≡ 0 for n = 0; otherwise f(1) = 0,
/// d_f(B × G) = 0 and every d_f(a, -) of absolute degree <= n - 1.
PolyVerdict is_polynomial_rec(const AbValuedMap& f, int n, const Subgroup& b, const Limits& limits = {});

/// d_f(a, b) = f̄((a - 1)(b - 1)) for all pairs (f normalized).
CheckList deviation_ring_identity(const AbValuedMap& f);
/// [a, b] - 1 = [a - 1, b - 1] a^{-1} b^{-1} in Z(G) and I(γ_n(G)) ⊆ I^n(G).
CheckList gamma_ideal_check(const FiniteGroup& g, int n, const Limits& limits = {});

struct PolyFactorization {
  AbMap fbar;                // P_n(G, B) -> A
  std::optional<AbMap> w;    // T ⊗ T -> A, for n = 2 and central B
  CheckList checks;
};
/// Throws AlgebraError unless f is polynomial of degree <= p.n relative p.b.
PolyFactorization factor_poly(const AbValuedMap& f, const PassiGroup& p, const Limits& limits = {});

/// The left Z(G/B)-module structure of P_n(G, B) and the derivation law
/// p_n(ab) = ā·p_n(b) + p_n(a).
CheckList derivation_check(const PassiGroup& p);

/// Exactness of B -> P_n(G, B) -> P_n(G/B) -> 0 for abelian normal B.
CheckList passi_sequence_check(const FiniteGroup& g, const Subgroup& b, int n, const Limits& limits = {});

struct BipolyVerdict {
  bool passed = false;
  std::string reason;  // which partial map failed, at which basepoint
};
/// f: G × G -> A with values[a·|G| + b]; every a ↦ f(a, b0) - f(1, b0) of
/// degree <= m and every b ↦ f(a0, b) - f(a0, 1) of degree <= n.
BipolyVerdict bipolynomial(const FiniteGroup& g, const FgAb& target, const std::vector<Vec>& values, int m, int n,
                           const Limits& limits = {});

}  // namespace qg
