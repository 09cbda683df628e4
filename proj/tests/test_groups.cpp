#include <numeric>
#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "quadgroup/groups.hpp"

using namespace qg;

namespace {

std::vector<FiniteGroup> zoo() {
  return {builtin::cyclic(1),         builtin::cyclic(2),       builtin::cyclic(6),
          builtin::elementary(2, 3),  builtin::dihedral(4),     builtin::dihedral(8),
          builtin::quaternion8(),     builtin::symmetric(3),    builtin::symmetric(4),
          builtin::heisenberg(3),     builtin::power_series_units(2, 4),
          builtin::power_series_units(3, 4), builtin::lazard(builtin::LieRing::heisenberg(5)),
          builtin::direct_product(builtin::cyclic(2), builtin::symmetric(3))};
}

void check_axioms(const FiniteGroup& g) {
  const std::size_t n = g.size();
  for (Elem a = 0; a < n; ++a) {
    CHECK(g.mul(a, 0) == a);
    CHECK(g.mul(0, a) == a);
    CHECK(g.mul(a, g.inv(a)) == 0);
    CHECK(g.mul(g.inv(a), a) == 0);
    for (Elem b = 0; b < n; ++b)
      for (Elem c = 0; c < n; ++c)
        if (g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c))) FAIL("associativity");
  }
}

}  // namespace

TEST_CASE("builtin orders and axioms") {
  CHECK(builtin::dihedral(4).size() == 8);
  CHECK(builtin::heisenberg(3).size() == 27);
  CHECK(builtin::power_series_units(2, 4).size() == 8);
  CHECK(builtin::symmetric(4).size() == 24);
  CHECK(builtin::symmetric(5).size() == 120);
  CHECK(builtin::quaternion8().size() == 8);
  for (const auto& g : zoo()) {
    CAPTURE(g.name());
    check_axioms(g);
  }
}

TEST_CASE("invalid tables are rejected with a witness") {
  // not associative: a Latin square with identity 0 that is not a group
  const std::vector<std::vector<Elem>> loop = {
      {0, 1, 2, 3, 4}, {1, 0, 3, 4, 2}, {2, 4, 0, 1, 3}, {3, 2, 4, 0, 1}, {4, 3, 1, 2, 0}};
  CHECK_THROWS_WITH_AS(FiniteGroup::from_rows(loop), doctest::Contains("associativity"), AlgebraError);
  CHECK_THROWS_WITH_AS(FiniteGroup::from_rows({{1, 0}, {0, 1}}), doctest::Contains("identity"), AlgebraError);
  CHECK_THROWS_WITH_AS(FiniteGroup::from_rows({{0, 1}, {1, 1}}), doctest::Contains("inverse"), AlgebraError);
  CHECK_THROWS_WITH_AS(FiniteGroup::from_rows({{0, 1}, {1, 2}}), doctest::Contains("closure"), AlgebraError);
  CHECK_THROWS_AS(FiniteGroup::from_rows({{0, 1}, {1}}), AlgebraError);
  CHECK_THROWS_AS(builtin::cyclic(20000), CapExceeded);
}

TEST_CASE("associativity above the exhaustive limit") {
  const FiniteGroup big = builtin::cyclic(600);
  CHECK(big.associativity() == AssociativityCheck::GeneratorsAndSamples);
  CHECK(builtin::cyclic(12).associativity() == AssociativityCheck::Exhaustive);
  // Swap two entries of a row so that the table stays a Latin square but
  // multiplication by the generator 1 is no longer consistent.
  std::vector<Elem> t = big.table();
  const std::size_t n = 600;
  std::swap(t[5 * n + 7], t[5 * n + 9]);
  std::swap(t[6 * n + 7], t[6 * n + 9]);
  CHECK_THROWS_WITH_AS(FiniteGroup::from_table(t, n), doctest::Contains("associativity"), AlgebraError);
}

TEST_CASE("lower central series agrees with the naive oracle") {
  for (const auto& g : zoo()) {
    CAPTURE(g.name());
    const auto series = lower_central_series(g);
    const auto oracle_orders = oracle::naive_lcs_orders(g);
    REQUIRE(series.size() == oracle_orders.size());
    for (std::size_t i = 0; i < series.size(); ++i) CHECK(series[i].size() == oracle_orders[i]);
    CHECK(derived_subgroup(g).size() == gamma(g, 2).size());
  }
  CHECK(nilpotency_class(builtin::cyclic(5)) == 1);
  CHECK(nilpotency_class(builtin::cyclic(1)) == 0);
  CHECK(nilpotency_class(builtin::heisenberg(3)) == 2);
  CHECK(nilpotency_class(builtin::dihedral(4)) == 2);
  CHECK(nilpotency_class(builtin::dihedral(8)) == 3);
  CHECK(nilpotency_class(builtin::quaternion8()) == 2);
  CHECK_FALSE(nilpotency_class(builtin::symmetric(3)).has_value());
  CHECK(lower_central_series(builtin::symmetric(3)).back().size() == 3);
}

TEST_CASE("commutator map is bilinear in class-2 groups") {
  for (const auto& g : zoo()) {
    const auto c = nilpotency_class(g);
    if (!c || *c > 2) continue;
    CAPTURE(g.name());
    for (Elem a = 0; a < g.size(); ++a)
      for (Elem b = 0; b < g.size(); ++b)
        for (Elem x = 0; x < g.size(); ++x) {
          CHECK(g.commutator(g.mul(a, b), x) == g.mul(g.commutator(a, x), g.commutator(b, x)));
        }
  }
}

TEST_CASE("quotients") {
  const FiniteGroup d4 = builtin::dihedral(4);
  const QuotientGroup q = quotient(derived_subgroup(d4));
  CHECK(q.group.size() == 4);
  for (Elem a = 0; a < 4; ++a) CHECK(q.group.mul(a, a) == 0);
  CHECK(oracle::naive_cosets(d4, derived_subgroup(d4).elements()).size() == 4);

  const FiniteGroup s3 = builtin::symmetric(3);
  const Subgroup a3 = derived_subgroup(s3);
  CHECK(quotient(a3).group.size() == 2);
  const QuotientGroup same = quotient(Subgroup::trivial(s3));
  CHECK(same.group.table() == s3.table());

  const Subgroup not_normal = Subgroup::generated(s3, {1});
  CHECK(not_normal.size() == 2);
  CHECK_THROWS_WITH_AS(quotient(not_normal), doctest::Contains("not normal"), AlgebraError);

  for (const auto& g : zoo())
    for (const Subgroup& n : {derived_subgroup(g), center(g), gamma(g, 3)}) {
      const QuotientGroup qq = quotient(n);
      CHECK(qq.projection.kernel() == n);
      CHECK(qq.projection.image().is_whole());
      CHECK(qq.group.size() * n.size() == g.size());
      // representatives are coset minima, in increasing order
      for (std::size_t i = 0; i < qq.representative.size(); ++i) {
        CHECK(qq.projection(qq.representative[i]) == i);
        for (Elem x = 0; x < qq.representative[i]; ++x) CHECK(qq.projection(x) != i);
      }
    }
}

TEST_CASE("abelianization and subquotients") {
  const AbelianView q8 = abelianization(builtin::quaternion8());
  CHECK(q8.group == FgAb::from_ints({2, 2}));
  CHECK(abelianization(builtin::dihedral(4)).group == FgAb::from_ints({2, 2}));
  CHECK(abelianization(builtin::symmetric(4)).group == FgAb::from_ints({2}));
  CHECK(abelianization(builtin::cyclic(12)).group == FgAb::from_ints({12}));
  CHECK(abelianization(builtin::heisenberg(3)).group == FgAb::from_ints({3, 3}));
  CHECK(abelianization(builtin::elementary(2, 3)).group == FgAb::from_ints({2, 2, 2}));

  for (const auto& g : zoo()) {
    CAPTURE(g.name());
    const AbelianView ab = abelianization(g);
    const QuotientGroup q = quotient(derived_subgroup(g));
    // oracle: invariant factors of the quotient table by enumeration
    const auto expected = oracle::invariant_factors_by_enumeration(
        q.group.size(), [&](std::size_t x, std::size_t y) { return q.group.mul(static_cast<Elem>(x), static_cast<Elem>(y)); });
    CHECK(ab.group.factors_as_long() == expected);
    // the dictionary is a homomorphism onto the FgAb
    for (Elem a = 0; a < g.size(); ++a)
      for (Elem b = 0; b < g.size(); ++b) CHECK(ab(g.mul(a, b)) == ab.group.add(ab(a), ab(b)));
    for (std::size_t i = 0; i < ab.from_ab.size(); ++i) CHECK(ab.group.index_of(ab(ab.from_ab[i])) == i);
  }

  const FiniteGroup d8 = builtin::dihedral(8);
  const Subgroup z = center(d8);
  const Subgroup bg = join(z, derived_subgroup(d8));
  const Subgroup g3 = gamma(d8, 3);
  const AbelianView sq = subquotient_ab(bg, g3);
  CHECK(sq.group.order() == bg.size() / g3.size());
  CHECK(subquotient_ab(derived_subgroup(d8), derived_subgroup(d8)).group.is_trivial());
  CHECK_THROWS_WITH_AS(subquotient_ab(Subgroup::whole(builtin::symmetric(3)), Subgroup::trivial(builtin::symmetric(3))),
                       doctest::Contains("not abelian"), AlgebraError);
}

TEST_CASE("fgab_to_group") {
  CHECK(fgab_to_group(FgAb::from_ints({})).size() == 1);
  CHECK(fgab_to_group(FgAb::from_ints({4})).table() == builtin::cyclic(4).table());
  CHECK(fgab_to_group(FgAb::from_ints({2, 2})).table() == builtin::elementary(2, 2).table());
  CHECK_THROWS_AS(fgab_to_group(FgAb::from_ints({0})), AlgebraError);
  CHECK_THROWS_AS(fgab_to_group(FgAb::from_ints({100, 200})), CapExceeded);
  for (const FgAb& a : {FgAb::from_ints({2, 4}), FgAb::from_ints({3, 6}), FgAb::from_ints({2, 2, 2})}) {
    const FiniteGroup g = fgab_to_group(a);
    const AbelianView v = abelianization(g);
    CHECK(v.group == a);
    for (Elem x = 0; x < g.size(); ++x)
      for (Elem y = 0; y < g.size(); ++y) CHECK(a.index_of(a.add(a.element_at(x), a.element_at(y))) == g.mul(x, y));
    for (std::size_t i = 0; i < v.from_ab.size(); ++i) CHECK(a.index_of(v(v.from_ab[i])) == i);
  }
}

TEST_CASE("homomorphisms") {
  const FiniteGroup c4 = builtin::cyclic(4), c2 = builtin::cyclic(2);
  const GroupHom p = GroupHom::from_generators(c4, c2, {1}, {1});
  CHECK(p.table() == std::vector<Elem>{0, 1, 0, 1});
  CHECK(p.kernel().elements() == std::vector<Elem>{0, 2});
  CHECK_THROWS_AS(GroupHom(c2, c4, {0, 1}), AlgebraError);
  CHECK_THROWS_AS(GroupHom::from_generators(c2, c4, {1}, {1}), AlgebraError);
  CHECK(GroupHom::identity(c4).after(GroupHom::identity(c4)) == GroupHom::identity(c4));
}

TEST_CASE("subgroup lattice") {
  CHECK(all_subgroups(Subgroup::whole(builtin::elementary(2, 2))).size() == 5);
  CHECK(all_subgroups(Subgroup::whole(builtin::symmetric(3))).size() == 6);
  CHECK(all_subgroups(Subgroup::whole(builtin::quaternion8())).size() == 6);
  CHECK(all_subgroups(Subgroup::whole(builtin::cyclic(6))).size() == 4);
  CHECK(center(builtin::dihedral(4)).size() == 2);
  CHECK(center(builtin::symmetric(3)).is_trivial());
  CHECK(center(builtin::heisenberg(3)).size() == 3);
  CHECK_THROWS_AS(Subgroup::from_elements(builtin::cyclic(4), {0, 1}), AlgebraError);
}

TEST_CASE("lazard and power series builtins") {
  CHECK_THROWS_AS(builtin::lazard(builtin::LieRing::heisenberg(4)), AlgebraError);
  builtin::LieRing bad = builtin::LieRing::heisenberg(3);
  bad.brackets[0][1][2] = 1;
  bad.brackets[1][0][2] = 1;
  CHECK_THROWS_AS(builtin::lazard(bad), AlgebraError);
  builtin::LieRing deep;
  deep.modulus = 3;
  deep.dim = 4;
  deep.brackets.assign(4, std::vector<std::vector<long>>(4, std::vector<long>(4, 0)));
  deep.brackets[0][1][2] = 1;
  deep.brackets[1][0][2] = -1;
  deep.brackets[0][2][3] = 1;
  deep.brackets[2][0][3] = -1;
  CHECK_THROWS_WITH_AS(builtin::lazard(deep), doctest::Contains("2-step"), AlgebraError);
  const FiniteGroup l = builtin::lazard(builtin::LieRing::heisenberg(3));
  CHECK(l.size() == 27);
  CHECK(nilpotency_class(l) == 2);
  CHECK(builtin::power_series_units(3, 4).size() == 27);
  CHECK(builtin::power_series_units(2, 4).is_abelian());
}
