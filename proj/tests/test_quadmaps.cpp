#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "quadgroup/kernels.hpp"
#include "quadgroup/quadmaps.hpp"

using namespace qg;

namespace {

// Direct restatement of the four laws with plain nested loops; returns the
// first violated law and tuple in the same scan order as the library.
std::optional<QuadWitness> naive_first_violation(const GroupFunction& f, const Subgroup& b) {
  const FiniteGroup& g = f.domain();
  const FiniteGroup& h = f.codomain();
  const Elem n = static_cast<Elem>(g.size());
  auto d = [&](Elem x, Elem y) { return h.mul(h.mul(f(g.mul(x, y)), h.inv(f(y))), h.inv(f(x))); };
  for (Elem a = 0; a < n; ++a)
    for (Elem a2 = 0; a2 < n; ++a2)
      for (Elem c = 0; c < n; ++c)
        if (d(g.mul(a, a2), c) != h.mul(d(a, c), d(a2, c))) return QuadWitness{QuadLaw::LeftBilinear, {a, a2, c}};
  for (Elem a = 0; a < n; ++a)
    for (Elem c = 0; c < n; ++c)
      for (Elem c2 = 0; c2 < n; ++c2)
        if (d(a, g.mul(c, c2)) != h.mul(d(a, c), d(a, c2))) return QuadWitness{QuadLaw::RightBilinear, {a, c, c2}};
  for (Elem a = 0; a < n; ++a)
    for (Elem c = 0; c < n; ++c)
      for (Elem k = 0; k < n; ++k)
        if (h.commutator(d(a, c), f(k)) != 0) return QuadWitness{QuadLaw::CentralInImage, {a, c, k}};
  for (Elem a = 0; a < n; ++a)
    for (Elem c = 0; c < n; ++c)
      if ((b.contains(a) || b.contains(c)) && d(a, c) != 0) return QuadWitness{QuadLaw::RelativeVanishing, {a, c}};
  return std::nullopt;
}

GroupFunction square_mod(std::size_t from, std::size_t to) {
  std::vector<Elem> t(from);
  for (Elem k = 0; k < from; ++k) t[k] = static_cast<Elem>((k * k) % to);
  return GroupFunction(builtin::cyclic(from), builtin::cyclic(to), t);
}

std::vector<FiniteGroup> small_zoo() {
  return {builtin::cyclic(4),        builtin::elementary(2, 2), builtin::cyclic(6),   builtin::quaternion8(),
          builtin::dihedral(4),      builtin::symmetric(3),     builtin::dihedral(8), builtin::heisenberg(3)};
}

}  // namespace

TEST_CASE("deviation of constant maps and homomorphisms is trivial") {
  for (const FiniteGroup& g : small_zoo()) {
    const auto c = GroupFunction::constant_identity(g, builtin::quaternion8());
    const auto id = GroupFunction::from_hom(GroupHom::identity(g));
    for (Elem a = 0; a < g.size(); ++a)
      for (Elem b = 0; b < g.size(); ++b) {
        CHECK(c.deviation(a, b) == 0);
        CHECK(id.deviation(a, b) == 0);
      }
    const QuadVerdict v = quadratic_verdict(id);
    CHECK(v.is_linear);
    CHECK(v.is_quadratic);
    CHECK(v.deviation_subgroup.is_trivial());
  }
}

TEST_CASE("squaring on Q8 has deviation [a^-1, b]") {
  const FiniteGroup q = builtin::quaternion8();
  const auto sq = GroupFunction::power_map(q, 2);
  for (Elem a = 0; a < 8; ++a)
    for (Elem b = 0; b < 8; ++b) CHECK(sq.deviation(a, b) == q.commutator(q.inv(a), b));
  const QuadVerdict v = quadratic_verdict(sq);
  CHECK(v.is_quadratic);
  CHECK_FALSE(v.is_linear);
  CHECK(v.deviation_subgroup.size() == 2);
  CHECK(identity_suite(sq).all_pass());
}

TEST_CASE("squaring is quadratic on D4 but not on S3") {
  CHECK(quadratic_verdict(GroupFunction::power_map(builtin::dihedral(4), 2)).is_quadratic);
  const auto s3 = GroupFunction::power_map(builtin::symmetric(3), 2);
  const QuadVerdict v = quadratic_verdict(s3);
  REQUIRE_FALSE(v.is_quadratic);
  REQUIRE(v.counterexample);
  CHECK(replay(s3, *v.counterexample, v.relative));
  const auto naive = naive_first_violation(s3, Subgroup::trivial(s3.domain()));
  REQUIRE(naive);
  CHECK(naive->law == v.counterexample->law);
  CHECK(naive->tuple == v.counterexample->tuple);
}

TEST_CASE("k -> k^2 from C4 to C8 has deviation 2ij") {
  const auto f = square_mod(4, 8);
  for (Elem i = 0; i < 4; ++i)
    for (Elem j = 0; j < 4; ++j) CHECK(f.deviation(i, j) == (2 * i * j) % 8);
  const QuadVerdict v = quadratic_verdict(f);
  CHECK(v.is_quadratic);
  CHECK(v.deviation_subgroup.size() == 4);  // {0, 2, 4, 6}
}

TEST_CASE("radical") {
  SUBCASE("square in Z/4 has radical {0, 2}") {
    const Radical r = radical(square_mod(4, 4));
    CHECK(r.subgroup.elements() == std::vector<Elem>{0, 2});
    CHECK(r.checks.all_pass());
  }
  SUBCASE("linear maps have the whole group as radical") {
    const FiniteGroup g = builtin::dihedral(4);
    const Radical r = radical(GroupFunction::from_hom(GroupHom::identity(g)));
    CHECK(r.subgroup.is_whole());
    CHECK(r.checks.all_pass());
  }
  SUBCASE("non-quadratic maps are refused") {
    CHECK_THROWS_AS(radical(GroupFunction::power_map(builtin::symmetric(3), 2)), AlgebraError);
  }
}

TEST_CASE("bilinear part") {
  SUBCASE("linear map gives the zero map") {
    const FiniteGroup g = builtin::cyclic(6);
    const BilinearPart bp = bilinear_part(GroupFunction::from_hom(GroupHom::identity(g)));
    CHECK(bp.d_view.group.is_trivial());
  }
  SUBCASE("second coefficient on 1 + T F2[T]/(T^4)") {
    // Index a1 + 2 a2 + 4 a3; c1 = a1, c2 = a2.
    const FiniteGroup u = builtin::power_series_units(2, 4);
    std::vector<Elem> c2(u.size());
    for (Elem x = 0; x < u.size(); ++x) c2[x] = (x >> 1) & 1;
    const GroupFunction f(u, builtin::cyclic(2), c2);
    for (Elem x = 0; x < u.size(); ++x)
      for (Elem y = 0; y < u.size(); ++y) CHECK(f.deviation(x, y) == ((x & 1) & (y & 1)));
    const BilinearPart bp = bilinear_part(f);
    for (Elem x = 0; x < u.size(); ++x)
      for (Elem y = 0; y < u.size(); ++y) CHECK(bp.value(bp.square.tens(bp.t(x), bp.t(y))) == ((x & 1) & (y & 1)));
  }
  SUBCASE("squaring on Q8 relative to the centre") {
    const FiniteGroup q = builtin::quaternion8();
    const auto sq = GroupFunction::power_map(q, 2);
    const Subgroup z = center(q);
    CHECK(quadratic_verdict(sq, z).is_quadratic);
    const BilinearPart bp = bilinear_part(sq, z);
    CHECK(bp.t.group.order_u64() == 4);
    CHECK(bp.square.group().order_u64() == 16);
    for (Elem a = 0; a < 8; ++a)
      for (Elem b = 0; b < 8; ++b) CHECK(bp.value(bp.square.tens(bp.t(a), bp.t(b))) == sq.deviation(a, b));
  }
  SUBCASE("refuses non-quadratic input") {
    CHECK_THROWS_AS(bilinear_part(GroupFunction::power_map(builtin::symmetric(3), 2)), AlgebraError);
  }
}

TEST_CASE("Lazard correspondence: identity into the additive group has deviation half the bracket") {
  const auto lie = builtin::LieRing::heisenberg(3);
  const FiniteGroup l = builtin::lazard(lie);
  const std::size_t n = l.size();
  auto decode = [](std::size_t x) {
    Vec v(3);
    for (std::size_t i = 0; i < 3; ++i, x /= 3) v[i] = static_cast<unsigned long>(x % 3);
    return v;
  };
  auto encode = [](const Vec& v) {
    std::size_t out = 0, place = 1;
    for (std::size_t i = 0; i < 3; ++i, place *= 3) out += mod_floor(v[i], BigInt(3)).get_ui() * place;
    return static_cast<Elem>(out);
  };
  std::vector<Elem> add(n * n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      Vec s = decode(x);
      const Vec t = decode(y);
      for (std::size_t i = 0; i < 3; ++i) s[i] += t[i];
      add[x * n + y] = encode(s);
    }
  const FiniteGroup plus = FiniteGroup::from_table(add, n, "(L,+)");
  std::vector<Elem> id(n);
  for (Elem x = 0; x < n; ++x) id[x] = x;
  const GroupFunction f(l, plus, id);
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y) {
      Vec half = lie.bracket(decode(x), decode(y));
      for (auto& c : half) c *= 2;  // 2 = 1/2 mod 3
      CHECK(f.deviation(x, y) == encode(half));
    }
  CHECK(quadratic_verdict(f).is_quadratic);
  CHECK(identity_suite(f).all_pass());
}

TEST_CASE("identity suite on quadratic maps") {
  for (const FiniteGroup& g : small_zoo()) {
    const auto sq = GroupFunction::power_map(g, 2);
    const QuadVerdict v = quadratic_verdict(sq);
    if (!v.is_quadratic) continue;
    const CheckList c = identity_suite(sq);
    CAPTURE(g.name());
    for (const Check& k : c.checks) {
      CAPTURE(k.name);
      CHECK(k.status == Status::Pass);
    }
    CHECK(c.checks.size() == 10);
    // Invariants: G' inside the radical, quadratic relative the radical.
    const Radical r = radical(sq);
    CHECK(r.checks.all_pass());
    CHECK(derived_subgroup(g).is_subset_of(r.subgroup));
  }
}

TEST_CASE("verdict agrees with the naive oracle on random tables") {
  std::mt19937 rng(20240611);
  const std::vector<FiniteGroup> zoo = small_zoo();
  for (int trial = 0; trial < 120; ++trial) {
    const FiniteGroup& g = zoo[rng() % zoo.size()];
    const FiniteGroup& h = zoo[rng() % zoo.size()];
    if (g.size() > 16 || h.size() > 16) continue;
    std::vector<Elem> t(g.size());
    if (trial % 3 == 0) {
      // Perturb a quadratic map at one point; keeps some trials quadratic.
      const auto base = GroupFunction::power_map(g, 2);
      t = base.table();
      const FiniteGroup& gg = g;
      if (trial % 2) t[rng() % gg.size()] = static_cast<Elem>(rng() % gg.size());
      const GroupFunction f(g, g, t);
      const Subgroup b = rng() % 2 ? Subgroup::trivial(g) : center(g);
      const QuadVerdict v = quadratic_verdict(f, b);
      const auto naive = naive_first_violation(f, b);
      CHECK(v.is_quadratic == !naive);
      if (naive) {
        CHECK(v.counterexample->law == naive->law);
        CHECK(v.counterexample->tuple == naive->tuple);
      }
      continue;
    }
    for (auto& x : t) x = static_cast<Elem>(rng() % h.size());
    t[0] = 0;
    const GroupFunction f(g, h, t);
    const QuadVerdict v = quadratic_verdict(f);
    const auto naive = naive_first_violation(f, Subgroup::trivial(g));
    CHECK(v.is_quadratic == !naive);
    if (naive) {
      CHECK(v.counterexample->law == naive->law);
      CHECK(v.counterexample->tuple == naive->tuple);
      CHECK(replay(f, *v.counterexample, v.relative));
    }
  }
}

TEST_CASE("generator-reduced verdict agrees with the exhaustive one") {
  Limits tight;
  tight.scan_budget = 1'500;
  std::mt19937 rng(7);
  for (const FiniteGroup& g : {builtin::dihedral(8), builtin::quaternion8(), builtin::heisenberg(3),
                               builtin::cyclic(6), builtin::symmetric(3)}) {
    for (int k : {2, 3}) {
      const auto f = GroupFunction::power_map(g, k);
      const QuadVerdict full = quadratic_verdict(f);
      if (g.size() * g.size() * g.size() <= tight.scan_budget) continue;
      const QuadVerdict red = quadratic_verdict(f, std::nullopt, tight);
      CAPTURE(g.name());
      CAPTURE(k);
      CHECK(red.method == "generator-reduced");
      CHECK(red.is_quadratic == full.is_quadratic);
      if (red.counterexample) CHECK(replay(f, *red.counterexample, red.relative));
    }
    std::vector<Elem> t(g.size());
    for (auto& x : t) x = static_cast<Elem>(rng() % g.size());
    t[0] = 0;
    const GroupFunction f(g, g, t);
    if (g.size() * g.size() * g.size() > tight.scan_budget) {
      const QuadVerdict red = quadratic_verdict(f, std::nullopt, tight);
      CHECK(red.is_quadratic == quadratic_verdict(f).is_quadratic);
    }
  }
  Limits tiny;
  tiny.scan_budget = 10;
  CHECK_THROWS_AS(quadratic_verdict(GroupFunction::power_map(builtin::dihedral(8), 2), std::nullopt, tiny),
                  CapExceeded);
}

TEST_CASE("pair composition") {
  const FiniteGroup d4 = builtin::dihedral(4);
  const FiniteGroup q8 = builtin::quaternion8();
  const Subgroup t4 = Subgroup::trivial(d4);
  SUBCASE("linear inner map") {
    const auto g = GroupFunction::from_hom(GroupHom::identity(d4));
    const auto f = GroupFunction::power_map(d4, 2);
    const PairComposition pc = pair_compose(g, t4, f, t4);
    CHECK(pc.checks.all_pass());
    for (Elem a = 0; a < 8; ++a)
      for (Elem b = 0; b < 8; ++b) CHECK(pc.composite.deviation(a, b) == f.deviation(g(a), g(b)));
  }
  SUBCASE("linear outer map") {
    const auto g = GroupFunction::power_map(d4, 2);
    // Conjugation by a reflection.
    std::vector<Elem> t(8);
    for (Elem x = 0; x < 8; ++x) t[x] = d4.conjugate(4, x);
    const auto f = GroupFunction::from_hom(GroupHom(d4, d4, t));
    const PairComposition pc = pair_compose(g, t4, f, t4);
    CHECK(pc.checks.all_pass());
    CHECK(pc.checks.find("bilinear_chain_rule")->status == Status::Pass);
    for (Elem a = 0; a < 8; ++a)
      for (Elem b = 0; b < 8; ++b) CHECK(pc.composite.deviation(a, b) == f(g.deviation(a, b)));
  }
  SUBCASE("quadratic after quadratic with vanishing condition") {
    // 2_{Q8} lands in the centre {±1}; squaring on Q8 kills deviations there.
    const auto g = GroupFunction::power_map(q8, 2);
    const auto f = GroupFunction::power_map(q8, 2);
    const Subgroup t8 = Subgroup::trivial(q8);
    const PairComposition pc = pair_compose(g, t8, f, t8);
    CHECK(pc.checks.all_pass());
  }
  SUBCASE("not a pair") {
    // k -> k^2 from C4 to C8 has D_g = 2Z/8, where squaring on C8 does not vanish.
    const auto g = square_mod(4, 8);
    const auto f = square_mod(8, 8);
    CHECK_THROWS_AS(pair_compose(g, Subgroup::trivial(g.domain()), f, Subgroup::trivial(f.domain())), AlgebraError);
    // Image of A escapes B.
    const auto id = GroupFunction::from_hom(GroupHom::identity(d4));
    CHECK_THROWS_AS(pair_compose(id, Subgroup::whole(d4), id, t4), AlgebraError);
  }
  SUBCASE("composition is associative") {
    const auto a = GroupFunction::power_map(d4, 2);
    std::vector<Elem> t(8);
    for (Elem x = 0; x < 8; ++x) t[x] = d4.conjugate(1, x);
    const auto b = GroupFunction::from_hom(GroupHom(d4, d4, t));
    const auto c = GroupFunction::power_map(d4, 3);
    CHECK(c.after(b).after(a) == c.after(b.after(a)));
  }
}

TEST_CASE("sum formula") {
  SUBCASE("id + id on D4 is squaring") {
    const FiniteGroup d4 = builtin::dihedral(4);
    const auto id = GroupFunction::from_hom(GroupHom::identity(d4));
    CHECK(pointwise_product(id, id) == GroupFunction::power_map(d4, 2));
    CHECK(sum_check(id, id).all_pass());
  }
  SUBCASE("trivial summand") {
    const FiniteGroup q8 = builtin::quaternion8();
    const auto sq = GroupFunction::power_map(q8, 2);
    const auto zero = GroupFunction::constant_identity(q8, q8);
    CHECK(sum_check(sq, zero).all_pass());
    for (Elem a = 0; a < 8; ++a)
      for (Elem b = 0; b < 8; ++b) CHECK(pointwise_product(sq, zero).deviation(a, b) == sq.deviation(a, b));
  }
  SUBCASE("two homomorphisms C4 -> Q8 with non-commuting images") {
    const FiniteGroup c4 = builtin::cyclic(4);
    const FiniteGroup q8 = builtin::quaternion8();
    const auto f = GroupFunction::from_hom(GroupHom::from_generators(c4, q8, {1}, {2}));  // i
    const auto g = GroupFunction::from_hom(GroupHom::from_generators(c4, q8, {1}, {4}));  // j
    CHECK(sum_check(f, g).all_pass());
    const auto s = pointwise_product(f, g);
    bool nonzero = false;
    for (Elem a = 0; a < 4; ++a)
      for (Elem b = 0; b < 4; ++b) {
        CHECK(s.deviation(a, b) == q8.commutator(f(b), g(a)));
        nonzero |= s.deviation(a, b) != 0;
      }
    CHECK(nonzero);
  }
  SUBCASE("hypothesis failure") {
    const FiniteGroup s3 = builtin::symmetric(3);
    const auto id = GroupFunction::from_hom(GroupHom::identity(s3));
    CHECK_THROWS_AS(sum_check(id, id), AlgebraError);
  }
}

TEST_CASE("nilpotency battery") {
  auto prop = [](const NilpotencyReport& r, const std::string& name) {
    for (const auto& p : r.properties)
      if (p.name == name) return p.holds;
    FAIL("missing property " << name);
    return std::optional<bool>{};
  };
  SUBCASE("abelian") {
    const NilpotencyReport r = nilpotency_battery(builtin::elementary(2, 2), 2);
    for (const auto& p : r.properties) CHECK(p.holds == std::optional<bool>(true));
    CHECK(r.checks.all_pass());
  }
  SUBCASE("Q8 with n = 3") {
    const NilpotencyReport r = nilpotency_battery(builtin::quaternion8(), 3);
    CHECK(prop(r, "squaring_quadratic") == std::optional<bool>(true));
    CHECK(prop(r, "multiplication_quadratic") == std::optional<bool>(true));
    CHECK(r.checks.find("multiplication_deviation")->status == Status::Pass);
    CHECK(r.checks.find("commutator_collection")->status == Status::Pass);
    CHECK(r.checks.all_pass());
  }
  SUBCASE("S3 and D8 fail consistently") {
    for (const FiniteGroup& g : {builtin::symmetric(3), builtin::dihedral(8)}) {
      const NilpotencyReport r = nilpotency_battery(g, 2);
      CAPTURE(g.name());
      CHECK(prop(r, "squaring_quadratic") == std::optional<bool>(false));
      CHECK(prop(r, "two_step_nilpotent") == std::optional<bool>(false));
      CHECK(r.checks.all_pass());
      CHECK(r.checks.find("commutator_collection")->detail.rfind("vacuous", 0) == 0);
    }
  }
  SUBCASE("all small groups and degrees") {
    for (const FiniteGroup& g : small_zoo())
      for (int n = 2; n <= 4; ++n) {
        CAPTURE(g.name());
        CAPTURE(n);
        CHECK(nilpotency_battery(g, n).checks.all_pass());
      }
  }
  SUBCASE("degree out of range") { CHECK_THROWS_AS(nilpotency_battery(builtin::cyclic(2), 5), AlgebraError); }
}

TEST_CASE("parallel first_failure agrees with the serial reference") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    const std::uint64_t count = rng() % 50'000;
    std::vector<bool> bad(count, false);
    const int hits = static_cast<int>(rng() % 4);
    for (int k = 0; k < hits && count; ++k) bad[rng() % count] = true;
    auto pred = [&](std::uint64_t i) { return static_cast<bool>(bad[i]); };
    CHECK(kernels::first_failure(count, pred) == kernels::serial::first_failure(count, pred));
  }
  std::vector<std::uint64_t> a(30'000), b(30'000);
  kernels::for_each(a.size(), [&](std::uint64_t i) { a[i] = i * i % 97; });
  kernels::serial::for_each(b.size(), [&](std::uint64_t i) { b[i] = i * i % 97; });
  CHECK(a == b);
}
