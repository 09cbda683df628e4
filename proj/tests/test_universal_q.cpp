#include <doctest.h>

#include <map>
#include <random>
#include <set>

#include "oracles.hpp"
#include "quadgroup/universal_q.hpp"

using namespace qg;

namespace {

void require_checks(const CheckList& c) {
  for (const Check& k : c.checks) {
    CAPTURE(k.name);
    CAPTURE(k.detail);
    CHECK(k.status != Status::Fail);
  }
}

GroupFunction square_mod(std::size_t from, std::size_t to) {
  std::vector<Elem> t(from);
  for (Elem k = 0; k < from; ++k) t[k] = static_cast<Elem>((k * k) % to);
  return GroupFunction(builtin::cyclic(from), builtin::cyclic(to), t);
}

std::vector<Letter> to_word(const std::vector<std::pair<std::size_t, int>>& w) {
  std::vector<Letter> out;
  for (const auto& [g, e] : w) out.push_back({g, e});
  return out;
}

Presentation cyclic_presentation(std::size_t k) {
  Presentation p;
  p.generators = 1;
  p.relators = {FreeWord(k, Letter{0, 1})};
  p.target = builtin::cyclic(k);
  p.images = {k > 1 ? Elem{1} : Elem{0}};
  return p;
}

}  // namespace

TEST_CASE("Q(C2) is cyclic of order 4") {
  const QGroup q = build_q(builtin::cyclic(2));
  CHECK(q.group.size() == 4);
  CHECK(q.group.order_of(q.q(1)) == 4);
  CHECK(q.checks.all_pass());
  CHECK(q.w.size() == 2);
}

TEST_CASE("Q(G, G) is G") {
  for (const FiniteGroup& g : {builtin::quaternion8(), builtin::symmetric(3), builtin::cyclic(6)}) {
    const QGroup q = build_q(g, Subgroup::whole(g));
    CHECK(q.group.size() == g.size());
    CHECK(q.square.group().is_trivial());
    std::set<Elem> image(q.q.table().begin(), q.q.table().end());
    CHECK(image.size() == g.size());
    CHECK(quadratic_verdict(q.q).is_linear);
    require_checks(q.checks);
  }
}

TEST_CASE("Q(C2 x C2) has order 64") {
  const QGroup q = build_q(builtin::elementary(2, 2));
  CHECK(q.square.group().order_u64() == 16);
  CHECK(q.group.size() == 64);
  CHECK(q.checks.all_pass());
}

TEST_CASE("central extension checks over the zoo and all central subgroups") {
  for (const FiniteGroup& g : {builtin::cyclic(4), builtin::elementary(2, 2), builtin::cyclic(6), builtin::quaternion8(),
                               builtin::dihedral(4), builtin::symmetric(3), builtin::dihedral(8)}) {
    for (const Subgroup& b : all_subgroups(center(g))) {
      CAPTURE(g.name());
      CAPTURE(b.size());
      const QGroup q = build_q(g, b);
      CHECK(q.checks.all_pass());
      CHECK(q.group.size() == q.square.group().order_u64() * g.size());
      // w_q is the canonical injection: the bilinear part of q is (x -> (x, 1)).
      const BilinearPart bp = bilinear_part(q.q, b);
      for (std::uint64_t k = 0; k < q.square.group().order_u64(); ++k) {
        const Vec x = q.square.group().element_at(k);
        CHECK(bp.value(x) == q.w[k]);
      }
      CHECK(identity_suite(q.q, b).all_pass());
      // rad(q) contains B.
      CHECK(b.is_subset_of(radical(q.q).subgroup));
    }
  }
}

TEST_CASE("Q refuses to exceed the order cap") {
  Limits small;
  small.max_order = 100;
  CHECK_THROWS_AS(build_q(builtin::dihedral(8), std::nullopt, small), CapExceeded);
}

TEST_CASE("factorization through Q") {
  SUBCASE("q itself factors as the identity") {
    const QGroup q = build_q(builtin::dihedral(4));
    const Factorization f = factor_quadratic(q.q, q);
    CHECK(f.hat == GroupHom::identity(q.group));
    CHECK(f.checks.all_pass());
  }
  SUBCASE("linear maps factor through the projection") {
    const FiniteGroup g = builtin::quaternion8();
    const QGroup q = build_q(g);
    const GroupHom ab = GroupHom::from_generators(g, builtin::elementary(2, 2), {2, 4}, {1, 2});
    const Factorization f = factor_quadratic(GroupFunction::from_hom(ab), q);
    CHECK(f.hat == ab.after(q.id_hat));
  }
  SUBCASE("k -> k^2 from C4 to C8") {
    const QGroup q = build_q(builtin::cyclic(4));
    const GroupFunction f = square_mod(4, 8);
    const Factorization fac = factor_quadratic(f, q);
    CHECK(fac.checks.all_pass());
    CHECK(q.group.size() == 16);
    for (Elem a = 0; a < 4; ++a) CHECK(fac.hat(q.q(a)) == f(a));
  }
  SUBCASE("squaring on Q8 relative the centre") {
    const FiniteGroup g = builtin::quaternion8();
    const QGroup q = build_q(g, center(g));
    const Factorization fac = factor_quadratic(GroupFunction::power_map(g, 2), q);
    CHECK(fac.checks.all_pass());
  }
  SUBCASE("non-quadratic maps are refused") {
    const FiniteGroup s3 = builtin::symmetric(3);
    CHECK_THROWS_AS(factor_quadratic(GroupFunction::power_map(s3, 2), build_q(s3)), AlgebraError);
  }
  SUBCASE("agreement on generators and their deviations forces equality") {
    // All quadratic maps C4 -> C8.
    const FiniteGroup c4 = builtin::cyclic(4), c8 = builtin::cyclic(8);
    std::vector<GroupFunction> quad;
    for (Elem v1 = 0; v1 < 8; ++v1)
      for (Elem v2 = 0; v2 < 8; ++v2)
        for (Elem v3 = 0; v3 < 8; ++v3) {
          GroupFunction f(c4, c8, {0, v1, v2, v3});
          if (quadratic_verdict(f).is_quadratic) quad.push_back(f);
        }
    CHECK(quad.size() > 4);
    for (const auto& f : quad)
      for (const auto& g : quad)
        if (f(1) == g(1) && f.deviation(1, 1) == g.deviation(1, 1)) CHECK(f == g);
  }
}

TEST_CASE("Q is a functor") {
  const FiniteGroup c2 = builtin::cyclic(2), c4 = builtin::cyclic(4);
  const QGroup q2 = build_q(c2), q4 = build_q(c4);
  CHECK(q_of_hom(GroupHom::identity(c2), q2, q2) == GroupHom::identity(q2.group));
  CHECK(q_of_hom(GroupHom::identity(c4), q4, q4) == GroupHom::identity(q4.group));
  const GroupHom inc = GroupHom::from_generators(c2, c4, {1}, {2});
  const GroupHom proj = GroupHom::from_generators(c4, c2, {1}, {1});
  const GroupHom q_inc = q_of_hom(inc, q2, q4), q_proj = q_of_hom(proj, q4, q2);
  CHECK(q_of_hom(proj.after(inc), q2, q2) == q_proj.after(q_inc));
  const GroupHom dbl = GroupHom::from_generators(c4, c4, {1}, {3});
  CHECK(q_of_hom(dbl.after(dbl), q4, q4) == q_of_hom(dbl, q4, q4).after(q_of_hom(dbl, q4, q4)));

  const FiniteGroup q8 = builtin::quaternion8(), v4 = builtin::elementary(2, 2);
  const QGroup qq8 = build_q(q8), qv4 = build_q(v4);
  const GroupHom ab = GroupHom::from_generators(q8, v4, {2, 4}, {1, 2});
  const GroupHom first = GroupHom::from_generators(v4, c2, {1, 2}, {1, 1});
  CHECK(q_of_hom(first.after(ab), qq8, q2) == q_of_hom(first, qv4, q2).after(q_of_hom(ab, qq8, qv4)));
  // Naturality of q: Q(h) q_G = q_H h.
  const GroupHom qab = q_of_hom(ab, qq8, qv4);
  for (Elem a = 0; a < 8; ++a) CHECK(qab(qq8.q(a)) == qv4.q(ab(a)));
}

TEST_CASE("class of Q(G)") {
  for (const FiniteGroup& g : {builtin::cyclic(2), builtin::cyclic(4), builtin::elementary(2, 2), builtin::cyclic(6),
                               builtin::quaternion8(), builtin::dihedral(4), builtin::dihedral(8),
                               builtin::heisenberg(3)}) {
    CAPTURE(g.name());
    const CheckList c = q_nilpotency(g);
    CHECK(c.all_pass());
    CHECK(c.count(Status::Pass) >= 1);
  }
  CHECK(nilpotency_class(build_q(builtin::cyclic(2)).group) == std::optional<std::size_t>(1));
  CHECK(nilpotency_class(build_q(builtin::dihedral(4)).group) == std::optional<std::size_t>(2));
  CHECK(q_nilpotency(builtin::symmetric(3)).find("class_bound")->detail.rfind("vacuous", 0) == 0);
}

TEST_CASE("exactness of Q on short exact sequences") {
  SUBCASE("C2 -> C4 -> C2") {
    const FiniteGroup c2 = builtin::cyclic(2), c4 = builtin::cyclic(4);
    const CheckList c = q_sequence_check(GroupHom::from_generators(c2, c4, {1}, {2}),
                                    GroupHom::from_generators(c4, c2, {1}, {1}));
    CHECK(c.all_pass());
    CHECK(c.count(Status::Pass) == 3);
  }
  SUBCASE("A3 -> S3 -> C2") {
    const FiniteGroup s3 = builtin::symmetric(3);
    const SubgroupAsGroup a3 = as_group(derived_subgroup(s3));
    const QuotientGroup sign = quotient(derived_subgroup(s3));
    const CheckList c = q_sequence_check(a3.inclusion, sign.projection);
    CHECK(c.all_pass());
  }
  SUBCASE("identity followed by the map to a point") {
    const FiniteGroup d4 = builtin::dihedral(4);
    const CheckList c = q_sequence_check(GroupHom::identity(d4), GroupHom::trivial(d4, FiniteGroup()));
    CHECK(c.all_pass());
  }
  SUBCASE("non-exact input is refused") {
    const FiniteGroup c2 = builtin::cyclic(2), c4 = builtin::cyclic(4);
    CHECK_THROWS_AS(q_sequence_check(GroupHom::trivial(c2, c4), GroupHom::from_generators(c4, c2, {1}, {1})),
                    AlgebraError);
  }
}

TEST_CASE("free-group formula") {
  SUBCASE("anchors") {
    const FreeValue xy = free_eval({{0, 1}, {1, 1}}, 2);
    CHECK(xy.tensor == make_vec({0, 1, 0, 0}));
    const FreeValue xinv = free_eval({{0, -1}}, 2);
    CHECK(xinv.tensor == make_vec({1, 0, 0, 0}));
    const FreeValue cancel = free_eval({{0, 1}, {0, -1}}, 1);
    CHECK(cancel.tensor == make_vec({0}));
    CHECK(cancel.word.empty());
  }
  SUBCASE("agrees with the fold on all words of length <= 6 over up to 3 letters") {
    std::size_t words = 0;
    for (std::size_t rank = 1; rank <= 3; ++rank)
      for (std::size_t len = 0; len <= 6; ++len) {
        const std::size_t alphabet = 2 * rank;
        std::size_t total = 1;
        for (std::size_t i = 0; i < len; ++i) total *= alphabet;
        for (std::size_t code = 0; code < total; ++code) {
          std::vector<std::pair<std::size_t, int>> w;
          for (std::size_t i = 0, c = code; i < len; ++i, c /= alphabet)
            w.emplace_back((c % alphabet) / 2, c % 2 ? -1 : 1);
          const FreeWord fw = to_word(w);
          const FreeValue v = free_eval(fw, rank);
          const std::vector<long> oracle = oracle::fold_tensor(w, rank);
          bool same = true;
          for (std::size_t k = 0; k < oracle.size(); ++k) same = same && v.tensor[k] == oracle[k];
          if (!same) FAIL_CHECK("mismatch on " << to_string(fw));
          if (!(free_eval(v.word, rank).tensor == v.tensor)) FAIL_CHECK("not invariant on " << to_string(fw));
          ++words;
        }
      }
    CHECK(words > 50'000);
  }
}

TEST_CASE("presented groups") {
  const FiniteGroup c8 = builtin::cyclic(8);
  SUBCASE("x^4 with chi = 1, psi = 2 into C8 gives k -> k^2") {
    const Presentation p = cyclic_presentation(4);
    const GenPair gp{{1}, {{2}}};
    CHECK(presented_check(p, c8, gp).accepted);
    const GroupFunction f = presented_build(p, c8, gp);
    for (Elem k = 0; k < 4; ++k) CHECK(f(k) == (k * k) % 8);
  }
  SUBCASE("psi = 1 is rejected on the pairing condition") {
    const PresentedVerdict v = presented_check(cyclic_presentation(4), c8, GenPair{{1}, {{1}}});
    CHECK_FALSE(v.accepted);
    CHECK(v.conditions.find("relator_pairings")->status == Status::Fail);
    CHECK_THROWS_AS(presented_build(cyclic_presentation(4), c8, GenPair{{1}, {{1}}}), AlgebraError);
  }
  SUBCASE("free groups accept commuting data") {
    Presentation p;
    p.generators = 2;
    const FiniteGroup q8 = builtin::quaternion8();
    CHECK(presented_check(p, q8, GenPair{{2, 4}, {{1, 0}, {1, 1}}}).accepted);
    CHECK_FALSE(presented_check(p, q8, GenPair{{2, 4}, {{2, 0}, {0, 0}}}).accepted);
  }
  SUBCASE("wrong relators are reported at build time") {
    // <x | x^4> mapped onto C2 does not present C2: f is not well defined.
    Presentation p = cyclic_presentation(4);
    p.target = builtin::cyclic(2);
    CHECK_THROWS_AS(presented_build(p, c8, GenPair{{1}, {{2}}}), AlgebraError);
  }
  SUBCASE("accept set equals brute force on cyclic presentations") {
    const std::vector<FiniteGroup> targets{builtin::cyclic(2),     builtin::cyclic(4),  builtin::elementary(2, 2),
                                           builtin::cyclic(6),     builtin::cyclic(8),  builtin::quaternion8(),
                                           builtin::dihedral(4),   builtin::symmetric(3)};
    for (std::size_t k = 1; k <= 4; ++k)
      for (const FiniteGroup& h : targets) {
        CAPTURE(k);
        CAPTURE(h.name());
        const Presentation p = cyclic_presentation(k);
        const FiniteGroup& g = *p.target;
        // Brute force: every normalized map C_k -> H that is quadratic.
        std::set<std::pair<Elem, Elem>> realized;
        std::vector<Elem> t(k, 0);
        for (;;) {
          const GroupFunction f(g, h, t);
          if (quadratic_verdict(f).is_quadratic) realized.insert({f(k > 1 ? 1 : 0), f.deviation(k > 1 ? 1 : 0, k > 1 ? 1 : 0)});
          std::size_t i = 1;
          while (i < k && ++t[i] == h.size()) t[i++] = 0;
          if (i >= k) break;
        }
        std::set<std::pair<Elem, Elem>> accepted;
        for (Elem chi = 0; chi < h.size(); ++chi)
          for (Elem psi = 0; psi < h.size(); ++psi) {
            const GenPair gp{{chi}, {{psi}}};
            if (!presented_check(p, h, gp).accepted) continue;
            accepted.insert({chi, psi});
            const GroupFunction f = presented_build(p, h, gp);
            CHECK(f(p.images[0]) == chi);
          }
        CHECK(accepted == realized);
      }
  }
  SUBCASE("maps built from data on the free group have that data") {
    std::mt19937 rng(5);
    const FiniteGroup h = builtin::dihedral(4);
    CHECK(center(h).size() == 2);
    const Elem z = center(h).elements()[1];
    for (int trial = 0; trial < 40; ++trial) {
      GenPair gp{{static_cast<Elem>(rng() % 8), static_cast<Elem>(rng() % 8)},
                 {{rng() % 2 ? z : 0, rng() % 2 ? z : 0}, {rng() % 2 ? z : 0, rng() % 2 ? z : 0}}};
      for (std::size_t x = 0; x < 2; ++x) {
        CHECK(free_quadratic_value(h, gp, {{x, 1}}) == gp.chi[x]);
        for (std::size_t y = 0; y < 2; ++y) {
          const Elem fxy = free_quadratic_value(h, gp, {{x, 1}, {y, 1}});
          const Elem d = h.mul(h.mul(fxy, h.inv(gp.chi[y])), h.inv(gp.chi[x]));
          CHECK(d == gp.psi[x][y]);
        }
      }
    }
  }
}
