#include "quadgroup/verify.hpp"

#include <chrono>
#include <functional>

namespace qg {

namespace {

void require_central(const FiniteGroup& g, const Subgroup& b) {
  if (!b.parent().same_as(g)) throw AlgebraError("subgroup does not belong to the group");
  if (!b.is_central()) throw AlgebraError("subgroup is not central");
}

bool same_in(const FgAb& a, const Vec& x, const Vec& y) { return a.is_zero(a.sub(x, y)); }

bool agree_on_generators(const AbMap& f, const AbMap& g) {
  for (std::size_t k = 0; k < f.domain().rank(); ++k) {
    const Vec x = f.domain().generator(k);
    if (!same_in(f.codomain(), f.apply(x), g.apply(x))) return false;
  }
  return true;
}

// Im(in) = Ker(out) as lattices; the detail names a generator on the wrong side.
void exact_at(CheckList& out, const std::string& name, const AbMap& in, const AbMap& next) {
  const AbSub img = image(in), ker = kernel(next);
  const bool equal = sub_equal(img, ker);
  std::string detail;
  if (!equal) {
    for (std::size_t k = 0; k < in.domain().rank() && detail.empty(); ++k)
      if (!next.codomain().is_zero(next.apply(in.apply(in.domain().generator(k)))))
        detail = "generator " + std::to_string(k) + " of the source survives the composite";
    for (const Vec& x : ker.generators())
      if (detail.empty() && !img.contains(x)) detail = "kernel element " + to_string(x) + " is not an image";
  }
  out.add(name, equal, detail);
}

void injective(CheckList& out, const std::string& name, const AbMap& f) {
  const AbSub ker = kernel(f);
  out.add(name, ker.is_trivial(), ker.is_trivial() ? "" : "kernel has order " + ker.order().get_str());
}

void surjective(CheckList& out, const std::string& name, const AbMap& f) {
  out.add(name, is_surjective(f), is_surjective(f) ? "" : "cokernel is nontrivial");
}

// The alternating product of orders along an exact sequence is 1:
// product of the even-position orders equals that of the odd ones.
void bookkeeping(CheckList& out, const std::string& name, const std::vector<BigInt>& orders) {
  BigInt even = 1, odd = 1;
  for (std::size_t i = 0; i < orders.size(); ++i) (i % 2 ? odd : even) *= orders[i];
  out.add(name, even == odd, even.get_str() + " vs " + odd.get_str());
}

// A homomorphism from P_2 defined on (a - 1) ↦ value(a); the relations are
// checked to map to zero before the map is built.
std::optional<AbMap> from_ring_generators(CheckList& out, const std::string& name, const PassiGroup& p,
                                          const FgAb& target, const std::function<Vec(Elem)>& value) {
  std::vector<Vec> vals(p.g.size());
  for (Elem a = 0; a < p.g.size(); ++a) vals[a] = value(a);
  const AbValuedMap f{p.g, target, vals};
  bool kills = true;
  for (const Vec& r : p.relations.basis()) kills = kills && target.is_zero(f.extend(r));
  out.add(name + "_kills_relations", kills);
  if (!kills) return std::nullopt;
  std::vector<Vec> images;
  for (std::size_t k = 0; k < p.group().rank(); ++k) {
    const Vec c = p.pres.lift(p.group().generator(k));
    Vec acc = target.zero();
    for (std::size_t i = 0; i < c.size(); ++i)
      if (c[i] != 0) acc = target.add(acc, target.scale(c[i], vals[i + 1]));
    images.push_back(acc);
  }
  return AbMap::from_images(p.group(), target, images);
}

// A homomorphism out of a subquotient view, defined on representatives.
std::optional<AbMap> from_view(CheckList& out, const std::string& name, const AbelianView& v, const FgAb& target,
                               const std::function<Vec(Elem)>& value) {
  std::vector<Vec> images;
  for (std::size_t k = 0; k < v.group.rank(); ++k)
    images.push_back(value(v.from_ab[v.group.index_of(v.group.generator(k))]));
  try {
    AbMap f = AbMap::from_images(v.group, target, images);
    bool consistent = true;
    for (Elem x = 0; x < v.to_ab.size(); ++x)
      if (v.to_ab[x]) consistent = consistent && same_in(target, f.apply(*v.to_ab[x]), value(x));
    out.add(name, consistent, consistent ? "" : "values are not determined by the class");
    return f;
  } catch (const AlgebraError& e) {
    out.add(name, false, e.what());
    return std::nullopt;
  }
}

TheoremReport start(std::string theorem, const FiniteGroup& g, const Subgroup& b) {
  TheoremReport r;
  r.theorem = std::move(theorem);
  r.group = g.name();
  r.group_order = g.size();
  r.subgroup = b.elements();
  return r;
}

}  // namespace

TheoremReport q_abelianization_check(const FiniteGroup& g, const Subgroup& b, const Limits& limits) {
  require_central(g, b);
  TheoremReport r = start("q_abelianization_is_passi", g, b);
  const QGroup q = build_q(g, b, limits);
  const PassiGroup p = passi_group(g, b, 2, limits);
  const AbelianView qab = abelianization(q.group);
  const FgAb& pg = p.group();
  CheckList& out = r.checks;

  bool same_tensor = q.square.group() == p.square->group();
  for (Elem a = 0; a < g.size() && same_tensor; ++a) same_tensor = q.t(a) == (*p.t)(a);
  out.add("tensor_squares_coincide", same_tensor);

  // α from the universal property of q applied to p_2.
  const FiniteGroup ptab = fgab_to_group(pg, limits);
  std::vector<Elem> p2(g.size());
  for (Elem a = 0; a < g.size(); ++a) p2[a] = static_cast<Elem>(pg.index_of(p.p(a)));
  const Factorization fq = factor_quadratic(GroupFunction(g, ptab, p2), q, limits);
  out.append(fq.checks, "p2_through_q");
  std::vector<Vec> alpha_img;
  for (std::size_t k = 0; k < qab.group.rank(); ++k)
    alpha_img.push_back(pg.element_at(fq.hat(qab.from_ab[qab.group.index_of(qab.group.generator(k))])));
  AbMap alpha;
  try {
    alpha = AbMap::from_images(qab.group, pg, alpha_img);
  } catch (const AlgebraError& e) {
    out.add("alpha_well_defined", false, e.what());
    return r;
  }
  bool through_ab = true;
  for (Elem e = 0; e < q.group.size() && through_ab; ++e)
    through_ab = alpha.apply(qab(e)) == pg.element_at(fq.hat(e));
  out.add("alpha_well_defined", through_ab);

  // The inverse from the universal property of p_2 applied to ab ∘ q.
  AbValuedMap abq{g, qab.group, {}};
  for (Elem a = 0; a < g.size(); ++a) abq.values.push_back(qab(q.q(a)));
  const PolyFactorization fp = factor_poly(abq, p, limits);
  out.append(fp.checks, "ab_q_through_p2");
  const AbMap& beta = fp.fbar;

  out.add("invariant_factors_match", qab.group.factors() == pg.factors(),
          qab.group.describe() + " vs " + pg.describe());
  out.add("beta_after_alpha_is_identity", agree_on_generators(beta.after(alpha), AbMap::identity(qab.group)));
  out.add("alpha_after_beta_is_identity", agree_on_generators(alpha.after(beta), AbMap::identity(pg)));

  std::optional<Elem> bad;
  for (Elem a = 0; a < g.size() && !bad; ++a)
    if (!same_in(pg, alpha.apply(qab(q.q(a))), p.p(a))) bad = a;
  out.add("alpha_ab_q_equals_p2", !bad, bad ? "fails at " + std::to_string(*bad) : "",
          bad ? std::vector<std::int64_t>{*bad} : std::vector<std::int64_t>{});

  bool mu = same_tensor;
  for (std::size_t k = 0; k < q.square.group().rank() && mu; ++k) {
    const Vec x = q.square.group().generator(k);
    mu = same_in(pg, alpha.apply(qab(q.w_of(x))), p.mu2->apply(x));
  }
  out.add("alpha_ab_wq_equals_mu2", mu);
  return r;
}

TheoremReport passi_sequences_check(const FiniteGroup& g, const Subgroup& b, const Limits& limits) {
  require_central(g, b);
  TheoremReport r = start("passi_exact_sequences", g, b);
  CheckList& out = r.checks;
  const PassiGroup p = passi_group(g, b, 2, limits);
  const FgAb& pg = p.group();
  const AbelianView& t = *p.t;
  const TensorProduct& tt = *p.square;
  const AbMap& mu2 = *p.mu2;
  out.append(p.checks, "passi_group");
  const ExteriorSquare ext = exterior_square(t.group);
  out.add("exterior_square_over_same_tensor_square", ext.square.group() == tt.group());

  const Subgroup g3 = gamma(g, 3);
  const Subgroup bg = join(b, derived_subgroup(g));
  const AbelianView c = subquotient_ab(bg, g3);            // BG'/γ_3
  const AbelianView d = subquotient_ab(join(b, g3), g3);   // Bγ_3/γ_3
  const AbelianView gab = abelianization(g);

  // c_2 on Λ²T through the coordinates e_i ⊗ e_j of a lift.
  const std::size_t rank = t.group.rank();
  std::vector<Elem> reps(rank);
  for (std::size_t i = 0; i < rank; ++i) reps[i] = t.from_ab[t.group.index_of(t.group.generator(i))];
  std::vector<Vec> c2_img;
  for (std::size_t k = 0; k < ext.group().rank(); ++k) {
    const Vec v = ext.pres.lift(ext.group().generator(k));
    Vec acc = c.group.zero();
    for (std::size_t i = 0; i < rank; ++i)
      for (std::size_t j = 0; j < rank; ++j)
        if (v[i * rank + j] != 0) acc = c.group.add(acc, c.group.scale(v[i * rank + j], c(g.commutator(reps[i], reps[j]))));
    c2_img.push_back(acc);
  }
  AbMap c2;
  try {
    c2 = AbMap::from_images(ext.group(), c.group, c2_img);
  } catch (const AlgebraError& e) {
    out.add("c2_well_defined", false, e.what());
    return r;
  }
  bool c2_pairs = true;
  for (Elem a = 0; a < g.size() && c2_pairs; ++a)
    for (Elem x = 0; x < g.size() && c2_pairs; ++x)
      c2_pairs = same_in(c.group, c2.apply(ext.wedge(t(a), t(x))), c(g.commutator(a, x)));
  out.add("c2_well_defined", c2_pairs);

  const auto rho1 = from_ring_generators(out, "rho1", p, gab.group, [&](Elem a) { return gab(a); });
  const auto rho2 = from_ring_generators(out, "rho2", p, t.group, [&](Elem a) { return t(a); });
  const auto p2i_c = from_view(out, "p2i_on_BG'_well_defined", c, pg, [&](Elem a) { return p.p(a); });
  const auto p2i_d = from_view(out, "p2i_on_Bgamma3_well_defined", d, pg, [&](Elem a) { return p.p(a); });
  if (!rho1 || !rho2 || !p2i_c || !p2i_d) return r;

  bool rho_p2 = true;
  for (Elem a = 0; a < g.size(); ++a)
    rho_p2 = rho_p2 && same_in(gab.group, rho1->apply(p.p(a)), gab(a)) && same_in(t.group, rho2->apply(p.p(a)), t(a));
  out.add("rho_after_p2_is_projection", rho_p2);

  // p_2([a, b]) = p_2(a) p_2(b) - p_2(b) p_2(a) in Z(G)/(I(B)I(G) + I^3).
  std::optional<std::pair<Elem, Elem>> bad;
  for (Elem a = 0; a < g.size() && !bad; ++a)
    for (Elem x = 0; x < g.size() && !bad; ++x)
      if (!same_in(pg, p.p(g.commutator(a, x)),
                   p.rho(ring::commutator(g, ring::minus_one(g, a), ring::minus_one(g, x)))))
        bad = std::make_pair(a, x);
  out.add("p2_of_commutator_is_ring_commutator", !bad,
          bad ? "fails at (" + std::to_string(bad->first) + ", " + std::to_string(bad->second) + ")" : "",
          bad ? std::vector<std::int64_t>{bad->first, bad->second} : std::vector<std::int64_t>{});
  out.add("p2i_c2_equals_mu2_l2", agree_on_generators(p2i_c->after(c2), mu2.after(ext.l2)));

  // Sequence through G^ab.
  const SubgroupAsFgAb ker_c2 = as_fgab(kernel(c2));
  const AbMap l2k = ext.l2.after(ker_c2.inclusion);
  injective(out, "abelianization_sequence.l2_injective", l2k);
  exact_at(out, "abelianization_sequence.exact_at_tensor_square", l2k, mu2);
  exact_at(out, "abelianization_sequence.exact_at_P2", mu2, *rho1);
  surjective(out, "abelianization_sequence.rho1_surjective", *rho1);
  bookkeeping(out, "abelianization_sequence.order_bookkeeping",
              {ker_c2.group.order(), tt.group().order(), pg.order(), gab.group.order()});

  // Sequence through Λ²T.
  const DirectSum sum = direct_sum(c.group, tt.group());
  const AbMap in = sum.inject_left.after(c2) + sum.inject_right.after(-ext.l2);
  const AbMap mid = p2i_c->after(sum.project_left) + mu2.after(sum.project_right);
  injective(out, "wedge_sequence.c2_l2_injective", in);
  exact_at(out, "wedge_sequence.exact_at_sum", in, mid);
  exact_at(out, "wedge_sequence.exact_at_P2", mid, *rho2);
  surjective(out, "wedge_sequence.rho2_surjective", *rho2);
  bookkeeping(out, "wedge_sequence.order_bookkeeping",
              {ext.group().order(), sum.group.order(), pg.order(), t.group.order()});

  // Sequence through P_2(G/B).
  const QuotientGroup quo = quotient(b);
  const PassiGroup pq = passi_group(quo.group, Subgroup::trivial(quo.group), 2, limits, false);
  const AbMap ppi = passi_map(quo.projection, p, pq);
  injective(out, "quotient_sequence.p2i_injective", *p2i_d);
  exact_at(out, "quotient_sequence.exact_at_P2", *p2i_d, ppi);
  surjective(out, "quotient_sequence.P2_pi_surjective", ppi);
  bookkeeping(out, "quotient_sequence.order_bookkeeping", {d.group.order(), pg.order(), pq.group().order()});

  if (b.size() == 1) {
    std::vector<Vec> j_img;
    for (const Vec& v : ideal_power(g, 2, limits).basis()) j_img.push_back(p.rho(v));
    out.add("mu2_image_is_I2_mod_I3", sub_equal(image(mu2), AbSub(pg, j_img)));
  }
  return r;
}

std::vector<std::string> default_zoo() { return {"C2", "C4", "C2xC2", "C6", "Q8", "D4", "S3", "D8", "Heis3"}; }

FiniteGroup zoo_group(const std::string& name) {
  if (name == "C2") return builtin::cyclic(2);
  if (name == "C4") return builtin::cyclic(4);
  if (name == "C2xC2") return builtin::elementary(2, 2).renamed("C2xC2");
  if (name == "C6") return builtin::cyclic(6);
  if (name == "Q8") return builtin::quaternion8();
  if (name == "D4") return builtin::dihedral(4);
  if (name == "S3") return builtin::symmetric(3);
  if (name == "D8") return builtin::dihedral(8);
  if (name == "Heis3") return builtin::heisenberg(3);
  throw ParseError("unknown zoo group '" + name + "'");
}

namespace {

using Job = std::function<TheoremReport()>;

TheoremReport guarded(const Job& job, const std::string& theorem, const FiniteGroup& g, const Subgroup& b,
                      bool group_level) {
  const auto t0 = std::chrono::steady_clock::now();
  TheoremReport r;
  try {
    r = job();
  } catch (const CapExceeded& e) {
    r = start(theorem, g, b);
    r.checks.skip("instance", e.what());
  } catch (const std::exception& e) {
    r = start(theorem, g, b);
    r.checks.add("instance", false, e.what());
  }
  r.group_level = group_level;
  if (group_level) r.subgroup.clear();
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

TheoremReport identity_report(const FiniteGroup& g, const Subgroup& b, const Limits& limits) {
  TheoremReport r = start("identity_suite", g, b);
  const QGroup q = build_q(g, b, limits);
  r.checks.append(identity_suite(q.q, b), "q");
  const PassiGroup p = passi_group(g, b, 2, limits, false);
  const FiniteGroup ptab = fgab_to_group(p.group(), limits);
  std::vector<Elem> p2(g.size());
  for (Elem a = 0; a < g.size(); ++a) p2[a] = static_cast<Elem>(p.group().index_of(p.p(a)));
  const GroupFunction f(g, ptab, p2);
  r.checks.add("p2_quadratic_relative_B", quadratic_verdict(f, b, limits).is_quadratic);
  r.checks.append(identity_suite(f, b), "p2");
  return r;
}

TheoremReport relative_sequence_report(const FiniteGroup& g, const Subgroup& b, const Limits& limits) {
  TheoremReport r = start("passi_relative_sequence", g, b);
  r.checks.append(passi_sequence_check(g, b, 2, limits));
  r.checks.append(derivation_check(passi_group(g, b, 2, limits, false)), "derivation");
  return r;
}

TheoremReport group_report(const FiniteGroup& g, const Limits& limits) {
  TheoremReport r = start("nilpotency", g, Subgroup::trivial(g));
  r.checks.append(nilpotency_battery(g, 2, limits).checks, "battery");
  r.checks.append(q_nilpotency(g, limits), "q");
  const GroupFunction sq = GroupFunction::power_map(g, 2);
  if (quadratic_verdict(sq, std::nullopt, limits).is_quadratic) r.checks.append(identity_suite(sq), "squaring");
  return r;
}

}  // namespace

std::vector<TheoremReport> run_battery(const std::vector<std::string>& selection, const Limits& limits) {
  struct Entry {
    Job job;
    std::string theorem;
    FiniteGroup g;
    Subgroup b;
    bool group_level;
  };
  std::vector<Entry> jobs;
  for (const std::string& name : selection) {
    const FiniteGroup g = zoo_group(name);
    for (const Subgroup& b : all_subgroups(center(g))) {
      jobs.push_back({[=] { return q_abelianization_check(g, b, limits); }, "q_abelianization_is_passi", g, b, false});
      jobs.push_back({[=] { return passi_sequences_check(g, b, limits); }, "passi_exact_sequences", g, b, false});
      jobs.push_back({[=] { return relative_sequence_report(g, b, limits); }, "passi_relative_sequence", g, b, false});
      jobs.push_back({[=] { return identity_report(g, b, limits); }, "identity_suite", g, b, false});
    }
    const Subgroup triv = Subgroup::trivial(g);
    jobs.push_back({[=] { return group_report(g, limits); }, "nilpotency", g, triv, true});
  }
  std::vector<TheoremReport> out(jobs.size());
  const long count = static_cast<long>(jobs.size());
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < count; ++i) {
    const Entry& e = jobs[static_cast<std::size_t>(i)];
    out[static_cast<std::size_t>(i)] = guarded(e.job, e.theorem, e.g, e.b, e.group_level);
  }
  return out;
}

std::string BatterySummary::line() const {
  return "checked " + std::to_string(claims) + " claims over " + std::to_string(instances) +
         " instances: " + std::to_string(passed) + " pass / " + std::to_string(failed) + " fail / " +
         std::to_string(skipped) + " skipped";
}

BatterySummary summarize(const std::vector<TheoremReport>& reports) {
  BatterySummary s;
  s.instances = reports.size();
  for (const TheoremReport& r : reports) {
    s.claims += r.checks.checks.size();
    s.passed += r.checks.count(Status::Pass);
    s.failed += r.checks.count(Status::Fail);
    s.skipped += r.checks.count(Status::Skipped);
  }
  return s;
}

}  // namespace qg
