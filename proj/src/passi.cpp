#include "quadgroup/passi.hpp"

namespace qg {

// ---------------------------------------------------------------- ring

namespace ring {

RingElt unit(const FiniteGroup& g, Elem a) {
  RingElt x(g.size());
  x[a] = 1;
  return x;
}

RingElt minus_one(const FiniteGroup& g, Elem a) {
  RingElt x(g.size());
  x[a] += 1;
  x[0] -= 1;
  return x;
}

RingElt mul(const FiniteGroup& g, const RingElt& x, const RingElt& y) {
  RingElt z(g.size());
  for (Elem a = 0; a < g.size(); ++a) {
    if (x[a] == 0) continue;
    for (Elem b = 0; b < g.size(); ++b)
      if (y[b] != 0) z[g.mul(a, b)] += x[a] * y[b];
  }
  return z;
}

RingElt add(const RingElt& x, const RingElt& y) {
  RingElt z = x;
  for (std::size_t i = 0; i < z.size(); ++i) z[i] += y[i];
  return z;
}

RingElt sub(const RingElt& x, const RingElt& y) {
  RingElt z = x;
  for (std::size_t i = 0; i < z.size(); ++i) z[i] -= y[i];
  return z;
}

RingElt commutator(const FiniteGroup& g, const RingElt& x, const RingElt& y) {
  return sub(mul(g, x, y), mul(g, y, x));
}

BigInt augmentation(const RingElt& x) {
  BigInt s = 0;
  for (const auto& c : x) s += c;
  return s;
}

}  // namespace ring

namespace {

// x · a, a permutation of coefficients.
RingElt right_translate(const FiniteGroup& g, const RingElt& x, Elem a) {
  RingElt z(g.size());
  for (Elem h = 0; h < g.size(); ++h) z[g.mul(h, a)] = x[h];
  return z;
}

RingElt left_translate(const FiniteGroup& g, Elem a, const RingElt& x) {
  RingElt z(g.size());
  for (Elem h = 0; h < g.size(); ++h) z[g.mul(a, h)] = x[h];
  return z;
}

// Ring element of I(G) with the given coordinates off the identity.
RingElt from_coordinates(const Vec& c) {
  RingElt x(c.size() + 1);
  for (std::size_t i = 0; i < c.size(); ++i) {
    x[i + 1] = c[i];
    x[0] -= c[i];
  }
  return x;
}

bool same_in(const FgAb& a, const Vec& x, const Vec& y) { return a.is_zero(a.sub(x, y)); }

std::string pair_string(Elem a, Elem b) { return "(" + std::to_string(a) + ", " + std::to_string(b) + ")"; }

}  // namespace

Lattice ideal_power(const FiniteGroup& g, int k, const Limits& limits) {
  if (k < 0) throw AlgebraError("ideal power must be non-negative");
  const std::uint64_t n = g.size();
  require_within(static_cast<std::uint64_t>(k) * n * n * n * n, limits.scan_budget, "augmentation ideal power work");
  Lattice current(n);
  for (Elem a = 0; a < n; ++a) current.insert(ring::unit(g, a));
  for (int step = 0; step < k; ++step) {
    Lattice next(n);
    for (const Vec& v : current.basis())
      for (Elem a = 1; a < n; ++a) next.insert(ring::sub(right_translate(g, v, a), v));
    current = std::move(next);
  }
  return current;
}

Lattice ideal_product(const Subgroup& b, const Limits& limits) {
  const FiniteGroup& g = b.parent();
  const std::uint64_t n = g.size();
  require_within(b.size() * n * n, limits.scan_budget, "ideal product work");
  Lattice out(n);
  for (Elem x : b.elements())
    for (Elem a = 1; a < n; ++a)
      if (x != 0) out.insert(ring::mul(g, ring::minus_one(g, x), ring::minus_one(g, a)));
  return out;
}

// ---------------------------------------------------------------- maps

Vec AbValuedMap::extend(const RingElt& x) const {
  Vec acc = target.zero();
  for (Elem a = 0; a < x.size(); ++a)
    if (x[a] != 0) acc = target.add(acc, target.scale(x[a], values[a]));
  return acc;
}

Vec AbValuedMap::deviation(Elem a, Elem b) const {
  return target.sub(target.sub(values[domain.mul(a, b)], values[a]), values[b]);
}

// ---------------------------------------------------------------- P_n

Vec PassiGroup::rho(const RingElt& x) const {
  if (x.size() != g.size()) throw AlgebraError("ring element has the wrong length");
  if (ring::augmentation(x) != 0) throw AlgebraError("ring element is not in the augmentation ideal");
  return pres.project(Vec(x.begin() + 1, x.end()));
}

Vec PassiGroup::p(Elem a) const { return rho(ring::minus_one(g, a)); }

PassiGroup passi_group(const FiniteGroup& g, const Subgroup& b, int n, const Limits& limits, bool check_reductions) {
  if (!b.parent().same_as(g)) throw AlgebraError("subgroup does not belong to the group");
  if (const auto w = b.normality_witness())
    throw AlgebraError("subgroup is not normal: " + std::to_string(w->first) + " conjugates " +
                       std::to_string(w->second) + " outside it");
  if (n < 0) throw AlgebraError("degree must be non-negative");
  require_within(static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(limits.max_degree), "Passi degree");

  PassiGroup p;
  p.g = g;
  p.b = b;
  p.n = n;
  p.relations = ideal_power(g, n + 1, limits);
  for (const Vec& v : ideal_product(b, limits).basis()) p.relations.insert(v);
  std::vector<Vec> rel;
  for (const Vec& v : p.relations.basis()) {
    ensure(ring::augmentation(v) == 0, "relation outside the augmentation ideal");
    rel.emplace_back(v.begin() + 1, v.end());
  }
  p.pres = cokernel(rel, g.size() - 1);

  bool p_matches = true;
  for (Elem a = 0; a < g.size(); ++a) {
    Vec unit(g.size() - 1);
    if (a != 0) unit[a - 1] = 1;
    p_matches = p_matches && p.p(a) == p.pres.project(unit);
  }
  p.checks.add("p_is_rho_of_a_minus_1", p_matches);

  if (n == 2 && b.is_central()) {
    p.t = subquotient_ab(Subgroup::whole(g), join(b, derived_subgroup(g)));
    p.square = tensor_square(p.t->group);
    const std::size_t r = p.t->group.rank();
    std::vector<Elem> reps(r);
    for (std::size_t i = 0; i < r; ++i) reps[i] = p.t->from_ab[p.t->group.index_of(p.t->group.generator(i))];
    std::vector<Vec> images;
    for (std::size_t k = 0; k < p.square->group().rank(); ++k) {
      const Vec c = p.square->lift(p.square->group().generator(k));
      Vec acc = p.group().zero();
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j)
          if (c[i * r + j] != 0)
            acc = p.group().add(acc, p.group().scale(c[i * r + j], p.rho(ring::mul(g, ring::minus_one(g, reps[i]),
                                                                                      ring::minus_one(g, reps[j])))));
      images.push_back(acc);
    }
    try {
      p.mu2 = AbMap::from_images(p.square->group(), p.group(), images);
    } catch (const AlgebraError& e) {
      throw LibraryDefect(std::string("mu_2 is not well defined: ") + e.what());
    }
    bool pairs = true;
    for (Elem a = 0; a < g.size() && pairs; ++a)
      for (Elem c = 0; c < g.size() && pairs; ++c)
        pairs = same_in(p.group(), p.mu2->apply(p.square->tens((*p.t)(a), (*p.t)(c))),
                        p.rho(ring::mul(g, ring::minus_one(g, a), ring::minus_one(g, c))));
    p.checks.add("mu2_on_pairs", pairs);
  }

  if (check_reductions && n >= 1) {
    const QuotientGroup red = quotient(gamma(g, static_cast<std::size_t>(n) + 1));
    std::vector<Elem> bimg;
    for (Elem x : b.elements()) bimg.push_back(red.projection(x));
    const PassiGroup pr = passi_group(red.group, Subgroup::generated(red.group, bimg), n, limits, false);
    const AbMap to_red = passi_map(red.projection, p, pr);
    p.checks.add("reduction_mod_gamma_iso", is_injective(to_red) && is_surjective(to_red),
                 p.group().describe() + " -> " + pr.group().describe());
    const PassiGroup pe = passi_group(g, join(b, gamma(g, static_cast<std::size_t>(n))), n, limits, false);
    const AbMap to_enl = passi_map(GroupHom::identity(g), p, pe);
    p.checks.add("enlarge_by_gamma_iso", is_injective(to_enl) && is_surjective(to_enl),
                 p.group().describe() + " -> " + pe.group().describe());
  }
  return p;
}

AbMap passi_map(const GroupHom& phi, const PassiGroup& src, const PassiGroup& dst) {
  if (!phi.domain().same_as(src.g) || !phi.codomain().same_as(dst.g))
    throw AlgebraError("homomorphism does not match the Passi groups");
  if (src.n != dst.n) throw AlgebraError("Passi groups of different degrees");
  for (Elem x : src.b.elements())
    if (!dst.b.contains(phi(x))) throw AlgebraError("phi(B) is not inside B' at " + std::to_string(x));
  std::vector<Vec> images;
  for (std::size_t k = 0; k < src.group().rank(); ++k) {
    const Vec c = src.pres.lift(src.group().generator(k));
    Vec acc = dst.group().zero();
    for (std::size_t i = 0; i < c.size(); ++i)
      if (c[i] != 0) acc = dst.group().add(acc, dst.group().scale(c[i], dst.p(phi(static_cast<Elem>(i + 1)))));
    images.push_back(acc);
  }
  try {
    return AbMap::from_images(src.group(), dst.group(), images);
  } catch (const AlgebraError& e) {
    throw LibraryDefect(std::string("induced map on Passi groups is not well defined: ") + e.what());
  }
}

// ---------------------------------------------------------------- polynomial maps

namespace {

void validate(const AbValuedMap& f) {
  if (f.values.size() != f.domain.size()) throw AlgebraError("map needs one value per domain element");
  for (const Vec& v : f.values)
    if (v.size() != f.target.rank()) throw AlgebraError("value has the wrong number of coordinates");
}

}  // namespace

PolyVerdict is_polynomial(const AbValuedMap& f, const PassiGroup& p) {
  validate(f);
  if (!f.domain.same_as(p.g)) throw AlgebraError("map and Passi group have different domains");
  PolyVerdict v;
  v.degree = p.n;
  v.relative = p.b;
  const RingElt one = ring::unit(p.g, 0);
  if (!f.target.is_zero(f.values[0])) {
    v.witness = one;
    v.reason = "f(1) != 0";
    return v;
  }
  for (const Vec& r : p.relations.basis())
    if (!f.target.is_zero(f.extend(r))) {
      v.witness = ring::add(one, r);
      v.reason = "f̄ does not vanish on 1 + " + to_string(r);
      return v;
    }
  v.passed = true;
  return v;
}

PolyVerdict is_polynomial(const AbValuedMap& f, int n, const Subgroup& b, const Limits& limits) {
  return is_polynomial(f, passi_group(f.domain, b, n, limits, false));
}

PolyVerdict is_polynomial_rec(const AbValuedMap& f, int n, const Subgroup& b, const Limits& limits) {
  validate(f);
  const FiniteGroup& g = f.domain;
  const std::uint64_t size = g.size();
  std::uint64_t cost = size;
  for (int i = 0; i < n; ++i) cost *= size;
  require_within(cost, limits.scan_budget, "recursive polynomiality work");

  PolyVerdict v;
  v.degree = n;
  v.relative = b;
  std::string path;
  // Absolute degree check of a normalized map, recording basepoints.
  auto rec = [&](auto&& self, const std::vector<Vec>& vals, int k, std::string trail) -> bool {
    if (k == 0) {
      for (Elem a = 0; a < size; ++a)
        if (!f.target.is_zero(vals[a])) {
          path = trail + " nonzero at " + std::to_string(a);
          return false;
        }
      return true;
    }
    for (Elem a = 0; a < size; ++a) {
      std::vector<Vec> d(size);
      for (Elem c = 0; c < size; ++c) d[c] = f.target.sub(f.target.sub(vals[g.mul(a, c)], vals[a]), vals[c]);
      if (!self(self, d, k - 1, trail + " d(" + std::to_string(a) + ", -)")) return false;
    }
    return true;
  };
  if (n == 0) {
    v.passed = rec(rec, f.values, 0, "f");
    v.reason = v.passed ? "" : path;
    return v;
  }
  if (!f.target.is_zero(f.values[0])) {
    v.reason = "f(1) != 0";
    return v;
  }
  for (Elem x : b.elements())
    for (Elem a = 0; a < size; ++a)
      if (!f.target.is_zero(f.deviation(x, a))) {
        v.reason = "d_f" + pair_string(x, a) + " != 0 with the first argument in B";
        return v;
      }
  v.passed = rec(rec, f.values, n, "f");
  if (!v.passed) v.reason = path;
  return v;
}

CheckList deviation_ring_identity(const AbValuedMap& f) {
  validate(f);
  const FiniteGroup& g = f.domain;
  CheckList out;
  out.add("normalized", f.target.is_zero(f.values[0]));
  std::optional<std::pair<Elem, Elem>> bad;
  for (Elem a = 0; a < g.size() && !bad; ++a)
    for (Elem b = 0; b < g.size() && !bad; ++b)
      if (!same_in(f.target, f.deviation(a, b),
                   f.extend(ring::mul(g, ring::minus_one(g, a), ring::minus_one(g, b)))))
        bad = std::make_pair(a, b);
  out.add("deviation_ring_identity", !bad, bad ? "fails at " + pair_string(bad->first, bad->second) : "",
          bad ? std::vector<std::int64_t>{bad->first, bad->second} : std::vector<std::int64_t>{});
  return out;
}

CheckList gamma_ideal_check(const FiniteGroup& g, int n, const Limits& limits) {
  if (n < 1) throw AlgebraError("gamma_ideal_check needs n >= 1");
  CheckList out;
  std::optional<std::pair<Elem, Elem>> bad;
  for (Elem a = 0; a < g.size() && !bad; ++a)
    for (Elem b = 0; b < g.size() && !bad; ++b) {
      const RingElt lhs = ring::minus_one(g, g.commutator(a, b));
      const RingElt rhs = ring::mul(g, ring::commutator(g, ring::minus_one(g, a), ring::minus_one(g, b)),
                                    ring::unit(g, g.mul(g.inv(a), g.inv(b))));
      if (lhs != rhs) bad = std::make_pair(a, b);
    }
  out.add("commutator_ring_identity", !bad, bad ? "fails at " + pair_string(bad->first, bad->second) : "",
          bad ? std::vector<std::int64_t>{bad->first, bad->second} : std::vector<std::int64_t>{});
  const Lattice in = ideal_power(g, n, limits);
  std::optional<Elem> outside;
  const Subgroup gn = gamma(g, static_cast<std::size_t>(n));
  for (Elem c : gn.elements())
    if (!in.contains(ring::minus_one(g, c))) {
      outside = c;
      break;
    }
  out.add("gamma_ideal_inside_power", !outside,
          outside ? std::to_string(*outside) + " - 1 is not in I^" + std::to_string(n) : "",
          outside ? std::vector<std::int64_t>{*outside} : std::vector<std::int64_t>{});
  return out;
}

PolyFactorization factor_poly(const AbValuedMap& f, const PassiGroup& p, const Limits& limits) {
  const PolyVerdict v = is_polynomial(f, p);
  if (!v.passed) throw AlgebraError("map is not polynomial of degree <= " + std::to_string(p.n) + ": " + v.reason);
  const FiniteGroup& g = p.g;
  const FgAb& a = f.target;
  PolyFactorization out;
  std::vector<Vec> images;
  for (std::size_t k = 0; k < p.group().rank(); ++k) {
    const Vec c = p.pres.lift(p.group().generator(k));
    images.push_back(f.extend(from_coordinates(c)));
  }
  try {
    out.fbar = AbMap::from_images(p.group(), a, images);
  } catch (const AlgebraError& e) {
    throw LibraryDefect(std::string("factorization through P_n is not well defined: ") + e.what());
  }
  bool lifts = true;
  std::vector<Vec> pg;
  for (Elem x = 0; x < g.size(); ++x) {
    lifts = lifts && same_in(a, out.fbar.apply(p.p(x)), f.values[x]);
    pg.push_back(p.p(x));
  }
  out.checks.add("fbar_after_p_equals_f", lifts);
  out.checks.add("p_generates", sub_equal(AbSub(p.group(), pg), AbSub::whole(p.group())));

  if (p.mu2) {
    const TensorProduct& sq = *p.square;
    const AbelianView& t = *p.t;
    const std::size_t r = t.group.rank();
    std::vector<Elem> reps(r);
    for (std::size_t i = 0; i < r; ++i) reps[i] = t.from_ab[t.group.index_of(t.group.generator(i))];
    std::vector<Vec> wimg;
    for (std::size_t k = 0; k < sq.group().rank(); ++k) {
      const Vec c = sq.lift(sq.group().generator(k));
      Vec acc = a.zero();
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j)
          if (c[i * r + j] != 0) acc = a.add(acc, a.scale(c[i * r + j], f.deviation(reps[i], reps[j])));
      wimg.push_back(acc);
    }
    try {
      out.w = AbMap::from_images(sq.group(), a, wimg);
    } catch (const AlgebraError& e) {
      throw LibraryDefect(std::string("bilinear part of a polynomial map is not well defined: ") + e.what());
    }
    bool through_mu = true;
    for (std::size_t k = 0; k < sq.group().rank(); ++k) {
      const Vec x = sq.group().generator(k);
      through_mu = through_mu && same_in(a, out.w->apply(x), out.fbar.apply(p.mu2->apply(x)));
    }
    out.checks.add("w_equals_fbar_mu2", through_mu);
    bool pairs = true;
    for (Elem x = 0; x < g.size() && pairs; ++x)
      for (Elem y = 0; y < g.size() && pairs; ++y)
        pairs = same_in(a, out.w->apply(sq.tens(t(x), t(y))), f.deviation(x, y));
    out.checks.add("w_on_pairs", pairs);
    if (a.is_finite() && a.order_u64() <= limits.max_order) {
      const FiniteGroup ag = fgab_to_group(a, limits);
      std::vector<Elem> table(g.size());
      for (Elem x = 0; x < g.size(); ++x) table[x] = static_cast<Elem>(a.index_of(f.values[x]));
      try {
        const BilinearPart bp = bilinear_part(GroupFunction(g, ag, table), p.b, limits);
        bool same = true;
        for (std::size_t k = 0; k < sq.group().rank(); ++k) {
          const Vec x = sq.group().generator(k);
          same = same && bp.value(x) == a.index_of(out.w->apply(x));
        }
        out.checks.add("w_matches_quadratic_bilinear_part", same);
      } catch (const AlgebraError& e) {
        out.checks.add("w_matches_quadratic_bilinear_part", false, e.what());
      }
    } else {
      out.checks.skip("w_matches_quadratic_bilinear_part", "target is infinite or above max_order");
    }
  }
  return out;
}

CheckList derivation_check(const PassiGroup& p) {
  const FiniteGroup& g = p.g;
  const FgAb& pg = p.group();
  CheckList out;
  std::vector<AbMap> act(g.size());
  try {
    for (Elem a = 0; a < g.size(); ++a) {
      std::vector<Vec> images;
      for (std::size_t k = 0; k < pg.rank(); ++k)
        images.push_back(p.rho(left_translate(g, a, from_coordinates(p.pres.lift(pg.generator(k))))));
      act[a] = AbMap::from_images(pg, pg, images);
    }
    out.add("action_well_defined", true);
  } catch (const AlgebraError& e) {
    out.add("action_well_defined", false, e.what());
    return out;
  }
  auto same_map = [&](const AbMap& x, const AbMap& y) {
    for (std::size_t k = 0; k < pg.rank(); ++k)
      if (!same_in(pg, x.apply(pg.generator(k)), y.apply(pg.generator(k)))) return false;
    return true;
  };
  std::optional<std::pair<Elem, Elem>> bad;
  for (Elem a = 0; a < g.size() && !bad; ++a)
    for (Elem b : p.b.elements())
      if (!same_map(act[g.mul(a, b)], act[a])) {
        bad = std::make_pair(a, b);
        break;
      }
  out.add("action_factors_through_quotient", !bad, bad ? "a, b = " + pair_string(bad->first, bad->second) : "");
  bad.reset();
  for (Elem a = 0; a < g.size() && !bad; ++a)
    for (Elem b = 0; b < g.size() && !bad; ++b)
      if (!same_in(pg, p.p(g.mul(a, b)), pg.add(act[a].apply(p.p(b)), p.p(a)))) bad = std::make_pair(a, b);
  out.add("derivation_law", !bad, bad ? "fails at " + pair_string(bad->first, bad->second) : "",
          bad ? std::vector<std::int64_t>{bad->first, bad->second} : std::vector<std::int64_t>{});
  // I^n(G) acts as zero; it maps onto I^n(G/B).
  bool nil = true;
  for (const Vec& y : ideal_power(g, p.n).basis())
    for (std::size_t k = 0; k < pg.rank() && nil; ++k)
      nil = pg.is_zero(p.rho(ring::mul(g, y, from_coordinates(p.pres.lift(pg.generator(k))))));
  out.add("augmentation_power_annihilates", nil);
  return out;
}

CheckList passi_sequence_check(const FiniteGroup& g, const Subgroup& b, int n, const Limits& limits) {
  if (!b.parent().same_as(g)) throw AlgebraError("subgroup does not belong to the group");
  if (!b.is_normal()) throw AlgebraError("subgroup is not normal");
  for (Elem x : b.elements())
    for (Elem y : b.elements())
      if (g.mul(x, y) != g.mul(y, x))
        throw AlgebraError("subgroup is not abelian: " + pair_string(x, y) + " do not commute");
  const PassiGroup p = passi_group(g, b, n, limits, false);
  const QuotientGroup q = quotient(b);
  const PassiGroup pq = passi_group(q.group, Subgroup::trivial(q.group), n, limits, false);
  const AbMap pi = passi_map(q.projection, p, pq);

  CheckList out;
  bool hom = true;
  std::vector<Vec> img;
  for (Elem x : b.elements()) {
    img.push_back(p.p(x));
    for (Elem y : b.elements()) hom = hom && same_in(p.group(), p.p(g.mul(x, y)), p.group().add(p.p(x), p.p(y)));
  }
  out.add("p_n_on_B_homomorphism", hom);
  out.add("exact_at_P_n", sub_equal(AbSub(p.group(), img), kernel(pi)));
  out.add("P_n_pi_surjective", is_surjective(pi));
  return out;
}

BipolyVerdict bipolynomial(const FiniteGroup& g, const FgAb& target, const std::vector<Vec>& values, int m, int n,
                           const Limits& limits) {
  const std::size_t size = g.size();
  if (values.size() != size * size) throw AlgebraError("bipolynomial map needs |G|^2 values");
  const Subgroup triv = Subgroup::trivial(g);
  const PassiGroup pm = passi_group(g, triv, m, limits, false);
  const PassiGroup pn = passi_group(g, triv, n, limits, false);
  for (Elem base = 0; base < size; ++base) {
    AbValuedMap left{g, target, std::vector<Vec>(size)}, right{g, target, std::vector<Vec>(size)};
    for (Elem x = 0; x < size; ++x) {
      left.values[x] = target.sub(values[x * size + base], values[base]);
      right.values[x] = target.sub(values[base * size + x], values[base * size]);
    }
    const PolyVerdict l = is_polynomial(left, pm);
    if (!l.passed) return {false, "a -> f(a, " + std::to_string(base) + "): " + l.reason};
    const PolyVerdict r = is_polynomial(right, pn);
    if (!r.passed) return {false, "b -> f(" + std::to_string(base) + ", b): " + r.reason};
  }
  return {true, ""};
}

}  // namespace qg
