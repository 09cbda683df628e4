#include "quadgroup/quadmaps.hpp"

#include <algorithm>
#include <utility>

#include "quadgroup/kernels.hpp"

namespace qg {
namespace {

std::vector<std::int64_t> as_witness(std::initializer_list<Elem> xs) {
  return std::vector<std::int64_t>(xs.begin(), xs.end());
}

std::string tuple_string(const std::vector<Elem>& t) {
  std::string s = "(";
  for (std::size_t i = 0; i < t.size(); ++i) s += (i ? ", " : "") + std::to_string(t[i]);
  return s + ")";
}

// Least (a, b) in lexicographic order with pred(a, b), or nullopt.
template <class Pred>
std::optional<std::pair<Elem, Elem>> first_pair(std::size_t n, Pred pred) {
  const std::uint64_t count = static_cast<std::uint64_t>(n) * n;
  const std::uint64_t hit = kernels::first_failure(
      count, [&](std::uint64_t i) { return pred(static_cast<Elem>(i / n), static_cast<Elem>(i % n)); });
  if (hit == count) return std::nullopt;
  return std::make_pair(static_cast<Elem>(hit / n), static_cast<Elem>(hit % n));
}

const Subgroup& or_trivial(const std::optional<Subgroup>& b, const FiniteGroup& g, Subgroup& storage) {
  if (b) {
    if (!b->parent().same_as(g)) throw AlgebraError("relative subgroup is not a subgroup of the domain");
    return *b;
  }
  storage = Subgroup::trivial(g);
  return storage;
}

}  // namespace

// ---------------------------------------------------------------- GroupFunction

GroupFunction::GroupFunction(FiniteGroup domain, FiniteGroup codomain, std::vector<Elem> table)
    : domain_(std::move(domain)), codomain_(std::move(codomain)), table_(std::move(table)) {
  if (table_.size() != domain_.size())
    throw AlgebraError("function table has " + std::to_string(table_.size()) + " values, domain has " +
                       std::to_string(domain_.size()) + " elements");
  for (std::size_t i = 0; i < table_.size(); ++i)
    if (table_[i] >= codomain_.size())
      throw AlgebraError("value " + std::to_string(table_[i]) + " at " + std::to_string(i) +
                         " is not an element of the codomain");
}

GroupFunction GroupFunction::from_hom(const GroupHom& h) { return GroupFunction(h.domain(), h.codomain(), h.table()); }

GroupFunction GroupFunction::constant_identity(const FiniteGroup& domain, const FiniteGroup& codomain) {
  return GroupFunction(domain, codomain, std::vector<Elem>(domain.size(), 0));
}

GroupFunction GroupFunction::power_map(const FiniteGroup& g, long k) {
  std::vector<Elem> t(g.size());
  for (Elem a = 0; a < g.size(); ++a) t[a] = g.pow(a, k);
  return GroupFunction(g, g, std::move(t));
}

Elem GroupFunction::deviation(Elem a, Elem b) const {
  const FiniteGroup& h = codomain_;
  return h.mul(h.mul(table_[domain_.mul(a, b)], h.inv(table_[b])), h.inv(table_[a]));
}

GroupFunction GroupFunction::negated() const {
  std::vector<Elem> t(table_.size());
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = codomain_.inv(table_[i]);
  return GroupFunction(domain_, codomain_, std::move(t));
}

GroupFunction GroupFunction::after(const GroupFunction& first) const {
  if (!first.codomain_.same_as(domain_)) throw AlgebraError("composition of incompatible functions");
  std::vector<Elem> t(first.table_.size());
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = table_[first.table_[i]];
  return GroupFunction(first.domain_, codomain_, std::move(t));
}

GroupFunction pointwise_product(const GroupFunction& f, const GroupFunction& g) {
  if (!f.domain().same_as(g.domain()) || !f.codomain().same_as(g.codomain()))
    throw AlgebraError("pointwise product of functions with different (co)domains");
  std::vector<Elem> t(f.table().size());
  for (Elem a = 0; a < t.size(); ++a) t[a] = f.codomain().mul(f(a), g(a));
  return GroupFunction(f.domain(), f.codomain(), std::move(t));
}

DeviationTable::DeviationTable(const GroupFunction& f) : n_(f.domain().size()), d_(n_ * n_) {
  kernels::for_each(static_cast<std::uint64_t>(n_) * n_, [&](std::uint64_t i) {
    d_[i] = f.deviation(static_cast<Elem>(i / n_), static_cast<Elem>(i % n_));
  });
}

// ---------------------------------------------------------------- verdict

std::string to_string(QuadLaw law) {
  switch (law) {
    case QuadLaw::LeftBilinear:
      return "left_bilinearity";
    case QuadLaw::RightBilinear:
      return "right_bilinearity";
    case QuadLaw::CentralInImage:
      return "deviation_central_in_image";
    case QuadLaw::RelativeVanishing:
      return "relative_vanishing";
  }
  return "?";
}

std::string QuadWitness::describe() const { return to_string(law) + " fails at " + tuple_string(tuple); }

QuadVerdict quadratic_verdict(const GroupFunction& f, const std::optional<Subgroup>& relative, const Limits& limits) {
  const FiniteGroup& g = f.domain();
  const FiniteGroup& h = f.codomain();
  const std::size_t n = g.size();
  Subgroup storage;
  const Subgroup& b = or_trivial(relative, g, storage);

  const std::uint64_t cube = static_cast<std::uint64_t>(n) * n * n;
  std::vector<Elem> gens;
  bool reduced = false;
  if (cube > limits.scan_budget) {
    gens = generating_set(Subgroup::whole(g));
    const std::uint64_t cost = static_cast<std::uint64_t>(n) * n * gens.size();
    if (cost > limits.scan_budget)
      throw CapExceeded("quadraticity scan of a domain of order " + std::to_string(n) + " needs " +
                        std::to_string(cost) + " evaluations, budget is " + std::to_string(limits.scan_budget));
    reduced = true;
  }

  const DeviationTable d(f);
  QuadVerdict v;
  v.relative = b;
  v.method = reduced ? "generator-reduced" : "exhaustive";
  v.image_subgroup = Subgroup::generated(h, f.table());
  {
    std::vector<bool> seen(h.size(), false);
    std::vector<Elem> vals;
    for (Elem x : d.values())
      if (!seen[x]) {
        seen[x] = true;
        vals.push_back(x);
      }
    v.deviation_subgroup = Subgroup::generated(h, vals);
  }
  v.linearity_witness = first_pair(n, [&](Elem a, Elem c) { return d(a, c) != 0; });
  v.is_linear = !v.linearity_witness;

  auto fail = [&](QuadLaw law, std::vector<Elem> t) {
    v.counterexample = QuadWitness{law, std::move(t)};
    v.is_quadratic = false;
    return v;
  };

  // Left bilinearity.
  if (!reduced) {
    auto bad = [&](Elem a, Elem a2, Elem c) { return d(g.mul(a, a2), c) != h.mul(d(a, c), d(a2, c)); };
    if (const auto p = first_pair(n, [&](Elem a, Elem a2) {
          for (Elem c = 0; c < n; ++c)
            if (bad(a, a2, c)) return true;
          return false;
        })) {
      Elem c = 0;
      while (!bad(p->first, p->second, c)) ++c;
      return fail(QuadLaw::LeftBilinear, {p->first, p->second, c});
    }
  } else {
    for (Elem a = 0; a < n; ++a)
      for (Elem s : gens)
        for (Elem c = 0; c < n; ++c)
          if (d(g.mul(a, s), c) != h.mul(d(a, c), d(s, c))) return fail(QuadLaw::LeftBilinear, {a, s, c});
  }
  // Right bilinearity.
  if (!reduced) {
    auto bad = [&](Elem a, Elem c, Elem c2) { return d(a, g.mul(c, c2)) != h.mul(d(a, c), d(a, c2)); };
    if (const auto p = first_pair(n, [&](Elem a, Elem c) {
          for (Elem c2 = 0; c2 < n; ++c2)
            if (bad(a, c, c2)) return true;
          return false;
        })) {
      Elem c2 = 0;
      while (!bad(p->first, p->second, c2)) ++c2;
      return fail(QuadLaw::RightBilinear, {p->first, p->second, c2});
    }
  } else {
    for (Elem a = 0; a < n; ++a)
      for (Elem c = 0; c < n; ++c)
        for (Elem s : gens)
          if (d(a, g.mul(c, s)) != h.mul(d(a, c), d(a, s))) return fail(QuadLaw::RightBilinear, {a, c, s});
  }
  // D_f central in I_f: for each distinct deviation value, the least c whose
  // image does not commute with it.
  {
    constexpr std::int64_t kUnknown = -2, kCentral = -1;
    std::vector<std::int64_t> breaker(h.size(), kUnknown);
    auto first_breaker = [&](Elem x) {
      if (breaker[x] == kUnknown) {
        breaker[x] = kCentral;
        for (Elem c = 0; c < n; ++c)
          if (h.mul(x, f(c)) != h.mul(f(c), x)) {
            breaker[x] = c;
            break;
          }
      }
      return breaker[x];
    };
    for (Elem a = 0; a < n; ++a)
      for (Elem c = 0; c < n; ++c) {
        const std::int64_t k = first_breaker(d(a, c));
        if (k >= 0) return fail(QuadLaw::CentralInImage, {a, c, static_cast<Elem>(k)});
      }
  }
  // Relative vanishing.
  if (const auto p = first_pair(n, [&](Elem a, Elem c) { return (b.contains(a) || b.contains(c)) && d(a, c) != 0; }))
    return fail(QuadLaw::RelativeVanishing, {p->first, p->second});

  v.is_quadratic = true;
  return v;
}

bool replay(const GroupFunction& f, const QuadWitness& w, const Subgroup& relative) {
  const FiniteGroup& g = f.domain();
  const FiniteGroup& h = f.codomain();
  const auto& t = w.tuple;
  auto d = [&](Elem a, Elem b) { return f.deviation(a, b); };
  switch (w.law) {
    case QuadLaw::LeftBilinear:
      return t.size() == 3 && d(g.mul(t[0], t[1]), t[2]) != h.mul(d(t[0], t[2]), d(t[1], t[2]));
    case QuadLaw::RightBilinear:
      return t.size() == 3 && d(t[0], g.mul(t[1], t[2])) != h.mul(d(t[0], t[1]), d(t[0], t[2]));
    case QuadLaw::CentralInImage: {
      if (t.size() != 3) return false;
      const Elem x = d(t[0], t[1]);
      return h.mul(x, f(t[2])) != h.mul(f(t[2]), x);
    }
    case QuadLaw::RelativeVanishing:
      return t.size() == 2 && (relative.contains(t[0]) || relative.contains(t[1])) && d(t[0], t[1]) != 0;
  }
  return false;
}

// ---------------------------------------------------------------- radical

Radical radical(const GroupFunction& f, const Limits& limits) {
  const QuadVerdict v = quadratic_verdict(f, std::nullopt, limits);
  if (!v.is_quadratic) throw AlgebraError("radical of a non-quadratic map: " + v.counterexample->describe());
  const FiniteGroup& g = f.domain();
  const std::size_t n = g.size();
  const DeviationTable d(f);
  auto in_radical = [&](Elem a) {
    for (Elem c = 0; c < n; ++c)
      if (d(a, c) != 0 || d(c, a) != 0) return false;
    return true;
  };
  std::vector<Elem> els;
  for (Elem a = 0; a < n; ++a)
    if (in_radical(a)) els.push_back(a);
  Radical r;
  r.subgroup = Subgroup::from_elements(g, els);
  r.checks.add("derived_subgroup_inside", derived_subgroup(g).is_subset_of(r.subgroup));
  const QuadVerdict rel = quadratic_verdict(f, r.subgroup, limits);
  r.checks.add("quadratic_relative_radical", rel.is_quadratic,
               rel.counterexample ? rel.counterexample->describe() : std::string{});
  // Every subgroup generated by rad(f) and one more element meets a nonzero deviation.
  bool maximal = true;
  std::vector<std::int64_t> witness;
  for (Elem x = 0; x < n && maximal; ++x) {
    if (r.subgroup.contains(x)) continue;
    std::vector<Elem> gens = r.subgroup.elements();
    gens.push_back(x);
    const Subgroup bigger = Subgroup::generated(g, gens);
    bool vanishes = true;
    for (Elem a : bigger.elements())
      for (Elem c = 0; c < n && vanishes; ++c) vanishes = d(a, c) == 0 && d(c, a) == 0;
    if (vanishes) {
      maximal = false;
      witness = as_witness({x});
    }
  }
  r.checks.add("radical_is_maximal", maximal, maximal ? "" : "a larger subgroup also kills the deviation", witness);
  return r;
}

// ---------------------------------------------------------------- bilinear part

Elem BilinearPart::value(const Vec& x) const { return d_view.from_ab[d_view.group.index_of(w.apply(x))]; }

BilinearPart bilinear_part(const GroupFunction& f, const std::optional<Subgroup>& relative, const Limits& limits) {
  const FiniteGroup& g = f.domain();
  Subgroup storage;
  const Subgroup& b = or_trivial(relative, g, storage);
  const QuadVerdict v = quadratic_verdict(f, b, limits);
  if (!v.is_quadratic) throw AlgebraError("bilinear part of a non-quadratic map: " + v.counterexample->describe());

  BilinearPart bp;
  bp.relative = b;
  bp.t = subquotient_ab(Subgroup::whole(g), join(b, derived_subgroup(g)));
  bp.square = tensor_square(bp.t.group);
  bp.deviation_group = v.deviation_subgroup;
  bp.d_view = subquotient_ab(v.deviation_subgroup, Subgroup::trivial(f.codomain()));

  const DeviationTable d(f);
  const FgAb& t = bp.t.group;
  auto rep = [&](Elem a) { return bp.t.from_ab[t.index_of(bp.t(a))]; };
  const std::size_t n = g.size();
  if (const auto p = first_pair(n, [&](Elem a, Elem c) { return d(a, c) != d(rep(a), rep(c)); }))
    throw AlgebraError("deviation is not constant on cosets of BG' at (" + std::to_string(p->first) + ", " +
                       std::to_string(p->second) + ")");

  const std::size_t r = t.rank();
  std::vector<Elem> basis_rep(r);
  for (std::size_t i = 0; i < r; ++i) basis_rep[i] = bp.t.from_ab[t.index_of(t.generator(i))];
  const FgAb& dg = bp.d_view.group;
  std::vector<Vec> images;
  for (std::size_t k = 0; k < bp.square.group().rank(); ++k) {
    const Vec c = bp.square.lift(bp.square.group().generator(k));
    Vec acc = dg.zero();
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j)
        if (c[i * r + j] != 0) acc = dg.add(acc, dg.scale(c[i * r + j], bp.d_view(d(basis_rep[i], basis_rep[j]))));
    images.push_back(acc);
  }
  try {
    bp.w = AbMap::from_images(bp.square.group(), dg, images);
  } catch (const AlgebraError& e) {
    throw LibraryDefect(std::string("bilinear part is not well defined: ") + e.what());
  }
  if (const auto p = first_pair(n, [&](Elem a, Elem c) {
        return bp.w.apply(bp.square.tens(bp.t(a), bp.t(c))) != bp.d_view(d(a, c));
      }))
    throw LibraryDefect("bilinear part does not reproduce the deviation at (" + std::to_string(p->first) + ", " +
                        std::to_string(p->second) + ")");
  return bp;
}

// ---------------------------------------------------------------- identities

CheckList identity_suite(const GroupFunction& f, const std::optional<Subgroup>& relative) {
  const FiniteGroup& g = f.domain();
  const FiniteGroup& h = f.codomain();
  const std::size_t n = g.size();
  Subgroup storage;
  const Subgroup& b = or_trivial(relative, g, storage);
  const DeviationTable d(f);
  const GroupFunction neg = f.negated();
  auto m = [&](Elem x, Elem y) { return h.mul(x, y); };
  auto i = [&](Elem x) { return h.inv(x); };

  CheckList out;
  auto run = [&](const std::string& name, auto bad) {
    const auto p = first_pair(n, bad);
    out.add(name, !p, p ? "fails at (a, b) = (" + std::to_string(p->first) + ", " + std::to_string(p->second) + ")" : "",
            p ? as_witness({p->first, p->second}) : std::vector<std::int64_t>{});
  };
  out.add("normalized", f(0) == 0);
  run("linear_on_relative", [&](Elem a, Elem c) { return b.contains(a) && b.contains(c) && f(g.mul(a, c)) != m(f(a), f(c)); });
  run("product_expansion_left", [&](Elem a, Elem c) { return f(g.mul(a, c)) != m(m(d(a, c), f(a)), f(c)); });
  run("product_expansion_right", [&](Elem a, Elem c) { return f(g.mul(a, c)) != m(m(f(a), f(c)), d(a, c)); });
  run("deviation_formula", [&](Elem a, Elem c) { return d(a, c) != m(m(i(f(a)), f(g.mul(a, c))), i(f(c))); });
  run("inverse_formula", [&](Elem a, Elem) { return f(g.inv(a)) != m(i(f(a)), d(a, a)); });
  run("quotient_formula", [&](Elem a, Elem c) {
    const Elem q = g.mul(a, g.inv(c));
    return f(q) != m(m(f(a), i(f(c))), i(d(q, c)));
  });
  run("commutator_formula", [&](Elem a, Elem c) {
    return f(g.commutator(a, c)) != m(m(h.commutator(f(a), f(c)), d(a, c)), i(d(c, a)));
  });
  run("conjugation_formula", [&](Elem a, Elem c) {
    return f(g.conjugate(a, c)) != m(m(h.conjugate(f(a), f(c)), d(a, c)), i(d(c, a)));
  });
  run("negated_deviation", [&](Elem a, Elem c) {
    return neg.deviation(a, c) != m(i(d(c, a)), i(f(g.commutator(g.inv(a), g.inv(c)))));
  });
  return out;
}

// ---------------------------------------------------------------- pairs

PairComposition pair_compose(const GroupFunction& g, const Subgroup& a, const GroupFunction& f, const Subgroup& b,
                             const Limits& limits) {
  if (!g.codomain().same_as(f.domain())) throw AlgebraError("pair_compose: g does not land in the domain of f");
  const QuadVerdict vg = quadratic_verdict(g, a, limits);
  if (!vg.is_quadratic) throw AlgebraError("g is not quadratic relative A: " + vg.counterexample->describe());
  const QuadVerdict vf = quadratic_verdict(f, b, limits);
  if (!vf.is_quadratic) throw AlgebraError("f is not quadratic relative B: " + vf.counterexample->describe());
  for (Elem x : a.elements())
    if (!b.contains(g(x)))
      throw AlgebraError("not a quadratic pair: g(" + std::to_string(x) + ") lies outside B");
  const FiniteGroup& mid = f.domain();
  for (Elem x : vg.deviation_subgroup.elements())
    for (Elem y = 0; y < mid.size(); ++y)
      if (f.deviation(x, y) != 0 || f.deviation(y, x) != 0)
        throw AlgebraError("not a quadratic pair: d_f does not vanish at D_g element " + std::to_string(x) +
                           " against " + std::to_string(y));

  PairComposition out{f.after(g), {}};
  const GroupFunction& fg = out.composite;
  const QuadVerdict vfg = quadratic_verdict(fg, a, limits);
  out.checks.add("composite_quadratic_relative_A", vfg.is_quadratic,
                 vfg.counterexample ? vfg.counterexample->describe() : "");

  const FiniteGroup& h = f.codomain();
  const auto p = first_pair(g.domain().size(), [&](Elem x, Elem y) {
    return fg.deviation(x, y) != h.mul(f(g.deviation(x, y)), f.deviation(g(x), g(y)));
  });
  out.checks.add("deviation_chain_rule", !p,
                 p ? "fails at (" + std::to_string(p->first) + ", " + std::to_string(p->second) + ")" : "",
                 p ? as_witness({p->first, p->second}) : std::vector<std::int64_t>{});

  const Subgroup bg = join(b, derived_subgroup(mid));
  if (!vg.deviation_subgroup.is_subset_of(bg) || !vfg.is_quadratic) {
    out.checks.add("bilinear_chain_rule", true, "vacuous: D_g is not contained in BG'");
    return out;
  }
  const BilinearPart wfg = bilinear_part(fg, a, limits);
  const BilinearPart wg = bilinear_part(g, a, limits);
  const BilinearPart wf = bilinear_part(f, b, limits);
  // ḡ: K/AK' -> G/BG', read off representatives.
  const FgAb& tk = wg.t.group;
  std::vector<Vec> gbar_images;
  for (std::size_t i = 0; i < tk.rank(); ++i) gbar_images.push_back(wf.t(g(wg.t.from_ab[tk.index_of(tk.generator(i))])));
  const AbMap gbar = AbMap::from_images(tk, wf.t.group, gbar_images);
  bool induced = true;
  for (Elem x = 0; x < g.domain().size() && induced; ++x) induced = gbar.apply(wg.t(x)) == wf.t(g(x));
  out.checks.add("induced_map_on_abelian_quotients", induced);
  const AbMap gg = tensor_maps(gbar, gbar, wg.square, wf.square);
  bool ok = true;
  std::vector<std::int64_t> witness;
  for (std::size_t k = 0; k < wg.square.group().rank() && ok; ++k) {
    const Vec x = wg.square.group().generator(k);
    ok = wfg.value(x) == h.mul(f(wg.value(x)), wf.value(gg.apply(x)));
    if (!ok) witness = {static_cast<std::int64_t>(k)};
  }
  out.checks.add("bilinear_chain_rule", ok, ok ? "" : "fails on a tensor generator", witness);
  return out;
}

// ---------------------------------------------------------------- sums

CheckList sum_check(const GroupFunction& f, const GroupFunction& g, const Limits& limits) {
  const FiniteGroup& h = f.codomain();
  const GroupFunction two = GroupFunction::power_map(h, 2);
  const QuadVerdict v2 = quadratic_verdict(two, std::nullopt, limits);
  if (!v2.is_quadratic) throw AlgebraError("squaring on the codomain is not quadratic: " + v2.counterexample->describe());
  for (const GroupFunction* fn : {&f, &g}) {
    const char* which = fn == &f ? "f" : "g";
    const QuadVerdict v = quadratic_verdict(*fn, std::nullopt, limits);
    if (!v.is_quadratic)
      throw AlgebraError(std::string(which) + " is not quadratic: " + v.counterexample->describe());
    for (Elem x : v.deviation_subgroup.elements())
      for (Elem y = 0; y < h.size(); ++y)
        if (two.deviation(x, y) != 0 || two.deviation(y, x) != 0)
          throw AlgebraError(std::string("(2_H, ") + which + ") is not a quadratic pair at D element " +
                             std::to_string(x));
  }
  CheckList out;
  const Subgroup z = center(h);
  out.add("deviations_of_f_central", quadratic_verdict(f, std::nullopt, limits).deviation_subgroup.is_subset_of(z));
  out.add("deviations_of_g_central", quadratic_verdict(g, std::nullopt, limits).deviation_subgroup.is_subset_of(z));
  const GroupFunction s = pointwise_product(f, g);
  const std::size_t n = f.domain().size();
  auto check = [&](const std::string& name, auto rhs) {
    const auto p = first_pair(n, [&](Elem a, Elem b) { return s.deviation(a, b) != rhs(a, b); });
    out.add(name, !p, p ? "fails at (" + std::to_string(p->first) + ", " + std::to_string(p->second) + ")" : "",
            p ? as_witness({p->first, p->second}) : std::vector<std::int64_t>{});
  };
  check("sum_deviation_via_squaring", [&](Elem a, Elem b) {
    return h.mul(h.mul(f.deviation(a, b), g.deviation(a, b)), two.deviation(g(a), f(b)));
  });
  check("sum_deviation_via_commutator", [&](Elem a, Elem b) {
    return h.mul(h.mul(f.deviation(a, b), g.deviation(a, b)), h.commutator(f(b), g(a)));
  });
  return out;
}

// ---------------------------------------------------------------- nilpotency

namespace {

BatteryProperty property_from(const std::string& name, const GroupFunction& f, const Limits& limits) {
  try {
    const QuadVerdict v = quadratic_verdict(f, std::nullopt, limits);
    return {name, v.is_quadratic, v.is_quadratic ? "" : v.counterexample->describe()};
  } catch (const CapExceeded& e) {
    return {name, std::nullopt, e.what()};
  }
}

// a1 b1 ... an bn = prod_{i<j} [b_i, a_j] · (a1 ... an)(b1 ... bn) and the
// multiplication deviation equals the same commutator product.  The
// commutators are central in class 2, so they are accumulated as the a_j are
// chosen.
class Collection {
 public:
  Collection(const FiniteGroup& g, int n) : g_(g), n_(n), a_(n), b_(n) {}

  // Searches all tuples with a1 = first_a, b1 = first_b; returns true and
  // fills `witness` on the first failure.
  bool fails(Elem first_a, Elem first_b, bool deviation_form, std::vector<Elem>* witness) {
    a_[0] = first_a;
    b_[0] = first_b;
    deviation_form_ = deviation_form;
    witness_ = witness;
    return level(1, g_.mul(first_a, first_b), first_a, first_b, 0);
  }

 private:
  bool level(int j, Elem word, Elem as, Elem bs, Elem comm) {
    if (j == n_) {
      const bool bad = deviation_form_ ? g_.mul(g_.mul(word, g_.inv(bs)), g_.inv(as)) != comm
                                       : word != g_.mul(g_.mul(comm, as), bs);
      if (bad && witness_) {
        witness_->clear();
        for (int i = 0; i < n_; ++i) witness_->push_back(a_[i]);
        for (int i = 0; i < n_; ++i) witness_->push_back(b_[i]);
      }
      return bad;
    }
    const auto size = static_cast<Elem>(g_.size());
    for (Elem a = 0; a < size; ++a) {
      a_[j] = a;
      Elem c = comm;
      for (int i = 0; i < j; ++i) c = g_.mul(c, g_.commutator(b_[i], a));
      const Elem wa = g_.mul(word, a), na = g_.mul(as, a);
      for (Elem b = 0; b < size; ++b) {
        b_[j] = b;
        if (level(j + 1, g_.mul(wa, b), na, g_.mul(bs, b), c)) return true;
      }
    }
    return false;
  }

  const FiniteGroup& g_;
  int n_;
  std::vector<Elem> a_, b_;
  bool deviation_form_ = false;
  std::vector<Elem>* witness_ = nullptr;
};

}  // namespace

NilpotencyReport nilpotency_battery(const FiniteGroup& g, int n, const Limits& limits) {
  if (n < 2 || n > 4) throw AlgebraError("nilpotency battery needs 2 <= n <= 4, got " + std::to_string(n));
  NilpotencyReport r;
  r.n = n;
  r.nilpotency_class = nilpotency_class(g);
  const bool class_two = r.nilpotency_class && *r.nilpotency_class <= 2;
  const std::uint64_t order = g.size();
  r.properties.push_back({"two_step_nilpotent", class_two,
                          r.nilpotency_class ? "class " + std::to_string(*r.nilpotency_class) : "not nilpotent"});

  // Multiplication G^n -> G, (g1, ..., gn) -> g1 ... gn.
  {
    std::uint64_t power = 1;
    bool fits = true;
    for (int i = 0; i < n && fits; ++i) {
      power *= order;
      fits = power <= limits.max_order;
    }
    const std::uint64_t gens = static_cast<std::uint64_t>(n) * std::max<std::size_t>(1, generating_set(Subgroup::whole(g)).size());
    if (!fits) {
      r.properties.push_back({"multiplication_quadratic", std::nullopt, "G^n exceeds max_order"});
    } else if (power * power > limits.scan_budget || power * power * std::min(power, gens) > limits.scan_budget) {
      r.properties.push_back({"multiplication_quadratic", std::nullopt, "scan of G^n exceeds budget"});
    } else {
      FiniteGroup p = g;
      for (int i = 1; i < n; ++i) p = builtin::direct_product(p, g, limits);
      std::vector<Elem> mu(p.size());
      for (Elem x = 0; x < p.size(); ++x) {
        Elem rest = x, acc = 0;
        for (int i = 0; i < n; ++i) {
          acc = g.mul(acc, static_cast<Elem>(rest % order));
          rest = static_cast<Elem>(rest / order);
        }
        mu[x] = acc;
      }
      r.properties.push_back(property_from("multiplication_quadratic", GroupFunction(p, g, std::move(mu)), limits));
    }
  }

  // Products f1 ... fn of endomorphisms drawn from trivial, identity and the
  // inner automorphisms by the generators.
  {
    std::vector<std::vector<Elem>> family{std::vector<Elem>(order, 0), GroupFunction::power_map(g, 1).table()};
    for (Elem s : generating_set(Subgroup::whole(g))) {
      std::vector<Elem> t(order);
      for (Elem x = 0; x < order; ++x) t[x] = g.conjugate(s, x);
      if (std::find(family.begin(), family.end(), t) == family.end()) family.push_back(std::move(t));
    }
    std::vector<std::vector<Elem>> products;
    std::vector<std::size_t> choice(n, 0);
    for (;;) {
      std::vector<Elem> t(order, 0);
      for (int i = 0; i < n; ++i)
        for (Elem x = 0; x < order; ++x) t[x] = g.mul(t[x], family[choice[i]][x]);
      if (std::find(products.begin(), products.end(), t) == products.end()) products.push_back(std::move(t));
      int k = 0;
      while (k < n && ++choice[k] == family.size()) choice[k++] = 0;
      if (k == n) break;
    }
    BatteryProperty prop{"products_of_linear_quadratic", true,
                         std::to_string(products.size()) + " distinct products checked"};
    for (const auto& t : products) {
      const BatteryProperty one = property_from("", GroupFunction(g, g, t), limits);
      if (!one.holds) {
        prop = {prop.name, std::nullopt, one.detail};
        break;
      }
      if (!*one.holds) {
        prop = {prop.name, false, one.detail};
        break;
      }
    }
    r.properties.push_back(prop);
  }

  r.properties.push_back(property_from("squaring_quadratic", GroupFunction::power_map(g, 2), limits));
  r.properties.push_back(property_from("power_map_quadratic", GroupFunction::power_map(g, n), limits));

  std::optional<bool> common;
  bool agree = true;
  for (std::size_t i = 0; i < 4; ++i) {
    const auto& h = r.properties[i].holds;
    if (!h) continue;
    if (common && *common != *h) agree = false;
    common = *h;
  }
  r.checks.add("first_four_equivalent", agree);
  const auto& p5 = r.properties[4].holds;
  if (!p5)
    r.checks.skip("class_two_implies_power_map", r.properties[4].detail);
  else
    r.checks.add("class_two_implies_power_map", !class_two || *p5);

  std::uint64_t cost = 1;
  bool affordable = true;
  for (int i = 0; i < 2 * n && affordable; ++i) {
    cost *= order;
    affordable = cost <= limits.pointwise_budget;
  }
  for (const bool deviation_form : {false, true}) {
    const std::string name = deviation_form ? "multiplication_deviation" : "commutator_collection";
    if (!class_two) {
      r.checks.add(name, true, "vacuous: group is not of class at most 2");
      continue;
    }
    if (!affordable) {
      r.checks.skip(name, "|G|^(2n) exceeds the pointwise budget");
      continue;
    }
    const std::uint64_t hit = kernels::first_failure(order * order, [&](std::uint64_t i) {
      Collection c(g, n);
      return c.fails(static_cast<Elem>(i / order), static_cast<Elem>(i % order), deviation_form, nullptr);
    });
    if (hit == order * order) {
      r.checks.add(name, true);
    } else {
      std::vector<Elem> w;
      Collection(g, n).fails(static_cast<Elem>(hit / order), static_cast<Elem>(hit % order), deviation_form, &w);
      r.checks.add(name, false, "fails at (a1..an, b1..bn) = " + tuple_string(w),
                   std::vector<std::int64_t>(w.begin(), w.end()));
    }
  }
  return r;
}

}  // namespace qg
