#include "quadgroup/universal_q.hpp"

#include <algorithm>
#include <deque>

namespace qg {

namespace {

std::string pair_string(std::uint64_t a, std::uint64_t b) {
  return "(" + std::to_string(a) + ", " + std::to_string(b) + ")";
}

}  // namespace

QGroup build_q(const FiniteGroup& g, const std::optional<Subgroup>& relative, const Limits& limits) {
  QGroup out;
  out.base = g;
  out.relative = relative ? *relative : Subgroup::trivial(g);
  if (!out.relative.parent().same_as(g)) throw AlgebraError("relative subgroup is not a subgroup of G");
  if (!out.relative.is_normal()) throw AlgebraError("relative subgroup is not normal");
  out.t = subquotient_ab(Subgroup::whole(g), join(out.relative, derived_subgroup(g)));
  out.square = tensor_square(out.t.group);

  const FgAb& tt = out.square.group();
  const std::uint64_t m = tt.order_u64();
  const std::uint64_t n = g.size();
  require_within(m * n, limits.max_order, "order of Q(G, B)");
  const std::uint64_t order = m * n;

  // Addition and negation on T⊗T by index, and the cocycle index of ā⊗b̄.
  const std::vector<Vec> tt_elements = tt.elements(limits.enum_cap);
  std::vector<std::uint64_t> add(m * m), neg(m);
  for (std::uint64_t x = 0; x < m; ++x) {
    neg[x] = tt.index_of(tt.neg(tt_elements[x]));
    for (std::uint64_t y = 0; y < m; ++y) add[x * m + y] = tt.index_of(tt.add(tt_elements[x], tt_elements[y]));
  }
  std::vector<std::uint64_t> cocycle(n * n);
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b) cocycle[a * n + b] = tt.index_of(out.square.tens(out.t(a), out.t(b)));

  std::vector<Elem> table(order * order);
  for (std::uint64_t x = 0; x < m; ++x)
    for (Elem a = 0; a < n; ++a)
      for (std::uint64_t y = 0; y < m; ++y)
        for (Elem b = 0; b < n; ++b) {
          const std::uint64_t s = add[add[x * m + y] * m + neg[cocycle[a * n + b]]];
          table[(x * n + a) * order + y * n + b] = static_cast<Elem>(s * n + g.mul(a, b));
        }
  std::string name = "Q(" + g.name();
  if (!out.relative.is_trivial()) name += ", B" + std::to_string(out.relative.size());
  out.group = FiniteGroup::from_table(std::move(table), order, name + ")", limits);

  std::vector<Elem> qt(n), idt(order);
  for (Elem a = 0; a < n; ++a) qt[a] = out.element(0, a);
  out.q = GroupFunction(g, out.group, qt);
  out.w.resize(m);
  for (std::uint64_t x = 0; x < m; ++x) out.w[x] = out.element(x, 0);
  for (Elem e = 0; e < order; ++e) idt[e] = out.base_part(e);
  out.id_hat = GroupHom(out.group, g, idt);

  const FiniteGroup& qg_ = out.group;
  bool dev = true;
  for (Elem a = 0; a < n && dev; ++a)
    for (Elem b = 0; b < n && dev; ++b) dev = out.q.deviation(a, b) == out.w[cocycle[a * n + b]];
  out.checks.add("q_deviation_is_tensor", dev);
  const QuadVerdict v = quadratic_verdict(out.q, out.relative, limits);
  out.checks.add("q_quadratic_relative_B", v.is_quadratic, v.counterexample ? v.counterexample->describe() : "");
  bool retract = true;
  for (Elem a = 0; a < n; ++a) retract = retract && out.id_hat(out.q(a)) == a;
  out.checks.add("id_hat_retracts_q", retract);
  bool w_hom = true;
  for (std::uint64_t x = 0; x < m && w_hom; ++x)
    for (std::uint64_t y = 0; y < m && w_hom; ++y) w_hom = out.w[add[x * m + y]] == qg_.mul(out.w[x], out.w[y]);
  std::vector<Elem> w_sorted = out.w;
  std::sort(w_sorted.begin(), w_sorted.end());
  const bool w_injective = std::adjacent_find(w_sorted.begin(), w_sorted.end()) == w_sorted.end();
  out.checks.add("w_q_injective_homomorphism", w_hom && w_injective);
  const Subgroup image_w = Subgroup::generated(qg_, out.w);
  out.checks.add("w_q_image_central", image_w.is_central());
  out.checks.add("id_hat_surjective", out.id_hat.image().is_whole());
  out.checks.add("kernel_id_hat_equals_image_w_q", out.id_hat.kernel() == image_w && image_w.size() == m);
  return out;
}

Factorization factor_quadratic(const GroupFunction& f, const QGroup& q, const Limits& limits) {
  if (!f.domain().same_as(q.base)) throw AlgebraError("map and Q(G, B) have different base groups");
  const BilinearPart bp = bilinear_part(f, q.relative, limits);
  ensure(bp.square.group() == q.square.group(), "tensor square of T differs between Q and the bilinear part");
  const FiniteGroup& h = f.codomain();
  const std::uint64_t m = q.square.group().order_u64();
  const std::size_t n = q.base.size();
  std::vector<Elem> wf(m);
  for (std::uint64_t x = 0; x < m; ++x) wf[x] = bp.value(q.square.group().element_at(x));
  std::vector<Elem> table(q.group.size());
  for (std::uint64_t x = 0; x < m; ++x)
    for (Elem a = 0; a < n; ++a) table[q.element(x, a)] = h.mul(wf[x], f(a));

  Factorization out;
  try {
    out.hat = GroupHom(q.group, h, std::move(table));
  } catch (const AlgebraError& e) {
    throw LibraryDefect(std::string("factorization through Q is not a homomorphism: ") + e.what());
  }
  bool lifts = true;
  for (Elem a = 0; a < n; ++a) lifts = lifts && out.hat(q.q(a)) == f(a);
  out.checks.add("hat_after_q_equals_f", lifts);
  // Q is generated by q(X) and d_q(X × X); a homomorphism is fixed by its values there.
  const std::vector<Elem> xs = generating_set(Subgroup::whole(q.base));
  std::vector<Elem> gens;
  for (Elem x : xs) gens.push_back(q.q(x));
  for (Elem x : xs)
    for (Elem y : xs) gens.push_back(q.q.deviation(x, y));
  out.checks.add("q_generators_generate", Subgroup::generated(q.group, gens).is_whole());
  return out;
}

GroupHom q_of_hom(const GroupHom& h, const QGroup& q1, const QGroup& q2, const Limits& limits) {
  if (!h.domain().same_as(q1.base) || !h.codomain().same_as(q2.base))
    throw AlgebraError("homomorphism does not match the base groups");
  for (Elem b : q1.relative.elements())
    if (!q2.relative.contains(h(b)))
      throw AlgebraError("h(B1) is not inside B2 at element " + std::to_string(b));
  return factor_quadratic(q2.q.after(GroupFunction::from_hom(h)), q1, limits).hat;
}

CheckList q_nilpotency(const FiniteGroup& g, const Limits& limits) {
  CheckList out;
  const auto cg = nilpotency_class(g);
  const QGroup q = build_q(g, std::nullopt, limits);
  const auto cq = nilpotency_class(q.group);
  auto show = [](const std::optional<std::size_t>& c) { return c ? std::to_string(*c) : std::string("none"); };
  const std::string detail = "class(G) = " + show(cg) + ", class(Q(G)) = " + show(cq);
  if (!cg) {
    out.add("class_bound", true, "vacuous: G is not nilpotent");
    return out;
  }
  out.add("class_bound", cq && *cq <= std::max<std::size_t>(*cg, 2), detail);
  if (g.is_abelian())
    out.add("abelian_gives_class_two", cq && *cq <= 2, detail);
  else
    out.add("abelian_gives_class_two", true, "vacuous: G is not abelian");
  return out;
}

CheckList q_sequence_check(const GroupHom& alpha, const GroupHom& beta, const Limits& limits) {
  if (!alpha.codomain().same_as(beta.domain())) throw AlgebraError("alpha and beta are not composable");
  if (!(alpha.image() == beta.kernel())) throw AlgebraError("Im(alpha) != Ker(beta)");
  if (!beta.image().is_whole()) throw AlgebraError("beta is not surjective");
  const QGroup q1 = build_q(alpha.domain(), std::nullopt, limits);
  const QGroup q2 = build_q(alpha.codomain(), std::nullopt, limits);
  const QGroup q3 = build_q(beta.codomain(), std::nullopt, limits);
  const GroupHom qa = q_of_hom(alpha, q1, q2, limits);
  const GroupHom qb = q_of_hom(beta, q2, q3, limits);

  CheckList out;
  out.add("Q_beta_surjective", qb.image().is_whole());
  const Subgroup ker = qb.kernel();
  const FiniteGroup& g1 = alpha.domain();
  const FiniteGroup& g2 = alpha.codomain();
  std::vector<Elem> mixed;
  for (Elem a = 0; a < g1.size(); ++a)
    for (Elem b = 0; b < g2.size(); ++b) {
      mixed.push_back(q2.q.deviation(alpha(a), b));
      mixed.push_back(q2.q.deviation(b, alpha(a)));
    }
  std::vector<Elem> xi = mixed;
  for (Elem x : qa.table()) xi.push_back(x);
  const Subgroup im_xi = Subgroup::generated(q2.group, xi);
  out.add("exact_at_Q_G2", im_xi == ker,
          "source read as the direct product Q(G1) × G1ab⊗G2ab × G2ab⊗G1ab; |Im xi| = " +
              std::to_string(im_xi.size()) + ", |Ker Q(beta)| = " + std::to_string(ker.size()));
  std::vector<Elem> rhs = mixed;
  for (Elem a = 0; a < g1.size(); ++a) {
    rhs.push_back(q2.q(alpha(a)));
    for (Elem a2 = 0; a2 < g1.size(); ++a2) rhs.push_back(q2.q.deviation(alpha(a), alpha(a2)));
  }
  out.add("kernel_description", Subgroup::generated(q2.group, rhs) == ker,
          "alpha ⊗ alpha read as alpha^ab ⊗ alpha^ab");
  return out;
}

// ---------------------------------------------------------------- free groups

FreeWord free_reduce(const FreeWord& w) {
  FreeWord out;
  for (const Letter& l : w) {
    if (!out.empty() && out.back().gen == l.gen && out.back().exp == -l.exp)
      out.pop_back();
    else
      out.push_back(l);
  }
  return out;
}

std::string to_string(const FreeWord& w) {
  if (w.empty()) return "1";
  std::string s;
  for (const Letter& l : w) {
    if (!s.empty()) s += " ";
    s += "x" + std::to_string(l.gen) + (l.exp < 0 ? "^-1" : "");
  }
  return s;
}

std::vector<long> exponent_sums(const FreeWord& w, std::size_t rank) {
  std::vector<long> k(rank, 0);
  for (const Letter& l : w) {
    if (l.gen >= rank) throw AlgebraError("letter x" + std::to_string(l.gen) + " outside the basis");
    k[l.gen] += l.exp;
  }
  return k;
}

FreeValue free_eval(const FreeWord& w, std::size_t rank) {
  FreeValue v{Vec(rank * rank), free_reduce(w)};
  for (std::size_t i = 0; i < w.size(); ++i) {
    const Letter& li = w[i];
    if (li.gen >= rank) throw AlgebraError("letter x" + std::to_string(li.gen) + " outside the basis");
    if (li.exp != 1 && li.exp != -1) throw AlgebraError("exponents must be +1 or -1");
    v.tensor[li.gen * rank + li.gen] += (1 - li.exp) / 2;
    for (std::size_t j = i + 1; j < w.size(); ++j) v.tensor[li.gen * rank + w[j].gen] += li.exp * w[j].exp;
  }
  return v;
}

// ---------------------------------------------------------------- presentations

namespace {

void validate(const Presentation& p, const FiniteGroup& h, const GenPair& gp) {
  const std::size_t r = p.generators;
  if (gp.chi.size() != r || gp.psi.size() != r) throw AlgebraError("(chi, psi) must be indexed by the generators");
  for (const auto& row : gp.psi)
    if (row.size() != r) throw AlgebraError("psi must be a square table over the generators");
  for (Elem x : gp.chi)
    if (x >= h.size()) throw AlgebraError("chi value outside H");
  for (const auto& row : gp.psi)
    for (Elem x : row)
      if (x >= h.size()) throw AlgebraError("psi value outside H");
  for (const auto& rel : p.relators) exponent_sums(rel, r);
}

Elem chi_product(const FiniteGroup& h, const GenPair& gp, const FreeWord& w) {
  Elem acc = 0;
  for (const Letter& l : w) acc = h.mul(acc, l.exp > 0 ? gp.chi[l.gen] : h.inv(gp.chi[l.gen]));
  return acc;
}

Elem psi_sum(const FiniteGroup& h, const GenPair& gp, const Vec& tensor, std::size_t rank) {
  Elem acc = 0;
  for (std::size_t x = 0; x < rank; ++x)
    for (std::size_t y = 0; y < rank; ++y) {
      const BigInt& c = tensor[x * rank + y];
      if (c == 0) continue;
      const Elem p = gp.psi[x][y];
      acc = h.mul(acc, h.pow(p, mod_floor(c, BigInt(static_cast<unsigned long>(h.order_of(p)))).get_si()));
    }
  return acc;
}

}  // namespace

Elem free_quadratic_value(const FiniteGroup& h, const GenPair& gp, const FreeWord& w) {
  const std::size_t rank = gp.chi.size();
  return h.mul(psi_sum(h, gp, free_eval(w, rank).tensor, rank), chi_product(h, gp, w));
}

PresentedVerdict presented_check(const Presentation& p, const FiniteGroup& h, const GenPair& gp) {
  validate(p, h, gp);
  const std::size_t r = p.generators;
  PresentedVerdict out;

  // The tensor part must be abelian and commute with the image of the free group.
  std::vector<Elem> psis;
  for (const auto& row : gp.psi) psis.insert(psis.end(), row.begin(), row.end());
  std::optional<std::pair<Elem, Elem>> bad;
  for (std::size_t i = 0; i < psis.size() && !bad; ++i) {
    for (std::size_t j = 0; j < psis.size() && !bad; ++j)
      if (h.commutator(psis[i], psis[j]) != 0) bad = std::make_pair(psis[i], psis[j]);
    for (std::size_t x = 0; x < r && !bad; ++x)
      if (h.commutator(gp.chi[x], psis[i]) != 0) bad = std::make_pair(gp.chi[x], psis[i]);
  }
  out.conditions.add("commuting_images", !bad,
                     bad ? "elements " + pair_string(bad->first, bad->second) + " of H do not commute" : "",
                     bad ? std::vector<std::int64_t>{bad->first, bad->second} : std::vector<std::int64_t>{});

  std::optional<std::size_t> bad_relator;
  for (std::size_t k = 0; k < p.relators.size() && !bad_relator; ++k)
    if (free_quadratic_value(h, gp, p.relators[k]) != 0) bad_relator = k;
  out.conditions.add("relator_values", !bad_relator,
                     bad_relator ? "relator " + std::to_string(*bad_relator) + " = " +
                                       to_string(p.relators[*bad_relator]) + " does not vanish"
                                 : "",
                     bad_relator ? std::vector<std::int64_t>{static_cast<std::int64_t>(*bad_relator)}
                                 : std::vector<std::int64_t>{});

  std::optional<std::pair<std::size_t, std::size_t>> bad_pair;
  for (std::size_t k = 0; k < p.relators.size() && !bad_pair; ++k) {
    const std::vector<long> e = exponent_sums(p.relators[k], r);
    for (std::size_t y = 0; y < r && !bad_pair; ++y) {
      Elem left = 0, right = 0;
      for (std::size_t x = 0; x < r; ++x) {
        left = h.mul(left, h.pow(gp.psi[x][y], e[x]));
        right = h.mul(right, h.pow(gp.psi[y][x], e[x]));
      }
      if (left != 0 || right != 0) bad_pair = std::make_pair(k, y);
    }
  }
  out.conditions.add("relator_pairings", !bad_pair,
                     bad_pair ? "relator " + std::to_string(bad_pair->first) + " against generator x" +
                                    std::to_string(bad_pair->second)
                              : "",
                     bad_pair ? std::vector<std::int64_t>{static_cast<std::int64_t>(bad_pair->first),
                                                          static_cast<std::int64_t>(bad_pair->second)}
                              : std::vector<std::int64_t>{});
  out.accepted = out.conditions.all_pass();
  return out;
}

GroupFunction presented_build(const Presentation& p, const FiniteGroup& h, const GenPair& gp, const Limits& limits) {
  const PresentedVerdict v = presented_check(p, h, gp);
  if (!v.accepted) {
    for (const Check& c : v.conditions.checks)
      if (c.status == Status::Fail) throw AlgebraError("rejected on " + c.name + ": " + c.detail);
  }
  if (!p.target) throw AlgebraError("presentation has no evaluation map onto a finite group");
  const FiniteGroup& g = *p.target;
  if (p.images.size() != p.generators) throw AlgebraError("evaluation map needs one image per generator");
  for (Elem x : p.images)
    if (x >= g.size()) throw AlgebraError("generator image outside the target group");
  auto evaluate = [&](const FreeWord& w) {
    Elem acc = 0;
    for (const Letter& l : w) acc = g.mul(acc, l.exp > 0 ? p.images[l.gen] : g.inv(p.images[l.gen]));
    return acc;
  };
  for (std::size_t k = 0; k < p.relators.size(); ++k)
    if (evaluate(p.relators[k]) != 0)
      throw AlgebraError("relator " + std::to_string(k) + " does not map to the identity");

  // Shortlex words: breadth first over letters x0, x0^-1, x1, x1^-1, ...
  std::vector<std::optional<FreeWord>> words(g.size());
  words[0] = FreeWord{};
  std::deque<Elem> queue{0};
  while (!queue.empty()) {
    const Elem e = queue.front();
    queue.pop_front();
    for (std::size_t x = 0; x < p.generators; ++x)
      for (int exp : {1, -1}) {
        const Elem next = g.mul(e, exp > 0 ? p.images[x] : g.inv(p.images[x]));
        if (words[next]) continue;
        FreeWord w = *words[e];
        w.push_back({x, exp});
        words[next] = std::move(w);
        queue.push_back(next);
      }
  }
  std::vector<Elem> table(g.size());
  for (Elem e = 0; e < g.size(); ++e) {
    if (!words[e]) throw AlgebraError("evaluation map is not surjective: element " + std::to_string(e) + " missed");
    table[e] = free_quadratic_value(h, gp, *words[e]);
  }
  GroupFunction f(g, h, std::move(table));
  for (std::size_t x = 0; x < p.generators; ++x) {
    if (f(p.images[x]) != gp.chi[x])
      throw AlgebraError("built map misses chi at x" + std::to_string(x) +
                         "; the relators do not present the target group");
    for (std::size_t y = 0; y < p.generators; ++y)
      if (f.deviation(p.images[x], p.images[y]) != gp.psi[x][y])
        throw AlgebraError("built map misses psi at " + pair_string(x, y) +
                           "; the relators do not present the target group");
  }
  const QuadVerdict q = quadratic_verdict(f, std::nullopt, limits);
  if (!q.is_quadratic)
    throw AlgebraError("built map is not quadratic (" + q.counterexample->describe() +
                       "); the relators do not present the target group");
  return f;
}

}  // namespace qg
