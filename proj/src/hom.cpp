#include <algorithm>
#include <utility>

#include "quadgroup/groups.hpp"
#include "quadgroup/kernels.hpp"

namespace qg {

std::optional<std::pair<Elem, Elem>> homomorphism_witness(const FiniteGroup& domain, const FiniteGroup& codomain,
                                                          const std::vector<Elem>& t) {
  const std::size_t n = domain.size();
  const std::uint64_t pairs = static_cast<std::uint64_t>(n) * n;
  const std::uint64_t hit = kernels::first_failure(pairs, [&](std::uint64_t i) {
    const Elem a = static_cast<Elem>(i / n), b = static_cast<Elem>(i % n);
    return t[domain.mul(a, b)] != codomain.mul(t[a], t[b]);
  });
  if (hit == pairs) return std::nullopt;
  return std::make_pair(static_cast<Elem>(hit / n), static_cast<Elem>(hit % n));
}

GroupHom::GroupHom(FiniteGroup domain, FiniteGroup codomain, std::vector<Elem> table)
    : domain_(std::move(domain)), codomain_(std::move(codomain)), table_(std::move(table)) {
  if (table_.size() != domain_.size())
    throw AlgebraError("map table has " + std::to_string(table_.size()) + " entries, domain has " +
                       std::to_string(domain_.size()) + " elements");
  for (Elem x : table_)
    if (x >= codomain_.size()) throw AlgebraError("map value " + std::to_string(x) + " is not an element");
  if (const auto w = homomorphism_witness(domain_, codomain_, table_))
    throw AlgebraError("not a homomorphism: f(ab) != f(a)f(b) at (a, b) = (" + std::to_string(w->first) + ", " +
                       std::to_string(w->second) + ")");
}

GroupHom GroupHom::identity(const FiniteGroup& g) {
  std::vector<Elem> t(g.size());
  for (Elem a = 0; a < g.size(); ++a) t[a] = a;
  return GroupHom(g, g, std::move(t));
}

GroupHom GroupHom::trivial(const FiniteGroup& domain, const FiniteGroup& codomain) {
  return GroupHom(domain, codomain, std::vector<Elem>(domain.size(), 0));
}

GroupHom GroupHom::from_generators(const FiniteGroup& domain, const FiniteGroup& codomain,
                                   const std::vector<Elem>& generators, const std::vector<Elem>& images) {
  if (generators.size() != images.size()) throw AlgebraError("generator and image counts differ");
  constexpr Elem kUnset = static_cast<Elem>(-1);
  std::vector<Elem> t(domain.size(), kUnset);
  t[0] = 0;
  std::vector<Elem> queue{0};
  for (std::size_t i = 0; i < queue.size(); ++i)
    for (std::size_t k = 0; k < generators.size(); ++k) {
      const Elem x = domain.mul(queue[i], generators[k]);
      const Elem fx = codomain.mul(t[queue[i]], images[k]);
      if (t[x] == kUnset) {
        t[x] = fx;
        queue.push_back(x);
      } else if (t[x] != fx) {
        throw AlgebraError("generator images do not define a homomorphism (conflict at element " +
                           std::to_string(x) + ")");
      }
    }
  if (queue.size() != domain.size()) throw AlgebraError("given elements do not generate the domain");
  return GroupHom(domain, codomain, std::move(t));
}

GroupHom GroupHom::after(const GroupHom& first) const {
  if (!first.codomain_.same_as(domain_)) throw AlgebraError("composition of incompatible homomorphisms");
  std::vector<Elem> t(first.domain_.size());
  for (Elem a = 0; a < t.size(); ++a) t[a] = table_[first.table_[a]];
  return GroupHom(first.domain_, codomain_, std::move(t));
}

Subgroup GroupHom::kernel() const {
  std::vector<Elem> k;
  for (Elem a = 0; a < table_.size(); ++a)
    if (table_[a] == 0) k.push_back(a);
  return Subgroup::from_elements(domain_, std::move(k));
}

Subgroup GroupHom::image() const {
  std::vector<Elem> im(table_);
  std::sort(im.begin(), im.end());
  im.erase(std::unique(im.begin(), im.end()), im.end());
  return Subgroup::from_elements(codomain_, std::move(im));
}

SubgroupAsGroup as_group(const Subgroup& h) {
  const FiniteGroup& g = h.parent();
  const auto& els = h.elements();
  const std::size_t m = els.size();
  std::vector<std::int64_t> local(g.size(), -1);
  for (std::size_t i = 0; i < m; ++i) local[els[i]] = static_cast<std::int64_t>(i);
  std::vector<Elem> t(m * m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) t[i * m + j] = static_cast<Elem>(local[g.mul(els[i], els[j])]);
  FiniteGroup sub = FiniteGroup::derived(std::move(t), m, g.name().empty() ? "" : "subgroup of " + g.name(),
                                         g.associativity());
  return SubgroupAsGroup{sub, GroupHom(sub, g, els), std::move(local)};
}

QuotientGroup quotient(const Subgroup& n) {
  const FiniteGroup& g = n.parent();
  if (const auto w = n.normality_witness())
    throw AlgebraError("subgroup is not normal: " + std::to_string(w->first) + " conjugates " +
                       std::to_string(w->second) + " outside it");
  constexpr Elem kUnset = static_cast<Elem>(-1);
  std::vector<Elem> coset(g.size(), kUnset), reps;
  for (Elem a = 0; a < g.size(); ++a) {
    if (coset[a] != kUnset) continue;
    const Elem id = static_cast<Elem>(reps.size());
    reps.push_back(a);
    for (Elem x : n.elements()) coset[g.mul(a, x)] = id;
  }
  const std::size_t m = reps.size();
  std::vector<Elem> t(m * m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) t[i * m + j] = coset[g.mul(reps[i], reps[j])];
  FiniteGroup q =
      FiniteGroup::derived(std::move(t), m, g.name().empty() ? "" : g.name() + "/N", g.associativity());
  return QuotientGroup{q, GroupHom(g, q, coset), std::move(reps)};
}

namespace {

struct CyclicBasis {
  std::vector<Elem> elements;
  std::vector<std::uint64_t> orders;  // divisibility chain
};

// Maximal-order splitting: an element g of maximal order generates a direct
// summand, and a basis of A/<g> lifts to elements of the same orders.
CyclicBasis split_abelian(const FiniteGroup& a) {
  if (a.size() == 1) return {};
  Elem g = 0;
  std::uint64_t m = 1;
  for (Elem x = 0; x < a.size(); ++x) {
    const std::uint64_t o = a.order_of(x);
    if (o > m) {
      m = o;
      g = x;
    }
  }
  std::vector<std::int64_t> log(a.size(), -1);
  {
    Elem p = 0;
    for (std::uint64_t k = 0; k < m; ++k, p = a.mul(p, g)) log[p] = static_cast<std::int64_t>(k);
  }
  const QuotientGroup q = quotient(Subgroup::generated(a, {g}));
  const CyclicBasis below = split_abelian(q.group);
  CyclicBasis out;
  for (std::size_t i = 0; i < below.elements.size(); ++i) {
    const Elem y = q.representative[below.elements[i]];
    const std::uint64_t e = below.orders[i];
    const std::int64_t s = log[a.pow(y, static_cast<long>(e))];
    ensure(s >= 0 && static_cast<std::uint64_t>(s) % e == 0, "cyclic splitting: lift exponent");
    out.elements.push_back(a.mul(y, a.pow(g, -static_cast<long>(static_cast<std::uint64_t>(s) / e))));
    out.orders.push_back(e);
  }
  out.elements.push_back(g);
  out.orders.push_back(m);
  return out;
}

}  // namespace

const Vec& AbelianView::operator()(Elem a) const {
  if (a >= to_ab.size() || !to_ab[a]) throw AlgebraError("element " + std::to_string(a) + " is outside the subgroup");
  return *to_ab[a];
}

AbelianView subquotient_ab(const Subgroup& h, const Subgroup& n) {
  if (!n.is_subset_of(h)) throw AlgebraError("subquotient: N is not contained in H");
  const FiniteGroup& g = h.parent();
  for (Elem x : h.elements())
    for (Elem y : n.elements())
      if (!n.contains(g.conjugate(x, y)))
        throw AlgebraError("subquotient: N is not normal in H (" + std::to_string(x) + " conjugates " +
                           std::to_string(y) + " outside)");
  const SubgroupAsGroup hg = as_group(h);
  std::vector<Elem> n_local;
  for (Elem y : n.elements()) n_local.push_back(static_cast<Elem>(hg.local_index[y]));
  const QuotientGroup q = quotient(Subgroup::from_elements(hg.group, n_local));
  const FiniteGroup& k = q.group;
  for (Elem x = 0; x < k.size(); ++x)
    for (Elem y = x + 1; y < k.size(); ++y)
      if (k.mul(x, y) != k.mul(y, x)) {
        const Elem gx = h.elements()[q.representative[x]], gy = h.elements()[q.representative[y]];
        throw AlgebraError("subquotient is not abelian: elements " + std::to_string(gx) + " and " +
                           std::to_string(gy) + " do not commute modulo N");
      }

  const CyclicBasis basis = split_abelian(k);
  std::vector<BigInt> factors;
  for (std::uint64_t o : basis.orders) factors.emplace_back(static_cast<unsigned long>(o));
  AbelianView view;
  view.group = FgAb(std::move(factors));

  // Mixed-radix walk over coefficient vectors, first coordinate fastest.
  std::vector<std::optional<Vec>> k_to_ab(k.size());
  std::vector<Elem> ab_to_k(k.size());
  const std::size_t r = basis.orders.size();
  std::vector<std::uint64_t> digits(r, 0);
  for (std::size_t idx = 0; idx < k.size(); ++idx) {
    Elem e = 0;
    Vec v(r);
    for (std::size_t i = 0; i < r; ++i) {
      e = k.mul(e, k.pow(basis.elements[i], static_cast<long>(digits[i])));
      v[i] = static_cast<unsigned long>(digits[i]);
    }
    ensure(!k_to_ab[e], "cyclic splitting: coordinates are not unique");
    k_to_ab[e] = std::move(v);
    ab_to_k[idx] = e;
    for (std::size_t i = 0; i < r; ++i) {
      if (++digits[i] < basis.orders[i]) break;
      digits[i] = 0;
    }
  }

  view.to_ab.assign(g.size(), std::nullopt);
  for (std::size_t i = 0; i < h.size(); ++i) view.to_ab[h.elements()[i]] = k_to_ab[q.projection(static_cast<Elem>(i))];
  view.from_ab.resize(k.size());
  for (std::size_t idx = 0; idx < k.size(); ++idx) view.from_ab[idx] = h.elements()[q.representative[ab_to_k[idx]]];
  return view;
}

AbelianView abelianization(const FiniteGroup& g) { return subquotient_ab(Subgroup::whole(g), derived_subgroup(g)); }

FiniteGroup fgab_to_group(const FgAb& a, const Limits& limits) {
  if (!a.is_finite()) throw AlgebraError("cannot tabulate an infinite abelian group");
  if (a.order() > BigInt(static_cast<unsigned long>(limits.max_order)))
    throw CapExceeded("abelian group of order " + a.order().get_str() + " exceeds max order " +
                      std::to_string(limits.max_order));
  const std::size_t n = a.order_u64();
  std::vector<std::uint64_t> radix;
  for (const auto& d : a.factors()) radix.push_back(d.get_ui());
  std::vector<Elem> t(n * n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      std::size_t xs = x, ys = y, out = 0, place = 1;
      for (std::uint64_t d : radix) {
        out += ((xs % d + ys % d) % d) * place;
        place *= d;
        xs /= d;
        ys /= d;
      }
      t[x * n + y] = static_cast<Elem>(out);
    }
  return FiniteGroup::from_table(std::move(t), n, a.describe(), limits);
}

}  // namespace qg
