#include <algorithm>
#include <map>
#include <random>
#include <utility>

#include "quadgroup/groups.hpp"
#include "quadgroup/kernels.hpp"

namespace qg {
namespace {

// Closure of {0} under right multiplication by a growing generator list.
class Closure {
 public:
  explicit Closure(const FiniteGroup& g) : g_(g), member_(g.size(), false) {
    member_[0] = true;
    list_.push_back(0);
  }

  bool add(Elem x) {
    if (member_[x]) return false;
    gens_.push_back(x);
    for (std::size_t i = 0; i < list_.size(); ++i)
      for (Elem s : gens_) {
        const Elem y = g_.mul(list_[i], s);
        if (!member_[y]) {
          member_[y] = true;
          list_.push_back(y);
        }
      }
    return true;
  }

  const std::vector<bool>& member() const { return member_; }
  std::vector<bool> take() { return std::move(member_); }
  std::size_t size() const { return list_.size(); }
  const std::vector<Elem>& generators() const { return gens_; }

 private:
  const FiniteGroup& g_;
  std::vector<bool> member_;
  std::vector<Elem> list_;
  std::vector<Elem> gens_;
};

std::string triple(Elem a, Elem b, Elem c) {
  return "(" + std::to_string(a) + ", " + std::to_string(b) + ", " + std::to_string(c) + ")";
}

}  // namespace

std::string to_string(AssociativityCheck a) {
  return a == AssociativityCheck::Exhaustive ? "exhaustive" : "generators+sampled";
}

FiniteGroup::FiniteGroup() : data_(std::make_shared<const Data>()) {}

FiniteGroup FiniteGroup::from_rows(const std::vector<std::vector<Elem>>& rows, std::string name,
                                   const Limits& limits) {
  const std::size_t n = rows.size();
  std::vector<Elem> flat;
  flat.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n)
      throw AlgebraError("table row " + std::to_string(i) + " has " + std::to_string(rows[i].size()) +
                         " entries, expected " + std::to_string(n));
    flat.insert(flat.end(), rows[i].begin(), rows[i].end());
  }
  return from_table(std::move(flat), n, std::move(name), limits);
}

std::shared_ptr<FiniteGroup::Data> FiniteGroup::basic_checks(std::vector<Elem> t, std::size_t n, std::string name,
                                                             const Limits& limits) {
  if (n == 0) throw AlgebraError("a group has at least one element");
  require_within(n, limits.max_order, "group order");
  if (t.size() != n * n) throw AlgebraError("table must have size*size entries");
  for (std::size_t i = 0; i < t.size(); ++i)
    if (t[i] >= n)
      throw AlgebraError("closure: entry " + std::to_string(t[i]) + " at (" + std::to_string(i / n) + ", " +
                         std::to_string(i % n) + ") is out of range");
  for (Elem a = 0; a < n; ++a)
    if (t[a] != a || t[static_cast<std::size_t>(a) * n] != a)
      throw AlgebraError("identity: index 0 is not a two-sided identity at element " + std::to_string(a));

  auto d = std::make_shared<Data>();
  d->n = n;
  d->table = std::move(t);
  d->name = std::move(name);
  d->inverse.assign(n, 0);
  const auto& tab = d->table;
  for (Elem a = 0; a < n; ++a) {
    Elem b = 0;
    while (b < n && tab[static_cast<std::size_t>(a) * n + b] != 0) ++b;
    if (b == n || tab[static_cast<std::size_t>(b) * n + a] != 0)
      throw AlgebraError("inverse: element " + std::to_string(a) + " has no two-sided inverse");
    d->inverse[a] = b;
  }
  return d;
}

FiniteGroup FiniteGroup::derived(std::vector<Elem> t, std::size_t n, std::string name, AssociativityCheck inherited,
                                 const Limits& limits) {
  auto d = basic_checks(std::move(t), n, std::move(name), limits);
  d->assoc = inherited;
  return FiniteGroup(std::move(d));
}

FiniteGroup FiniteGroup::from_table(std::vector<Elem> t, std::size_t n, std::string name, const Limits& limits) {
  auto d = basic_checks(std::move(t), n, std::move(name), limits);
  const auto& tab = d->table;

  auto mul = [&](Elem a, Elem b) { return tab[static_cast<std::size_t>(a) * n + b]; };
  auto bad = [&](Elem a, Elem b, Elem c) { return mul(mul(a, b), c) != mul(a, mul(b, c)); };
  constexpr std::size_t kExhaustiveLimit = 512;
  if (n <= kExhaustiveLimit) {
    const std::uint64_t pairs = static_cast<std::uint64_t>(n) * n;
    const std::uint64_t hit = kernels::first_failure(pairs, [&](std::uint64_t i) {
      const Elem a = static_cast<Elem>(i / n), b = static_cast<Elem>(i % n);
      for (Elem c = 0; c < n; ++c)
        if (bad(a, b, c)) return true;
      return false;
    });
    if (hit != pairs) {
      const Elem a = static_cast<Elem>(hit / n), b = static_cast<Elem>(hit % n);
      Elem c = 0;
      while (!bad(a, b, c)) ++c;
      throw AlgebraError("associativity fails at " + triple(a, b, c));
    }
    d->assoc = AssociativityCheck::Exhaustive;
  } else {
    // Light's test on a greedy generating set: (x s) y = x (s y) for every
    // generator s and all x, y, followed by seeded random triples.
    FiniteGroup partial{std::shared_ptr<const Data>(d)};
    Closure cl(partial);
    for (Elem x = 0; x < n && cl.size() < n; ++x) cl.add(x);
    const std::uint64_t pairs = static_cast<std::uint64_t>(n) * n;
    for (Elem s : cl.generators()) {
      const std::uint64_t hit = kernels::first_failure(
          pairs, [&](std::uint64_t i) { return bad(static_cast<Elem>(i / n), s, static_cast<Elem>(i % n)); });
      if (hit != pairs)
        throw AlgebraError("associativity fails at " +
                           triple(static_cast<Elem>(hit / n), s, static_cast<Elem>(hit % n)));
    }
    std::mt19937_64 rng(0x5eed);
    std::uniform_int_distribution<Elem> pick(0, static_cast<Elem>(n - 1));
    for (int i = 0; i < 100'000; ++i) {
      const Elem a = pick(rng), b = pick(rng), c = pick(rng);
      if (bad(a, b, c)) throw AlgebraError("associativity fails at " + triple(a, b, c));
    }
    d->assoc = AssociativityCheck::GeneratorsAndSamples;
  }
  return FiniteGroup(std::move(d));
}

Elem FiniteGroup::pow(Elem a, long k) const {
  if (k < 0) {
    a = inv(a);
    k = -k;
  }
  Elem r = 0;
  Elem base = a;
  while (k > 0) {
    if (k & 1) r = mul(r, base);
    base = mul(base, base);
    k >>= 1;
  }
  return r;
}

std::uint64_t FiniteGroup::order_of(Elem a) const {
  std::uint64_t k = 1;
  for (Elem x = a; x != 0; x = mul(x, a)) ++k;
  return k;
}

bool FiniteGroup::is_abelian() const {
  const std::size_t n = size();
  for (Elem a = 0; a < n; ++a)
    for (Elem b = a + 1; b < n; ++b)
      if (mul(a, b) != mul(b, a)) return false;
  return true;
}

bool FiniteGroup::same_as(const FiniteGroup& other) const {
  return data_ == other.data_ || (data_->n == other.data_->n && data_->table == other.data_->table);
}

FiniteGroup FiniteGroup::renamed(std::string name) const {
  auto d = std::make_shared<Data>(*data_);
  d->name = std::move(name);
  return FiniteGroup(std::move(d));
}

// ---------------------------------------------------------------- Subgroup

Subgroup::Subgroup(FiniteGroup g, std::vector<bool> member) : parent_(std::move(g)), member_(std::move(member)) {
  for (Elem a = 0; a < member_.size(); ++a)
    if (member_[a]) elements_.push_back(a);
}

Subgroup Subgroup::trivial(const FiniteGroup& g) {
  std::vector<bool> m(g.size(), false);
  m[0] = true;
  return Subgroup(g, std::move(m));
}

Subgroup Subgroup::whole(const FiniteGroup& g) { return Subgroup(g, std::vector<bool>(g.size(), true)); }

Subgroup Subgroup::generated(const FiniteGroup& g, const std::vector<Elem>& generators) {
  Closure cl(g);
  for (Elem x : generators) {
    if (x >= g.size()) throw AlgebraError("generator " + std::to_string(x) + " is not an element");
    cl.add(x);
  }
  return Subgroup(g, cl.take());
}

Subgroup Subgroup::from_elements(const FiniteGroup& g, std::vector<Elem> elements) {
  std::vector<bool> m(g.size(), false);
  for (Elem x : elements) {
    if (x >= g.size()) throw AlgebraError("subgroup element " + std::to_string(x) + " is not an element");
    m[x] = true;
  }
  if (!m[0]) throw AlgebraError("subgroup does not contain the identity");
  for (Elem a = 0; a < g.size(); ++a) {
    if (!m[a]) continue;
    if (!m[g.inv(a)]) throw AlgebraError("subgroup not closed under inverse at " + std::to_string(a));
    for (Elem b = 0; b < g.size(); ++b)
      if (m[b] && !m[g.mul(a, b)])
        throw AlgebraError("subgroup not closed: " + std::to_string(a) + " * " + std::to_string(b));
  }
  return Subgroup(g, std::move(m));
}

bool Subgroup::is_subset_of(const Subgroup& other) const {
  for (Elem a : elements_)
    if (!other.contains(a)) return false;
  return true;
}

std::optional<std::pair<Elem, Elem>> Subgroup::normality_witness() const {
  for (Elem g = 0; g < parent_.size(); ++g)
    for (Elem x : elements_)
      if (!member_[parent_.conjugate(g, x)]) return std::make_pair(g, x);
  return std::nullopt;
}

bool Subgroup::is_central() const {
  for (Elem x : elements_)
    for (Elem g = 0; g < parent_.size(); ++g)
      if (parent_.mul(x, g) != parent_.mul(g, x)) return false;
  return true;
}

Subgroup join(const Subgroup& h, const Subgroup& k) {
  std::vector<Elem> gens = h.elements();
  gens.insert(gens.end(), k.elements().begin(), k.elements().end());
  return Subgroup::generated(h.parent(), gens);
}

Subgroup intersect(const Subgroup& h, const Subgroup& k) {
  std::vector<Elem> out;
  for (Elem a : h.elements())
    if (k.contains(a)) out.push_back(a);
  return Subgroup::from_elements(h.parent(), std::move(out));
}

Subgroup commutator_subgroup(const Subgroup& h, const Subgroup& k) {
  const FiniteGroup& g = h.parent();
  Closure cl(g);
  for (Elem a : h.elements())
    for (Elem b : k.elements()) cl.add(g.commutator(a, b));
  return Subgroup::generated(g, cl.generators());
}

Subgroup derived_subgroup(const FiniteGroup& g) {
  const Subgroup all = Subgroup::whole(g);
  return commutator_subgroup(all, all);
}

Subgroup center(const FiniteGroup& g) {
  std::vector<Elem> z;
  for (Elem a = 0; a < g.size(); ++a) {
    bool central = true;
    for (Elem b = 0; b < g.size() && central; ++b) central = g.mul(a, b) == g.mul(b, a);
    if (central) z.push_back(a);
  }
  return Subgroup::from_elements(g, std::move(z));
}

std::vector<Subgroup> lower_central_series(const FiniteGroup& g) {
  const Subgroup all = Subgroup::whole(g);
  std::vector<Subgroup> series{all};
  for (;;) {
    Subgroup next = commutator_subgroup(all, series.back());
    if (next == series.back()) break;
    series.push_back(std::move(next));
  }
  return series;
}

Subgroup gamma(const FiniteGroup& g, std::size_t k) {
  if (k == 0) throw AlgebraError("lower central series is indexed from 1");
  const auto series = lower_central_series(g);
  return series[std::min(k, series.size()) - 1];
}

std::optional<std::size_t> nilpotency_class(const FiniteGroup& g) {
  const auto series = lower_central_series(g);
  if (!series.back().is_trivial()) return std::nullopt;
  return series.size() - 1;
}

std::vector<Elem> generating_set(const Subgroup& h) {
  Closure cl(h.parent());
  for (Elem x : h.elements()) cl.add(x);
  return cl.generators();
}

std::vector<Subgroup> all_subgroups(const Subgroup& h, std::size_t cap) {
  const FiniteGroup& g = h.parent();
  std::map<std::vector<Elem>, Subgroup> seen;
  std::vector<Subgroup> queue{Subgroup::trivial(g)};
  seen.emplace(queue.front().elements(), queue.front());
  for (std::size_t i = 0; i < queue.size(); ++i) {
    const Subgroup s = queue[i];
    for (Elem x : h.elements()) {
      if (s.contains(x)) continue;
      std::vector<Elem> gens = s.elements();
      gens.push_back(x);
      Subgroup t = Subgroup::generated(g, gens);
      if (seen.count(t.elements())) continue;
      if (seen.size() >= cap) throw CapExceeded("more than " + std::to_string(cap) + " subgroups");
      seen.emplace(t.elements(), t);
      queue.push_back(std::move(t));
    }
  }
  std::vector<Subgroup> out;
  for (auto& [k, v] : seen) out.push_back(v);
  std::stable_sort(out.begin(), out.end(), [](const Subgroup& a, const Subgroup& b) {
    return a.size() != b.size() ? a.size() < b.size() : a.elements() < b.elements();
  });
  return out;
}

}  // namespace qg
