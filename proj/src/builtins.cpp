#include <map>
#include <utility>

#include "quadgroup/groups.hpp"

namespace qg::builtin {
namespace {

std::string str(std::size_t n) { return std::to_string(n); }

template <class Mul>
FiniteGroup tabulate(std::size_t n, Mul mul, std::string name, const Limits& limits) {
  require_within(n, limits.max_order, "group order");
  std::vector<Elem> t(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) t[a * n + b] = static_cast<Elem>(mul(a, b));
  return FiniteGroup::from_table(std::move(t), n, std::move(name), limits);
}

std::size_t checked_power(std::size_t base, std::size_t exp, std::size_t cap, const char* what) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    r *= base;
    require_within(r, cap, what);
  }
  return r;
}

}  // namespace

FiniteGroup cyclic(std::size_t n) {
  if (n == 0) throw AlgebraError("cyclic group needs n >= 1");
  return tabulate(n, [n](std::size_t a, std::size_t b) { return (a + b) % n; }, "C" + str(n), {});
}

FiniteGroup elementary(std::size_t p, std::size_t k) {
  if (p < 2) throw AlgebraError("elementary abelian group needs p >= 2");
  const std::size_t n = checked_power(p, k, Limits{}.max_order, "group order");
  return tabulate(
      n,
      [p, k](std::size_t a, std::size_t b) {
        std::size_t out = 0, place = 1;
        for (std::size_t i = 0; i < k; ++i, a /= p, b /= p, place *= p) out += ((a % p + b % p) % p) * place;
        return out;
      },
      "C" + str(p) + "^" + str(k), {});
}

FiniteGroup dihedral(std::size_t n) {
  if (n == 0) throw AlgebraError("dihedral group needs n >= 1");
  return tabulate(
      2 * n,
      [n](std::size_t x, std::size_t y) {
        const std::size_t i = x % n, j = x / n, k = y % n, l = y / n;
        const std::size_t rot = j == 0 ? (i + k) % n : (i + n - k) % n;
        return ((j + l) % 2) * n + rot;
      },
      "D" + str(n), {});
}

FiniteGroup quaternion8() {
  // Units 1, i, j, k as 0..3; u_a u_b = sign * unit.
  static const int unit[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static const int sign[4][4] = {{1, 1, 1, 1}, {1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}};
  return tabulate(
      8,
      [](std::size_t x, std::size_t y) {
        const std::size_t ux = x / 2, uy = y / 2;
        const int s = (x % 2 ? -1 : 1) * (y % 2 ? -1 : 1) * sign[ux][uy];
        return static_cast<std::size_t>(2 * unit[ux][uy] + (s < 0 ? 1 : 0));
      },
      "Q8", {});
}

FiniteGroup symmetric(std::size_t n) {
  if (n == 0 || n > 5) throw AlgebraError("symmetric(n) is provided for 1 <= n <= 5");
  std::vector<std::vector<std::size_t>> gens;
  if (n >= 2) {
    std::vector<std::size_t> swap(n), cycle(n);
    for (std::size_t i = 0; i < n; ++i) {
      swap[i] = i;
      cycle[i] = (i + 1) % n;
    }
    std::swap(swap[0], swap[1]);
    gens.push_back(swap);
    if (n > 2) gens.push_back(cycle);
  }
  return from_permutations(n, gens, "S" + str(n));
}

FiniteGroup heisenberg(std::size_t p) {
  if (p < 2) throw AlgebraError("heisenberg group needs p >= 2");
  const std::size_t n = checked_power(p, 3, Limits{}.max_order, "group order");
  return tabulate(
      n,
      [p](std::size_t x, std::size_t y) {
        const std::size_t a = x % p, b = (x / p) % p, c = x / (p * p);
        const std::size_t a2 = y % p, b2 = (y / p) % p, c2 = y / (p * p);
        return (a + a2) % p + p * ((b + b2) % p) + p * p * ((c + c2 + a * b2) % p);
      },
      "Heis" + str(p), {});
}

FiniteGroup direct_product(const FiniteGroup& g, const FiniteGroup& h, const Limits& limits) {
  const std::size_t m = g.size(), k = h.size();
  require_within(m * k, limits.max_order, "group order");
  std::vector<Elem> t(m * k * m * k);
  for (std::size_t x = 0; x < m * k; ++x)
    for (std::size_t y = 0; y < m * k; ++y)
      t[x * m * k + y] =
          static_cast<Elem>(g.mul(static_cast<Elem>(x % m), static_cast<Elem>(y % m)) +
                            m * h.mul(static_cast<Elem>(x / m), static_cast<Elem>(y / m)));
  const auto assoc = g.associativity() == AssociativityCheck::Exhaustive &&
                             h.associativity() == AssociativityCheck::Exhaustive
                         ? AssociativityCheck::Exhaustive
                         : AssociativityCheck::GeneratorsAndSamples;
  return FiniteGroup::derived(std::move(t), m * k, g.name() + "x" + h.name(), assoc, limits);
}

FiniteGroup power_series_units(std::size_t m, std::size_t n, const Limits& limits) {
  if (m < 2 || n < 1) throw AlgebraError("power_series_units needs m >= 2 and N >= 1");
  const std::size_t k = n - 1;  // free coefficients a_1..a_{N-1}
  const std::size_t order = checked_power(m, k, limits.max_order, "group order");
  auto decode = [m, k](std::size_t x) {
    std::vector<std::size_t> c(k + 1, 0);
    c[0] = 1;
    for (std::size_t i = 1; i <= k; ++i, x /= m) c[i] = x % m;
    return c;
  };
  return tabulate(
      order,
      [&](std::size_t x, std::size_t y) {
        const auto f = decode(x), g = decode(y);
        std::size_t out = 0, place = 1;
        for (std::size_t d = 1; d <= k; ++d, place *= m) {
          std::size_t s = 0;
          for (std::size_t i = 0; i <= d; ++i) s += f[i] * g[d - i];
          out += (s % m) * place;
        }
        return out;
      },
      "U(" + str(m) + "," + str(n) + ")", limits);
}

LieRing LieRing::heisenberg(std::size_t m) {
  LieRing l;
  l.modulus = m;
  l.dim = 3;
  l.brackets.assign(3, std::vector<std::vector<long>>(3, std::vector<long>(3, 0)));
  l.brackets[0][1][2] = 1;
  l.brackets[1][0][2] = -1;
  return l;
}

Vec LieRing::bracket(const Vec& x, const Vec& y) const {
  Vec out(dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) {
      if (x[i] == 0 || y[j] == 0) continue;
      for (std::size_t k = 0; k < dim; ++k) out[k] += x[i] * y[j] * brackets[i][j][k];
    }
  for (auto& v : out) v = mod_floor(v, BigInt(static_cast<unsigned long>(modulus)));
  return out;
}

FiniteGroup lazard(const LieRing& lie, const Limits& limits) {
  const std::size_t m = lie.modulus, d = lie.dim;
  if (m < 3 || m % 2 == 0) throw AlgebraError("lazard needs an odd modulus, got " + str(m));
  if (lie.brackets.size() != d) throw AlgebraError("structure constants must be dim x dim x dim");
  for (const auto& row : lie.brackets) {
    if (row.size() != d) throw AlgebraError("structure constants must be dim x dim x dim");
    for (const auto& v : row)
      if (v.size() != d) throw AlgebraError("structure constants must be dim x dim x dim");
  }
  const BigInt mod(static_cast<unsigned long>(m));
  auto unit = [d](std::size_t i) {
    Vec e(d);
    e[i] = 1;
    return e;
  };
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      const Vec ij = lie.bracket(unit(i), unit(j)), ji = lie.bracket(unit(j), unit(i));
      for (std::size_t k = 0; k < d; ++k)
        if (mod_floor(ij[k] + ji[k], mod) != 0 || (i == j && ij[k] != 0))
          throw AlgebraError("bracket is not alternating at (" + str(i) + ", " + str(j) + ")");
      for (std::size_t k = 0; k < d; ++k) {
        const Vec t = lie.bracket(ij, unit(k));
        for (const auto& c : t)
          if (c != 0)
            throw AlgebraError("Lie ring is not 2-step nilpotent: [[e" + str(i) + ", e" + str(j) + "], e" + str(k) +
                               "] != 0");
      }
    }
  const std::size_t order = checked_power(m, d, limits.max_order, "group order");
  const BigInt half = BigInt(static_cast<unsigned long>((m + 1) / 2));
  auto decode = [m, d](std::size_t x) {
    Vec v(d);
    for (std::size_t i = 0; i < d; ++i, x /= m) v[i] = static_cast<unsigned long>(x % m);
    return v;
  };
  return tabulate(
      order,
      [&](std::size_t x, std::size_t y) {
        const Vec a = decode(x), b = decode(y), br = lie.bracket(a, b);
        std::size_t out = 0, place = 1;
        for (std::size_t i = 0; i < d; ++i, place *= m)
          out += mod_floor(a[i] + b[i] + half * br[i], mod).get_ui() * place;
        return out;
      },
      "Lazard(" + str(m) + ")", limits);
}

FiniteGroup from_permutations(std::size_t degree, const std::vector<std::vector<std::size_t>>& generators,
                              std::string name, const Limits& limits) {
  if (degree == 0 || degree > 12) throw AlgebraError("permutation degree must be in 1..12");
  using Perm = std::vector<std::size_t>;
  for (const Perm& g : generators) {
    if (g.size() != degree) throw AlgebraError("permutation of wrong degree");
    std::vector<bool> hit(degree, false);
    for (std::size_t x : g) {
      if (x >= degree || hit[x]) throw AlgebraError("generator is not a permutation");
      hit[x] = true;
    }
  }
  // p·q applies p first: (p·q)(x) = q(p(x)).
  auto compose = [degree](const Perm& p, const Perm& q) {
    Perm r(degree);
    for (std::size_t x = 0; x < degree; ++x) r[x] = q[p[x]];
    return r;
  };
  Perm id(degree);
  for (std::size_t x = 0; x < degree; ++x) id[x] = x;
  std::vector<Perm> elements{id};
  std::map<Perm, Elem> index{{id, 0}};
  for (std::size_t i = 0; i < elements.size(); ++i)
    for (const Perm& g : generators) {
      Perm p = compose(elements[i], g);
      if (index.count(p)) continue;
      require_within(elements.size() + 1, limits.max_order, "group order");
      index.emplace(p, static_cast<Elem>(elements.size()));
      elements.push_back(std::move(p));
    }
  const std::size_t n = elements.size();
  std::vector<Elem> t(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) t[a * n + b] = index.at(compose(elements[a], elements[b]));
  return FiniteGroup::from_table(std::move(t), n, std::move(name), limits);
}

}  // namespace qg::builtin
