#include <utility>

#include "quadgroup/abelian.hpp"

namespace qg {
namespace {

// Coefficients of a ⊗ b on the basis e_i ⊗ f_j, row-major in i.
Vec outer(const Vec& a, const Vec& b) {
  Vec v(a.size() * b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) v[i * b.size() + j] = a[i] * b[j];
  }
  return v;
}

std::vector<Vec> kronecker_relations(const FgAb& a, const FgAb& b) {
  const std::size_t r = a.rank(), s = b.rank();
  std::vector<Vec> rels;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < s; ++j) {
      BigInt g;
      mpz_gcd(g.get_mpz_t(), a.factors()[i].get_mpz_t(), b.factors()[j].get_mpz_t());
      if (g == 0) continue;
      Vec v(r * s);
      v[i * s + j] = g;
      rels.push_back(std::move(v));
    }
  return rels;
}

}  // namespace

Vec TensorProduct::tens(const Vec& a, const Vec& b) const {
  if (a.size() != left.rank() || b.size() != right.rank()) throw AlgebraError("tensor of wrong-rank elements");
  return pres.project(outer(a, b));
}

TensorProduct tensor_product(const FgAb& a, const FgAb& b) {
  return TensorProduct{a, b, cokernel(kronecker_relations(a, b), a.rank() * b.rank())};
}

TensorProduct tensor_square(const FgAb& a) { return tensor_product(a, a); }

AbMap tensor_maps(const AbMap& f, const AbMap& g, const TensorProduct& src, const TensorProduct& dst) {
  if (!(f.domain() == src.left) || !(g.domain() == src.right) || !(f.codomain() == dst.left) ||
      !(g.codomain() == dst.right))
    throw AlgebraError("tensor of maps with mismatched tensor products");
  const std::size_t r = src.left.rank(), s = src.right.rank();
  std::vector<Vec> fi, gj;
  for (std::size_t i = 0; i < r; ++i) fi.push_back(f.image_of_generator(i));
  for (std::size_t j = 0; j < s; ++j) gj.push_back(g.image_of_generator(j));
  std::vector<Vec> images;
  for (std::size_t k = 0; k < src.group().rank(); ++k) {
    const Vec c = src.lift(src.group().generator(k));
    Vec acc(dst.left.rank() * dst.right.rank());
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < s; ++j) {
        const BigInt& cij = c[i * s + j];
        if (cij == 0) continue;
        const Vec o = outer(fi[i], gj[j]);
        for (std::size_t t = 0; t < o.size(); ++t) acc[t] += cij * o[t];
      }
    images.push_back(dst.pres.project(acc));
  }
  return AbMap::from_images(src.group(), dst.group(), images);
}

Vec ExteriorSquare::wedge(const Vec& a, const Vec& b) const {
  if (a.size() != square.left.rank() || b.size() != square.left.rank())
    throw AlgebraError("wedge of wrong-rank elements");
  return pres.project(outer(a, b));
}

ExteriorSquare exterior_square(const FgAb& a) {
  const std::size_t r = a.rank();
  TensorProduct sq = tensor_square(a);
  std::vector<Vec> rels = kronecker_relations(a, a);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = i; j < r; ++j) {
      Vec v(r * r);
      v[i * r + j] += 1;
      v[j * r + i] += 1;
      if (i == j) v[i * r + i] = 1;
      rels.push_back(std::move(v));
    }
  Presented pres = cokernel(rels, r * r);

  std::vector<Vec> proj_images;
  for (std::size_t k = 0; k < sq.group().rank(); ++k) proj_images.push_back(pres.project(sq.lift(sq.group().generator(k))));
  AbMap wedge_projection = AbMap::from_images(sq.group(), pres.group, proj_images);

  std::vector<Vec> l2_images;
  for (std::size_t k = 0; k < pres.group.rank(); ++k) {
    const Vec v = pres.lift(pres.group.generator(k));
    Vec alt(r * r);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) alt[i * r + j] = v[i * r + j] - v[j * r + i];
    l2_images.push_back(sq.pres.project(alt));
  }
  AbMap l2 = AbMap::from_images(pres.group, sq.group(), l2_images);
  return ExteriorSquare{std::move(sq), std::move(pres), std::move(l2), std::move(wedge_projection)};
}

}  // namespace qg
