#include <utility>

#include "quadgroup/abelian.hpp"

namespace qg {
namespace {

// Elementary operations applied to the working matrix, mirrored on U (rows),
// U^{-1} (columns) and V (columns) so that S = U M V holds throughout.
class Reducer {
 public:
  explicit Reducer(const IntMatrix& m)
      : a_(m),
        u_(IntMatrix::identity(m.rows())),
        uinv_(IntMatrix::identity(m.rows())),
        v_(IntMatrix::identity(m.cols())) {}

  SmithForm run() {
    const std::size_t m = a_.rows(), n = a_.cols();
    const std::size_t steps = std::min(m, n);
    std::size_t rank = 0;
    for (std::size_t t = 0; t < steps; ++t) {
      if (!reduce_at(t)) break;
      if (a_(t, t) < 0) negate_row(t);
      ++rank;
    }
    return SmithForm{std::move(u_), std::move(a_), std::move(v_), std::move(uinv_), rank};
  }

 private:
  // Clears row and column t outside the pivot and makes the pivot divide the
  // remaining block.  Returns false when the block is zero.
  bool reduce_at(std::size_t t) {
    const std::size_t m = a_.rows(), n = a_.cols();
    for (;;) {
      std::size_t pi = m, pj = n;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j)
          if (a_(i, j) != 0 && (pi == m || abs(a_(i, j)) < abs(a_(pi, pj)))) {
            pi = i;
            pj = j;
          }
      if (pi == m) return false;
      swap_rows(t, pi);
      swap_cols(t, pj);

      bool clean = true;
      const BigInt pivot = a_(t, t);
      for (std::size_t i = t + 1; i < m; ++i) {
        if (a_(i, t) == 0) continue;
        BigInt q;
        mpz_tdiv_q(q.get_mpz_t(), a_(i, t).get_mpz_t(), pivot.get_mpz_t());
        if (q != 0) add_row(i, t, -q);
        if (a_(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (a_(t, j) == 0) continue;
        BigInt q;
        mpz_tdiv_q(q.get_mpz_t(), a_(t, j).get_mpz_t(), pivot.get_mpz_t());
        if (q != 0) add_col(j, t, -q);
        if (a_(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      bool divides = true;
      for (std::size_t i = t + 1; i < m && divides; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (!mpz_divisible_p(a_(i, j).get_mpz_t(), pivot.get_mpz_t())) {
            add_row(t, i, 1);
            divides = false;
            break;
          }
      if (divides) return true;
    }
  }

  // row_i += k * row_j
  void add_row(std::size_t i, std::size_t j, const BigInt& k) {
    for (std::size_t c = 0; c < a_.cols(); ++c)
      if (a_(j, c) != 0) a_(i, c) += k * a_(j, c);
    for (std::size_t c = 0; c < u_.cols(); ++c)
      if (u_(j, c) != 0) u_(i, c) += k * u_(j, c);
    for (std::size_t r = 0; r < uinv_.rows(); ++r)
      if (uinv_(r, i) != 0) uinv_(r, j) -= k * uinv_(r, i);
  }

  // col_i += k * col_j
  void add_col(std::size_t i, std::size_t j, const BigInt& k) {
    for (std::size_t r = 0; r < a_.rows(); ++r)
      if (a_(r, j) != 0) a_(r, i) += k * a_(r, j);
    for (std::size_t r = 0; r < v_.rows(); ++r)
      if (v_(r, j) != 0) v_(r, i) += k * v_(r, j);
  }

  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < a_.cols(); ++c) std::swap(a_(i, c), a_(j, c));
    for (std::size_t c = 0; c < u_.cols(); ++c) std::swap(u_(i, c), u_(j, c));
    for (std::size_t r = 0; r < uinv_.rows(); ++r) std::swap(uinv_(r, i), uinv_(r, j));
  }

  void swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t r = 0; r < a_.rows(); ++r) std::swap(a_(r, i), a_(r, j));
    for (std::size_t r = 0; r < v_.rows(); ++r) std::swap(v_(r, i), v_(r, j));
  }

  void negate_row(std::size_t i) {
    for (std::size_t c = 0; c < a_.cols(); ++c) a_(i, c) = -a_(i, c);
    for (std::size_t c = 0; c < u_.cols(); ++c) u_(i, c) = -u_(i, c);
    for (std::size_t r = 0; r < uinv_.rows(); ++r) uinv_(r, i) = -uinv_(r, i);
  }

  IntMatrix a_, u_, uinv_, v_;
};

}  // namespace

std::vector<BigInt> SmithForm::diagonal() const {
  std::vector<BigInt> d;
  const std::size_t k = std::min(S.rows(), S.cols());
  d.reserve(k);
  for (std::size_t i = 0; i < k; ++i) d.push_back(S(i, i));
  return d;
}

SmithForm smith(const IntMatrix& m) { return Reducer(m).run(); }

std::vector<Vec> integer_kernel(const IntMatrix& m) {
  const SmithForm sf = smith(m);
  std::vector<Vec> basis;
  for (std::size_t j = sf.rank; j < m.cols(); ++j) basis.push_back(sf.V.column(j));
  return basis;
}

Presented cokernel(const IntMatrix& relations) {
  const std::size_t n = relations.rows();
  const SmithForm sf = smith(relations);
  // Coordinate i of U x survives when its diagonal entry is not a unit.
  std::vector<std::size_t> kept;
  std::vector<BigInt> factors;
  for (std::size_t i = 0; i < n; ++i) {
    BigInt d = i < sf.rank ? BigInt(sf.S(i, i)) : BigInt(0);
    if (d == 1) continue;
    kept.push_back(i);
    factors.push_back(d);
  }
  Presented p;
  p.group = FgAb(std::move(factors));
  p.ambient_rank = n;
  p.to_group = IntMatrix(kept.size(), n);
  p.from_group = IntMatrix(n, kept.size());
  for (std::size_t k = 0; k < kept.size(); ++k)
    for (std::size_t c = 0; c < n; ++c) {
      p.to_group(k, c) = sf.U(kept[k], c);
      p.from_group(c, k) = sf.U_inverse(c, kept[k]);
    }
  return p;
}

Presented cokernel(const std::vector<Vec>& relations, std::size_t ambient_rank) {
  return cokernel(IntMatrix::from_columns(relations, ambient_rank));
}

Vec Presented::project(const Vec& ambient) const {
  if (ambient.size() != ambient_rank) throw AlgebraError("projection: wrong ambient rank");
  return group.reduce(to_group * ambient);
}

Vec Presented::lift(const Vec& element) const { return from_group * element; }

}  // namespace qg
