#pragma once

// Exact integer linear algebra and finitely generated abelian groups.
//
// An FgAb is always kept in invariant-factor form: factors d_1 | d_2 | ... | d_k
// with every d_i > 1, followed by zeros for the free rank.  Elements are
// coordinate vectors over that basis, reduced modulo the torsion factors.

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include "quadgroup/errors.hpp"

namespace qg {

using BigInt = mpz_class;
using Vec = std::vector<BigInt>;

/// Floor-style residue in [0, m) for m > 0.
BigInt mod_floor(const BigInt& a, const BigInt& m);
std::uint64_t to_u64(const BigInt& a);
Vec make_vec(std::initializer_list<long> values);
std::string to_string(const Vec& v);

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(std::initializer_list<std::initializer_list<long>> rows);
  /// Columns given as vectors of length `rows`.
  static IntMatrix from_columns(const std::vector<Vec>& columns, std::size_t rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  BigInt& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const BigInt& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  Vec row(std::size_t r) const;
  Vec column(std::size_t c) const;

  IntMatrix operator*(const IntMatrix& rhs) const;
  Vec operator*(const Vec& v) const;
  IntMatrix transposed() const;
  bool operator==(const IntMatrix& rhs) const = default;

  /// Exact determinant by fraction-free elimination.
  BigInt determinant() const;
  bool is_diagonal() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<BigInt> data_;
};

/// S = U * M * V with U, V unimodular and S diagonal with d_1 | d_2 | ...
struct SmithForm {
  IntMatrix U;
  IntMatrix S;
  IntMatrix V;
  IntMatrix U_inverse;
  std::size_t rank = 0;

  std::vector<BigInt> diagonal() const;
};

SmithForm smith(const IntMatrix& m);

class FgAb {
 public:
  FgAb() = default;
  /// Throws AlgebraError unless the list is already in invariant-factor form.
  explicit FgAb(std::vector<BigInt> factors);
  static FgAb from_ints(std::initializer_list<long> factors);
  static FgAb free(std::size_t rank);

  const std::vector<BigInt>& factors() const { return factors_; }
  std::size_t rank() const { return factors_.size(); }
  bool is_finite() const;
  bool is_trivial() const { return factors_.empty(); }
  /// Order of a finite group; throws AlgebraError for infinite groups.
  BigInt order() const;
  std::uint64_t order_u64() const;

  Vec zero() const { return Vec(rank()); }
  Vec generator(std::size_t i) const;
  Vec reduce(Vec v) const;
  Vec add(const Vec& a, const Vec& b) const;
  Vec sub(const Vec& a, const Vec& b) const;
  Vec neg(const Vec& a) const;
  Vec scale(const BigInt& k, const Vec& a) const;
  bool is_zero(const Vec& a) const;

  /// Mixed-radix enumeration of a finite group, refused beyond `cap` elements.
  std::uint64_t index_of(const Vec& a) const;
  Vec element_at(std::uint64_t index) const;
  std::vector<Vec> elements(std::uint64_t cap = Limits{}.enum_cap) const;

  std::vector<long> factors_as_long() const;
  std::string describe() const;

  bool operator==(const FgAb& rhs) const = default;

 private:
  std::vector<BigInt> factors_;
};

/// A quotient Z^n / (column span of a relation matrix), identified with its
/// invariant-factor form.
struct Presented {
  FgAb group;
  IntMatrix to_group;    // rank(group) x n
  IntMatrix from_group;  // n x rank(group)
  std::size_t ambient_rank = 0;

  Vec project(const Vec& ambient) const;
  Vec lift(const Vec& element) const;
};

/// Relation columns live in Z^rows.
Presented cokernel(const IntMatrix& relations);
Presented cokernel(const std::vector<Vec>& relations, std::size_t ambient_rank);

/// Basis of the integer kernel of m (vectors x with m x = 0).
std::vector<Vec> integer_kernel(const IntMatrix& m);

/// Sublattice of Z^dim kept in fully reduced Hermite normal form, so that
/// equality of lattices is equality of bases and membership is
/// back-substitution.
class Lattice {
 public:
  explicit Lattice(std::size_t dim = 0) : dim_(dim), rows_(dim) {}

  std::size_t dim() const { return dim_; }
  std::size_t rank() const;
  void insert(Vec v);
  bool contains(Vec v) const;
  std::vector<Vec> basis() const;
  /// Index in Z^dim; nullopt when the lattice is not of full rank.
  std::optional<BigInt> index() const;
  bool operator==(const Lattice& rhs) const;

 private:
  void normalize();

  std::size_t dim_;
  std::vector<std::optional<Vec>> rows_;  // indexed by pivot column
};

class AbMap {
 public:
  AbMap() = default;
  /// Columns of `matrix` are images of the domain generators.  Throws
  /// AlgebraError unless every torsion relation of the domain is killed.
  AbMap(FgAb domain, FgAb codomain, IntMatrix matrix);
  static AbMap from_images(FgAb domain, FgAb codomain, const std::vector<Vec>& images);
  static AbMap zero(FgAb domain, FgAb codomain);
  static AbMap identity(FgAb group);

  const FgAb& domain() const { return domain_; }
  const FgAb& codomain() const { return codomain_; }
  const IntMatrix& matrix() const { return matrix_; }

  Vec apply(const Vec& x) const;
  Vec image_of_generator(std::size_t i) const { return matrix_.column(i); }

  AbMap after(const AbMap& first) const;  // this ∘ first
  AbMap operator+(const AbMap& rhs) const;
  AbMap operator-() const;
  AbMap operator-(const AbMap& rhs) const { return *this + (-rhs); }
  bool operator==(const AbMap& rhs) const = default;

 private:
  FgAb domain_;
  FgAb codomain_;
  IntMatrix matrix_;
};

/// Subgroup of an FgAb given by generators; canonicalized through the lattice
/// generated by the generators and the ambient torsion relations.
class AbSub {
 public:
  AbSub() = default;
  AbSub(FgAb ambient, std::vector<Vec> generators);
  static AbSub whole(const FgAb& ambient);
  static AbSub trivial(const FgAb& ambient);

  const FgAb& ambient() const { return ambient_; }
  const std::vector<Vec>& generators() const { return generators_; }
  const Lattice& lattice() const { return lattice_; }
  bool contains(const Vec& x) const;
  BigInt order() const;
  bool is_trivial() const;

 private:
  FgAb ambient_;
  std::vector<Vec> generators_;
  Lattice lattice_;
};

/// Throws AlgebraError if the ambients differ.
bool sub_equal(const AbSub& a, const AbSub& b);
AbSub kernel(const AbMap& f);
AbSub image(const AbMap& f);
bool is_injective(const AbMap& f);
bool is_surjective(const AbMap& f);

/// A subgroup realized as an FgAb of its own, with the inclusion map.
struct SubgroupAsFgAb {
  FgAb group;
  AbMap inclusion;
};
SubgroupAsFgAb as_fgab(const AbSub& s);

/// Quotient A / S with the projection.
struct QuotientFgAb {
  FgAb group;
  AbMap projection;
};
QuotientFgAb quotient(const AbSub& s);

struct DirectSum {
  FgAb group;
  AbMap inject_left, inject_right;
  AbMap project_left, project_right;
};
DirectSum direct_sum(const FgAb& a, const FgAb& b);

/// A ⊗ B presented on the basis e_i ⊗ f_j by the Kronecker relations of the
/// two factor presentations.
struct TensorProduct {
  FgAb left;
  FgAb right;
  Presented pres;

  const FgAb& group() const { return pres.group; }
  Vec tens(const Vec& a, const Vec& b) const;
  /// Coefficients on e_i ⊗ f_j (row-major in i) of a lift of x.
  Vec lift(const Vec& x) const { return pres.lift(x); }
};

TensorProduct tensor_product(const FgAb& a, const FgAb& b);
TensorProduct tensor_square(const FgAb& a);

/// f ⊗ g between two tensor products.
AbMap tensor_maps(const AbMap& f, const AbMap& g, const TensorProduct& src,
                  const TensorProduct& dst);

/// Λ²A = (A ⊗ A) / <a ⊗ a>, with the alternation map l2(a∧b) = a⊗b - b⊗a and
/// the projection A ⊗ A -> Λ²A.
struct ExteriorSquare {
  TensorProduct square;
  Presented pres;
  AbMap l2;
  AbMap wedge_projection;

  const FgAb& group() const { return pres.group; }
  Vec wedge(const Vec& a, const Vec& b) const;
};

ExteriorSquare exterior_square(const FgAb& a);

}  // namespace qg
