#include <sstream>
#include <utility>

#include "quadgroup/abelian.hpp"

namespace qg {

// ---------------------------------------------------------------- FgAb

FgAb::FgAb(std::vector<BigInt> factors) : factors_(std::move(factors)) {
  bool free_part = false;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    const BigInt& d = factors_[i];
    if (d == 0) {
      free_part = true;
      continue;
    }
    if (free_part || d <= 1)
      throw AlgebraError("not in invariant-factor form: factor " + d.get_str() + " at position " +
                         std::to_string(i));
    if (i > 0 && !mpz_divisible_p(d.get_mpz_t(), factors_[i - 1].get_mpz_t()))
      throw AlgebraError("invariant factors must divide each other: " + factors_[i - 1].get_str() +
                         " does not divide " + d.get_str());
  }
}

FgAb FgAb::from_ints(std::initializer_list<long> factors) {
  std::vector<BigInt> f;
  for (long d : factors) f.emplace_back(d);
  return FgAb(std::move(f));
}

FgAb FgAb::free(std::size_t rank) { return FgAb(std::vector<BigInt>(rank, BigInt(0))); }

bool FgAb::is_finite() const {
  for (const auto& d : factors_)
    if (d == 0) return false;
  return true;
}

BigInt FgAb::order() const {
  if (!is_finite()) throw AlgebraError("order of an infinite group");
  BigInt n = 1;
  for (const auto& d : factors_) n *= d;
  return n;
}

std::uint64_t FgAb::order_u64() const { return to_u64(order()); }

Vec FgAb::generator(std::size_t i) const {
  Vec v(rank());
  v.at(i) = 1;
  return v;
}

Vec FgAb::reduce(Vec v) const {
  if (v.size() != rank()) throw AlgebraError("element of rank " + std::to_string(v.size()) +
                                             " in group of rank " + std::to_string(rank()));
  for (std::size_t i = 0; i < v.size(); ++i)
    if (factors_[i] != 0) v[i] = mod_floor(v[i], factors_[i]);
  return v;
}

Vec FgAb::add(const Vec& a, const Vec& b) const {
  Vec r(rank());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = a.at(i) + b.at(i);
  return reduce(std::move(r));
}

Vec FgAb::sub(const Vec& a, const Vec& b) const {
  Vec r(rank());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = a.at(i) - b.at(i);
  return reduce(std::move(r));
}

Vec FgAb::neg(const Vec& a) const { return sub(zero(), a); }

Vec FgAb::scale(const BigInt& k, const Vec& a) const {
  Vec r(a);
  for (auto& x : r) x *= k;
  return reduce(std::move(r));
}

bool FgAb::is_zero(const Vec& a) const {
  const Vec r = reduce(a);
  for (const auto& x : r)
    if (x != 0) return false;
  return true;
}

std::uint64_t FgAb::index_of(const Vec& a) const {
  const Vec r = reduce(a);
  if (!is_finite()) throw AlgebraError("indexing an infinite group");
  std::uint64_t idx = 0, radix = 1;
  for (std::size_t i = 0; i < r.size(); ++i) {
    idx += to_u64(r[i]) * radix;
    radix *= to_u64(factors_[i]);
  }
  return idx;
}

Vec FgAb::element_at(std::uint64_t index) const {
  if (!is_finite()) throw AlgebraError("indexing an infinite group");
  Vec v(rank());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const std::uint64_t d = to_u64(factors_[i]);
    v[i] = static_cast<unsigned long>(index % d);
    index /= d;
  }
  if (index != 0) throw AlgebraError("element index out of range");
  return v;
}

std::vector<Vec> FgAb::elements(std::uint64_t cap) const {
  if (!is_finite()) throw CapExceeded("cannot enumerate an infinite group");
  const BigInt n = order();
  if (n > BigInt(static_cast<unsigned long>(cap)))
    throw CapExceeded("group of order " + n.get_str() + " exceeds enumeration cap " + std::to_string(cap));
  std::vector<Vec> out;
  const std::uint64_t count = to_u64(n);
  out.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) out.push_back(element_at(i));
  return out;
}

std::vector<long> FgAb::factors_as_long() const {
  std::vector<long> out;
  for (const auto& d : factors_) {
    if (!d.fits_slong_p()) throw CapExceeded("invariant factor too large");
    out.push_back(d.get_si());
  }
  return out;
}

std::string FgAb::describe() const {
  if (factors_.empty()) return "0";
  std::ostringstream os;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (i) os << " + ";
    if (factors_[i] == 0)
      os << "Z";
    else
      os << "Z/" << factors_[i].get_str();
  }
  return os.str();
}

// ---------------------------------------------------------------- Lattice

std::size_t Lattice::rank() const {
  std::size_t r = 0;
  for (const auto& row : rows_) r += row.has_value();
  return r;
}

void Lattice::insert(Vec v) {
  if (v.size() != dim_) throw AlgebraError("lattice vector of wrong dimension");
  bool changed = false;
  for (std::size_t c = 0; c < dim_; ++c) {
    if (v[c] == 0) continue;
    if (!rows_[c]) {
      if (v[c] < 0)
        for (auto& x : v) x = -x;
      rows_[c] = std::move(v);
      changed = true;
      break;
    }
    Vec& r = *rows_[c];
    if (mpz_divisible_p(v[c].get_mpz_t(), r[c].get_mpz_t())) {
      const BigInt q = v[c] / r[c];
      for (std::size_t j = c; j < dim_; ++j)
        if (r[j] != 0) v[j] -= q * r[j];
      continue;
    }
    // Replace the row by the gcd combination and keep reducing the remainder.
    BigInt g, s, t;
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), r[c].get_mpz_t(), v[c].get_mpz_t());
    const BigInt rc = r[c] / g, vc = v[c] / g;
    Vec combined(dim_), rest(dim_);
    for (std::size_t j = c; j < dim_; ++j) {
      combined[j] = s * r[j] + t * v[j];
      rest[j] = vc * r[j] - rc * v[j];
    }
    if (combined[c] < 0)
      for (auto& x : combined) x = -x;
    r = std::move(combined);
    v = std::move(rest);
    changed = true;
  }
  if (changed) normalize();
}

void Lattice::normalize() {
  // Reduce every entry above a pivot into [0, pivot).
  for (std::size_t q = 0; q < dim_; ++q) {
    if (!rows_[q]) continue;
    const Vec& pivot_row = *rows_[q];
    const BigInt& piv = pivot_row[q];
    for (std::size_t p = 0; p < q; ++p) {
      if (!rows_[p]) continue;
      Vec& row = *rows_[p];
      if (row[q] == 0) continue;
      BigInt k;
      mpz_fdiv_q(k.get_mpz_t(), row[q].get_mpz_t(), piv.get_mpz_t());
      if (k == 0) continue;
      for (std::size_t j = q; j < dim_; ++j)
        if (pivot_row[j] != 0) row[j] -= k * pivot_row[j];
    }
  }
}

bool Lattice::contains(Vec v) const {
  if (v.size() != dim_) throw AlgebraError("lattice vector of wrong dimension");
  for (std::size_t c = 0; c < dim_; ++c) {
    if (v[c] == 0) continue;
    if (!rows_[c]) return false;
    const Vec& r = *rows_[c];
    if (!mpz_divisible_p(v[c].get_mpz_t(), r[c].get_mpz_t())) return false;
    const BigInt q = v[c] / r[c];
    for (std::size_t j = c; j < dim_; ++j)
      if (r[j] != 0) v[j] -= q * r[j];
  }
  return true;
}

std::vector<Vec> Lattice::basis() const {
  std::vector<Vec> out;
  for (const auto& r : rows_)
    if (r) out.push_back(*r);
  return out;
}

std::optional<BigInt> Lattice::index() const {
  BigInt idx = 1;
  for (std::size_t c = 0; c < dim_; ++c) {
    if (!rows_[c]) return std::nullopt;
    idx *= (*rows_[c])[c];
  }
  return idx;
}

bool Lattice::operator==(const Lattice& rhs) const { return dim_ == rhs.dim_ && rows_ == rhs.rows_; }

// ---------------------------------------------------------------- AbMap

AbMap::AbMap(FgAb domain, FgAb codomain, IntMatrix matrix)
    : domain_(std::move(domain)), codomain_(std::move(codomain)), matrix_(std::move(matrix)) {
  if (matrix_.rows() != codomain_.rank() || matrix_.cols() != domain_.rank())
    throw AlgebraError("homomorphism matrix has shape " + std::to_string(matrix_.rows()) + "x" +
                       std::to_string(matrix_.cols()) + ", expected " +
                       std::to_string(codomain_.rank()) + "x" + std::to_string(domain_.rank()));
  for (std::size_t j = 0; j < matrix_.cols(); ++j) {
    Vec col = codomain_.reduce(matrix_.column(j));
    for (std::size_t i = 0; i < col.size(); ++i) matrix_(i, j) = col[i];
    const BigInt& d = domain_.factors()[j];
    if (d != 0 && !codomain_.is_zero(codomain_.scale(d, col)))
      throw AlgebraError("not well defined: generator " + std::to_string(j) + " of order " +
                         d.get_str() + " maps to " + to_string(col));
  }
}

AbMap AbMap::from_images(FgAb domain, FgAb codomain, const std::vector<Vec>& images) {
  const std::size_t rows = codomain.rank();
  return AbMap(std::move(domain), std::move(codomain), IntMatrix::from_columns(images, rows));
}

AbMap AbMap::zero(FgAb domain, FgAb codomain) {
  IntMatrix m(codomain.rank(), domain.rank());
  return AbMap(std::move(domain), std::move(codomain), std::move(m));
}

AbMap AbMap::identity(FgAb group) {
  IntMatrix m = IntMatrix::identity(group.rank());
  return AbMap(group, group, std::move(m));
}

Vec AbMap::apply(const Vec& x) const { return codomain_.reduce(matrix_ * x); }

AbMap AbMap::after(const AbMap& first) const {
  if (!(first.codomain_ == domain_)) throw AlgebraError("composition of incompatible maps");
  return AbMap(first.domain_, codomain_, matrix_ * first.matrix_);
}

AbMap AbMap::operator+(const AbMap& rhs) const {
  if (!(domain_ == rhs.domain_) || !(codomain_ == rhs.codomain_))
    throw AlgebraError("sum of maps with different (co)domains");
  IntMatrix m(matrix_.rows(), matrix_.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = matrix_(i, j) + rhs.matrix_(i, j);
  return AbMap(domain_, codomain_, std::move(m));
}

AbMap AbMap::operator-() const {
  IntMatrix m(matrix_.rows(), matrix_.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = -matrix_(i, j);
  return AbMap(domain_, codomain_, std::move(m));
}

// ---------------------------------------------------------------- AbSub

namespace {

Lattice relation_lattice(const FgAb& ambient) {
  Lattice l(ambient.rank());
  for (std::size_t i = 0; i < ambient.rank(); ++i) {
    const BigInt& d = ambient.factors()[i];
    if (d == 0) continue;
    Vec v(ambient.rank());
    v[i] = d;
    l.insert(std::move(v));
  }
  return l;
}

}  // namespace

AbSub::AbSub(FgAb ambient, std::vector<Vec> generators)
    : ambient_(std::move(ambient)), generators_(std::move(generators)), lattice_(relation_lattice(ambient_)) {
  for (auto& g : generators_) {
    g = ambient_.reduce(g);
    lattice_.insert(g);
  }
}

AbSub AbSub::whole(const FgAb& ambient) {
  std::vector<Vec> gens;
  for (std::size_t i = 0; i < ambient.rank(); ++i) gens.push_back(ambient.generator(i));
  return AbSub(ambient, std::move(gens));
}

AbSub AbSub::trivial(const FgAb& ambient) { return AbSub(ambient, {}); }

bool AbSub::contains(const Vec& x) const { return lattice_.contains(ambient_.reduce(x)); }

BigInt AbSub::order() const {
  const auto idx = lattice_.index();
  if (!ambient_.is_finite() || !idx) throw AlgebraError("order of an infinite subgroup");
  return ambient_.order() / *idx;
}

bool AbSub::is_trivial() const { return lattice_ == relation_lattice(ambient_); }

bool sub_equal(const AbSub& a, const AbSub& b) {
  if (!(a.ambient() == b.ambient()))
    throw AlgebraError("comparing subgroups of different groups: " + a.ambient().describe() + " vs " +
                       b.ambient().describe());
  return a.lattice() == b.lattice();
}

AbSub image(const AbMap& f) {
  std::vector<Vec> gens;
  for (std::size_t j = 0; j < f.domain().rank(); ++j) gens.push_back(f.image_of_generator(j));
  return AbSub(f.codomain(), std::move(gens));
}

AbSub kernel(const AbMap& f) {
  // x is in the kernel iff M x + diag(c) y = 0 for some y.
  const std::size_t r = f.domain().rank(), s = f.codomain().rank();
  IntMatrix k(s, r + s);
  for (std::size_t i = 0; i < s; ++i) {
    for (std::size_t j = 0; j < r; ++j) k(i, j) = f.matrix()(i, j);
    k(i, r + i) = f.codomain().factors()[i];
  }
  std::vector<Vec> gens;
  for (const Vec& v : integer_kernel(k)) gens.emplace_back(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(r));
  return AbSub(f.domain(), std::move(gens));
}

bool is_injective(const AbMap& f) { return kernel(f).is_trivial(); }

bool is_surjective(const AbMap& f) { return sub_equal(image(f), AbSub::whole(f.codomain())); }

SubgroupAsFgAb as_fgab(const AbSub& s) {
  const FgAb& a = s.ambient();
  const std::vector<Vec> gens = s.lattice().basis();
  const std::size_t m = gens.size(), r = a.rank();
  // Relations among the generators: y with sum y_j g_j in the torsion lattice.
  IntMatrix k(r, m + r);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < m; ++j) k(i, j) = gens[j][i];
    k(i, m + i) = a.factors()[i];
  }
  std::vector<Vec> rels;
  for (const Vec& v : integer_kernel(k)) rels.emplace_back(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(m));
  const Presented p = cokernel(rels, m);
  const IntMatrix g = IntMatrix::from_columns(gens, r);
  return SubgroupAsFgAb{p.group, AbMap(p.group, a, g * p.from_group)};
}

QuotientFgAb quotient(const AbSub& s) {
  const FgAb& a = s.ambient();
  const Presented p = cokernel(s.lattice().basis(), a.rank());
  std::vector<Vec> images;
  for (std::size_t i = 0; i < a.rank(); ++i) images.push_back(p.project(a.generator(i)));
  return QuotientFgAb{p.group, AbMap::from_images(a, p.group, images)};
}

DirectSum direct_sum(const FgAb& a, const FgAb& b) {
  const std::size_t r = a.rank(), s = b.rank();
  std::vector<Vec> rels;
  for (std::size_t i = 0; i < r + s; ++i) {
    const BigInt& d = i < r ? a.factors()[i] : b.factors()[i - r];
    if (d == 0) continue;
    Vec v(r + s);
    v[i] = d;
    rels.push_back(std::move(v));
  }
  const Presented p = cokernel(rels, r + s);
  std::vector<Vec> inj_a, inj_b, proj_a, proj_b;
  for (std::size_t i = 0; i < r + s; ++i) {
    Vec e(r + s);
    e[i] = 1;
    (i < r ? inj_a : inj_b).push_back(p.project(e));
  }
  for (std::size_t k = 0; k < p.group.rank(); ++k) {
    const Vec lifted = p.lift(p.group.generator(k));
    proj_a.emplace_back(lifted.begin(), lifted.begin() + static_cast<std::ptrdiff_t>(r));
    proj_b.emplace_back(lifted.begin() + static_cast<std::ptrdiff_t>(r), lifted.end());
  }
  return DirectSum{p.group, AbMap::from_images(a, p.group, inj_a), AbMap::from_images(b, p.group, inj_b),
                   AbMap::from_images(p.group, a, proj_a), AbMap::from_images(p.group, b, proj_b)};
}

}  // namespace qg
