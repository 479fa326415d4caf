#pragma once

// Exact integer linear algebra over Z and finite abelian groups.
//
// Everything downstream (rings, modules, hom groups, tensor products) is
// reduced to three primitives defined here: Smith normal form, integer
// kernels, and subgroups of finite direct sums of cyclic groups.

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "descent_kit/error.hpp"

namespace descent_kit {

using Integer = boost::multiprecision::cpp_int;
using Vec = std::vector<std::int64_t>;

/// Upper bound on any enumeration (elements, structures, homs). Read once
/// from DESCENT_KIT_MAX_ENUM, default 2,000,000.
std::uint64_t enumeration_cap();

std::int64_t mod_floor(std::int64_t a, std::int64_t m);
std::int64_t gcd64(std::int64_t a, std::int64_t b);
std::int64_t lcm64(std::int64_t a, std::int64_t b);

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  IntMatrix(std::initializer_list<std::initializer_list<long long>> rows);

  static IntMatrix identity(std::size_t n);
  static IntMatrix diagonal(std::span<const Integer> entries, std::size_t rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  IntMatrix operator*(const IntMatrix& rhs) const;
  bool operator==(const IntMatrix& rhs) const = default;

  IntMatrix transposed() const;
  std::vector<Integer> column(std::size_t c) const;
  /// Horizontal concatenation; row counts must match.
  IntMatrix hcat(const IntMatrix& rhs) const;
  /// Exact determinant (fraction-free Bareiss elimination).
  Integer determinant() const;

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

/// m = u * d * v with u, v unimodular and d diagonal, d_i | d_{i+1}, d_i >= 0.
/// u_inv and v_inv are the inverses of u and v.
struct SmithForm {
  IntMatrix u;
  IntMatrix d;
  IntMatrix v;
  IntMatrix u_inv;
  IntMatrix v_inv;
  std::size_t rank = 0;

  std::vector<Integer> diagonal() const;
};

SmithForm smith_normal_form(const IntMatrix& m);

/// Columns form a Z-basis of {x : m x = 0}.
IntMatrix integer_kernel(const IntMatrix& m);

/// Column-style Hermite basis of the lattice spanned by the columns of gens.
IntMatrix hermite_basis(const IntMatrix& gens);

/// Reduce x modulo the lattice given by a Hermite basis, entries at pivot
/// rows land in [0, pivot).
std::vector<Integer> reduce_modulo_lattice(std::vector<Integer> x, const IntMatrix& hermite);

/// Canonical invariant-factor form d_1 | d_2 | ... | d_k, each d_i >= 2.
class FiniteAbelianGroup {
 public:
  FiniteAbelianGroup() = default;
  /// Requires an already canonical factor list; throws InvalidArgument otherwise.
  explicit FiniteAbelianGroup(Vec invariant_factors);
  /// Canonical form of the direct sum of cyclic groups Z/m_i (m_i >= 1).
  static FiniteAbelianGroup from_cyclic_orders(std::span<const std::int64_t> orders);

  const Vec& factors() const { return factors_; }
  std::size_t rank() const { return factors_.size(); }
  std::int64_t factor(std::size_t i) const { return factors_[i]; }
  /// Throws SizeLimitExceeded when the order does not fit in 63 bits.
  std::uint64_t order() const;
  Integer exact_order() const;
  std::int64_t exponent() const { return factors_.empty() ? 1 : factors_.back(); }
  bool trivial() const { return factors_.empty(); }

  Vec zero() const { return Vec(factors_.size(), 0); }
  Vec basis(std::size_t i) const;
  void reduce(Vec& x) const;
  Vec reduced(Vec x) const {
    reduce(x);
    return x;
  }
  Vec add(const Vec& x, const Vec& y) const;
  Vec sub(const Vec& x, const Vec& y) const;
  Vec neg(const Vec& x) const;
  Vec scale(std::int64_t k, const Vec& x) const;
  /// x += k * y, reduced.
  void axpy(Vec& x, std::int64_t k, const Vec& y) const;
  bool is_zero(const Vec& x) const;
  std::int64_t element_order(const Vec& x) const;

  /// Mixed-radix enumeration, coordinate 0 varying fastest.
  Vec element_at(std::uint64_t index) const;
  std::uint64_t index_of(const Vec& x) const;
  /// Visit every element in index order; stop early when f returns false.
  void for_each_element(const std::function<bool(const Vec&)>& f) const;

  std::string to_string() const;

  auto operator<=>(const FiniteAbelianGroup&) const = default;
  bool operator==(const FiniteAbelianGroup&) const = default;

 private:
  Vec factors_;
};

/// All abelian groups of the given order, in canonical form, sorted.
std::vector<FiniteAbelianGroup> abelian_groups_of_order(std::uint64_t n);

struct Cokernel {
  FiniteAbelianGroup group;
  /// rank(group) x ambient: x -> projection * x, reduced.
  IntMatrix projection;
  /// ambient x rank(group): column t lifts canonical generator t.
  IntMatrix lift;

  Vec project(std::span<const Integer> x) const;
};

/// Z^rows / column-span(rel). Throws InfiniteQuotient when the quotient has
/// a free part.
Cokernel cokernel(const IntMatrix& rel);

struct CongruenceSolution {
  std::vector<Integer> particular;
  /// Columns generate the homogeneous solution lattice (Hermite basis).
  IntMatrix homogeneous;
};

/// Solve m x = b (mod moduli) row-wise; modulus 0 means exact equality.
std::optional<CongruenceSolution> solve_congruences(const IntMatrix& m, std::span<const Integer> b,
                                                    std::span<const Integer> moduli);

struct GroupHom {
  FiniteAbelianGroup source;
  FiniteAbelianGroup target;
  /// images[i] = image of source generator i, in target coordinates.
  std::vector<Vec> images;

  Vec apply(const Vec& x) const;
  bool well_defined() const;
  bool operator==(const GroupHom&) const = default;
};

/// Every homomorphism g -> h; count is the product of gcd(d_i, e_j).
std::vector<GroupHom> enumerate_group_homs(const FiniteAbelianGroup& g, const FiniteAbelianGroup& h,
                                           std::uint64_t cap = enumeration_cap());

/// A subgroup of an ambient direct sum of cyclic groups Z/a_1 + ... + Z/a_n
/// (moduli need not form a divisibility chain), with its canonical form and
/// a precomputed coordinate solver.
class Subgroup {
 public:
  Subgroup() = default;

  static Subgroup generated_by(Vec ambient_moduli, const std::vector<Vec>& generators);
  /// Kernel of the homomorphism sending ambient unit vector j to images[j]
  /// in the direct sum with target_moduli.
  static Subgroup kernel(Vec ambient_moduli, const Vec& target_moduli, const std::vector<Vec>& images);
  static Subgroup whole(Vec ambient_moduli);

  const FiniteAbelianGroup& group() const { return group_; }
  const Vec& ambient_moduli() const { return ambient_; }
  /// Ambient image of canonical generator t.
  const std::vector<Vec>& generators() const { return gens_; }

  Vec embed(const Vec& coords) const;
  /// Canonical coordinates of an ambient element; nullopt if not a member.
  std::optional<Vec> coordinates(const Vec& ambient) const;
  bool contains(const Vec& ambient) const { return coordinates(ambient).has_value(); }

 private:
  void build_solver();
  static Subgroup span_mod_prime(Vec ambient_moduli, std::int64_t p, const std::vector<Vec>& generators);

  Vec ambient_;
  FiniteAbelianGroup group_;
  std::vector<Vec> gens_;

  // Solver for [gens | diag(ambient)] (c, y) = x, see build_solver.
  bool fast_ = true;
  std::vector<std::int64_t> pivots_;
  std::vector<std::int64_t> row_mod_;
  std::vector<Vec> p_rows_;  // row i reduced mod row_mod_[i]
  std::vector<Vec> q_rows_;  // rows t < rank(group), reduced mod d_t
  IntMatrix p_exact_;
  IntMatrix q_exact_;
  std::vector<Integer> d_exact_;
  // Elementary abelian ambient: generators are reduced echelon rows mod prime_.
  std::int64_t prime_ = 0;
  std::vector<std::size_t> pivot_cols_;
};

/// Lexicographically least element of the coset base + subgroup, where both
/// live in the canonical coordinates of `group` and the subgroup is given by
/// generators in those coordinates.
Vec lexmin_in_coset(const FiniteAbelianGroup& group, Vec base, const std::vector<Vec>& subgroup_gens);

/// Prime factorization as (prime, exponent) pairs.
std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n);

}  // namespace descent_kit
