#pragma once

// Finite unital associative rings given by structure constants.

#include <memory>
#include <string>
#include <vector>

#include "descent_kit/exactlin.hpp"

namespace descent_kit {

struct FiniteRing;
using RingPtr = std::shared_ptr<const FiniteRing>;

struct FiniteRing {
  std::string name;
  FiniteAbelianGroup add;
  /// mult[i][j] = g_i * g_j in canonical coordinates.
  std::vector<std::vector<Vec>> mult;
  Vec one;
  /// Commutative base ring K. Null means K = Z/char, acting through integers.
  RingPtr base;
  /// Images of the additive generators of base (only when base is set).
  std::vector<Vec> base_map;
  /// Preferred ring generators (as elements); empty means "choose automatically".
  std::vector<Vec> ring_generators;
  /// Structural identity, filled by make_ring.
  std::string fingerprint;

  std::size_t rank() const { return add.rank(); }
  std::uint64_t order() const { return add.order(); }
  std::int64_t characteristic() const;
  Vec zero() const { return add.zero(); }
  Vec gen(std::size_t i) const { return add.basis(i); }
  Vec mul(const Vec& x, const Vec& y) const;
  bool is_commutative() const;
};

/// Freeze a ring: reduces tables and computes the fingerprint.
RingPtr make_ring(FiniteRing r);

bool same_ring(const RingPtr& a, const RingPtr& b);
bool same_ring(const FiniteRing& a, const FiniteRing& b);

/// Z/n with its standard multiplication (any presentation generated by 1).
bool is_cyclic_ring(const FiniteRing& r);
/// K for r: either the declared base or Z/char(r).
RingPtr base_of(const RingPtr& r);
/// Image of a base element in r.
Vec base_image(const FiniteRing& r, const Vec& k);

struct Violation {
  std::string axiom;
  std::vector<std::size_t> witness;
  std::string to_string() const;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  std::string to_string() const;
};

ValidationReport validate_ring(const FiniteRing& r);

/// Ring with additive group sum Z/moduli (any order, 1 allowed), table given
/// in those coordinates; canonicalized through the cokernel.
RingPtr ring_from_presentation(std::string name, const Vec& moduli, const std::vector<std::vector<Vec>>& mult,
                               const Vec& one, RingPtr base = nullptr, const std::vector<Vec>& base_map = {});

struct RingHom {
  RingPtr source;
  RingPtr target;
  /// images[i] = image of source additive generator i.
  std::vector<Vec> images;

  Vec apply(const Vec& x) const;
};

ValidationReport validate_ring_hom(const RingHom& h);

RingPtr cyclic_ring(std::int64_t n);
RingPtr product_ring(const RingPtr& a, const RingPtr& b);
/// M_n(k), base k, generators E_ij ordered row-major before canonicalization.
RingPtr matrix_ring(const RingPtr& k, std::size_t n);
/// Z/n[x] / (x^d + c_{d-1} x^{d-1} + ... + c_0), coefficients low to high.
RingPtr polynomial_quotient_ring(std::int64_t n, const Vec& monic_low_coeffs, std::string name = "");
RingPtr dual_numbers(std::int64_t p);
/// Upper triangular 2x2 matrices over Z/p.
RingPtr upper_triangular(std::int64_t p);
RingPtr opposite_ring(const RingPtr& a);
/// a (x)_K b with componentwise multiplication; generators g(x)1 and 1(x)h.
struct TensorRing {
  RingPtr ring;
  /// Image of the pair (a_i, b_j) in ring coordinates.
  std::vector<std::vector<Vec>> pair;
  Vec pure(const Vec& x, const Vec& y) const;
};
TensorRing tensor_ring(const RingPtr& a, const RingPtr& b);
/// a (x)_K a^op.
TensorRing enveloping_ring(const RingPtr& a);

RingHom identity_hom(const RingPtr& a);
RingHom diagonal_hom(const RingPtr& a);
/// a x b -> a (first = true) or -> b.
RingHom projection_hom(const RingPtr& product, const RingPtr& a, const RingPtr& b, bool first);
/// Z/n -> Z/m for m | n.
RingHom reduction_hom(std::int64_t n, std::int64_t m);
/// Structure map K -> a for a K-algebra a.
RingHom structure_hom(const RingPtr& a);
/// Any ring hom whose source is generated by 1 (e.g. Z/n -> a).
RingHom unit_hom(const RingPtr& cyclic, const RingPtr& target);
RingHom compose(const RingHom& g, const RingHom& f);

}  // namespace descent_kit
