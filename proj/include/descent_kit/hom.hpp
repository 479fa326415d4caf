#pragma once

// Hom modules, tensor products over a ring, and character duals.

#include "descent_kit/module.hpp"

namespace descent_kit {

/// A group of additive maps source -> target satisfying linearity conditions,
/// stored as a subgroup of the parametrization sum_{i,j} Z/gcd(d_i, e_j)
/// (entry (i, j) = coefficient of target generator j in the image of source
/// generator i, divided by e_j / gcd).
struct HomSpace {
  ModulePtr source;
  ModulePtr target;
  /// The hom group, with any residual actions.
  ModulePtr module;
  Subgroup sub;

  std::uint64_t size() const { return module->order(); }
  std::vector<Vec> images(const Vec& coords) const;
  /// Canonical coordinates of the map with the given generator images, if it is in the space.
  std::optional<Vec> coords(const std::vector<Vec>& images) const;
  ModuleMap map(const Vec& coords) const;
  std::optional<Vec> coords(const ModuleMap& f) const { return coords(f.images); }
};

/// Maps that are linear for the requested actions (which must exist on both ends).
/// When residual is set, the one-sided hom carries the actions described in
/// hom_right / hom_left.
HomSpace hom_space(const ModulePtr& m, const ModulePtr& n, bool left_linear, bool right_linear);

/// [M, N] = Mod_B(M, N) for right B-modules. Residual actions:
/// (c f a)(x) = c * f(a * x) with c from N's left ring and a from M's left ring.
HomSpace hom_right(const ModulePtr& m, const ModulePtr& n);
/// {M, N} = _A Mod(M, N) for left A-modules. Residual actions:
/// (b f c)(x) = f(x * b) * c with b from M's right ring and c from N's right ring.
HomSpace hom_left(const ModulePtr& m, const ModulePtr& n);
/// Maps linear for every action present on both sides (no residual structure).
HomSpace module_homs(const ModulePtr& m, const ModulePtr& n);
/// All additive maps.
HomSpace hom_z(const ModulePtr& m, const ModulePtr& n);

/// f^* : Hom(M, N) -> Hom(M', N) for f : M' -> M, between the given spaces.
ModuleMap precompose_map(const HomSpace& from, const HomSpace& to, const ModuleMap& f);
/// g_* : Hom(M, N) -> Hom(M, N') for g : N -> N'.
ModuleMap postcompose_map(const HomSpace& from, const HomSpace& to, const ModuleMap& g);

/// Every element of a hom space as a map (capped).
std::vector<ModuleMap> enumerate_maps(const HomSpace& h, std::uint64_t cap = enumeration_cap());

/// M (x)_A N for M a right A-module and N a left A-module. Outer actions
/// (left on M, right on N) survive.
struct TensorProduct {
  ModulePtr left_factor;
  ModulePtr right_factor;
  ModulePtr module;
  /// pair[i][j] = image of g_i (x) h_j.
  std::vector<std::vector<Vec>> pair;
  /// Sparse lifts: canonical generator t = sum coef * (g_i (x) h_j).
  struct Term {
    std::size_t i, j;
    std::int64_t coef;
  };
  std::vector<std::vector<Term>> lift;

  Vec pure(const Vec& x, const Vec& y) const;
};
TensorProduct tensor_over(const ModulePtr& m, const ModulePtr& n);

/// f (x) g : M (x) N -> M' (x) N' between computed tensor products.
ModuleMap tensor_maps(const ModuleMap& f, const ModuleMap& g, const TensorProduct& src, const TensorProduct& dst);

/// M+ = Hom(M, Q/Z); coordinate c_i means the functional with g_i -> c_i / d_i.
/// Actions are reversed: (b f a)(m) = f(a m b).
ModulePtr character_dual(const ModulePtr& m);
/// Value of the functional with coordinates c at x, as a fraction num / den in [0,1).
std::pair<std::int64_t, std::int64_t> evaluate_functional(const FiniteAbelianGroup& g, const Vec& c, const Vec& x);
/// Coordinates in M+ of the functional with the given values on generators (fractions).
Vec functional_coords(const FiniteAbelianGroup& g, const std::vector<std::pair<std::int64_t, std::int64_t>>& values);
/// f+ : N+ -> M+ by precomposition; duals are computed (or passed) as needed.
ModuleMap dual_map(const ModuleMap& f);
ModuleMap dual_map(const ModuleMap& f, const ModulePtr& source_dual, const ModulePtr& target_dual);
/// M -> (M+)+, x -> (f -> f(x)).
ModuleMap double_dual_map(const ModulePtr& m);

}  // namespace descent_kit
