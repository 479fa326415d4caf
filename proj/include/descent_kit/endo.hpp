#pragma once

// Finitely generated projective modules, duals, endomorphism rings and the
// canonical map i_M : A -> E_M, total faithfulness, and the reports that
// reduce bimodule questions to the ring map i_M.

#include "descent_kit/criteria.hpp"

namespace descent_kit {

/// m_1..m_n in M and f_1..f_n in Mod_B(M, B) with sum m_j f_j(m) = m.
struct DualBasis {
  std::vector<Vec> elements;
  std::vector<ModuleMap> functionals;
};

struct ProjectivityResult {
  CriterionVerdict verdict;
  std::optional<DualBasis> basis;
};
/// Splits B^n -> M on the canonical generators of M (right B-modules).
ProjectivityResult is_fg_projective(const ModulePtr& m);
bool check_dual_basis(const ModulePtr& m, const DualBasis& basis);

/// E_M = Mod_B(M, M) with f g = f o g, and a -> (m -> a m).
struct EndomorphismRing {
  RingPtr ring;
  HomSpace space;
  RingHom i_m;
  /// Ring coordinates of an endomorphism (same as hom-space coordinates).
  ModuleMap element(const Vec& coords) const { return space.map(coords); }
};
/// m must be an (A, B)-bimodule.
EndomorphismRing endomorphism_ring(const ModulePtr& m);

/// M* = Mod_B(M, B) as a (B, A)-bimodule; throws NotProjective.
ModulePtr dual_module(const ModulePtr& m);
/// m -> (f -> f(m)) into Mod_B(M*, B) (left-linear maps); an iso for projective m.
ModuleMap double_dual_evaluation(const ModulePtr& m);

/// Left: X -> Mod_B(M, X (x) M) injective for right modules X over M's left
/// ring. Right: Y -> Mod(M, M (x) Y) injective for left modules Y over M's
/// right ring. No carries the module and a kernel element.
CriterionVerdict totally_faithful_oracle(const ModulePtr& m, PuritySide side, std::uint64_t bound);

struct Theorem41Report {
  CriterionVerdict projective;
  CriterionVerdict separable;
  EndomorphismRing endo;
  ModulePtr dual;
  bool double_dual_iso = false;
  /// (i) M totally faithful as a left A-module.
  CriterionVerdict faithful_left;
  /// (ii) M* totally faithful as a right A-module.
  CriterionVerdict faithful_right;
  /// Purity of i_M, i_M+ and comonadicity along i_M.
  Theorem34Report ring_map;
  /// A = K: the statement specialized to the base ring.
  bool base_case = false;
  bool inconsistent = false;
  Verdict equivalence = Verdict::Yes;
  std::string notes;
};
Theorem41Report theorem_4_1_report(const ModulePtr& m, const Theorem34Options& opt = {});

struct Theorem44Report {
  std::size_t n = 0;
  Theorem34Report ring_map;
  bool inconsistent = false;
};
/// n with r = M_n(K) for K = base_of(r), or 0.
std::size_t matrix_degree(const RingPtr& r);
/// i : M_n(K) -> A; throws InvalidArgument when the source is not a full matrix ring.
Theorem44Report theorem_4_4_report(const RingHom& i, const Theorem34Options& opt = {});

}  // namespace descent_kit
