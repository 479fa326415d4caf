#pragma once

// The biclosed structure of (A, A)-bimodules, checked on explicit instances:
// currying bijections, internal hom isomorphisms, and the cyclicity of A+.

#include <string>
#include <vector>

#include "descent_kit/hom.hpp"

namespace descent_kit {

struct StructureReport {
  std::string check;
  std::size_t checked = 0;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

/// V0(X, [Y, Z]), V0(X (x) Y, Z), V0(Y, {X, Z}) with the currying maps
/// checked to be mutually inverse element by element.
struct AdjunctionSizes {
  std::uint64_t x_to_right_hom = 0;
  std::uint64_t from_tensor = 0;
  std::uint64_t y_to_left_hom = 0;
};
StructureReport check_adjunction(const ModulePtr& x, const ModulePtr& y, const ModulePtr& z,
                                 AdjunctionSizes* sizes = nullptr);

/// An explicit isomorphism between two internal hom objects.
struct InternalIso {
  HomSpace lhs;
  HomSpace rhs;
  /// Inner hom used to build rhs ({X, Z} or [Y, Z]).
  HomSpace inner;
  TensorProduct tensor;
  ModuleMap phi;
};
/// {X (x) Y, Z} -> {Y, {X, Z}}, F -> (y -> (x -> F(x (x) y))).
InternalIso left_internal_iso(const ModulePtr& x, const ModulePtr& y, const ModulePtr& z);
/// [X (x) Y, Z] -> [X, [Y, Z]], F -> (x -> (y -> F(x (x) y))).
InternalIso right_internal_iso(const ModulePtr& x, const ModulePtr& y, const ModulePtr& z);

/// Both internal isomorphisms are bimodule isomorphisms.
StructureReport check_internal_iso(const ModulePtr& x, const ModulePtr& y, const ModulePtr& z);

/// Naturality of both internal isomorphisms in one variable. slot 0 or 1:
/// f : X' -> X (resp. Y' -> Y) replaces that argument; slot 2: f : Z -> Z'.
StructureReport check_internal_naturality(const ModulePtr& x, const ModulePtr& y, const ModulePtr& z, int slot,
                                          const ModuleMap& f);

/// {M, A+} -> [M, A+], F -> G with G(m)(a) = F(m a)(1).
struct CyclicIso {
  HomSpace left_hom;
  HomSpace right_hom;
  ModuleMap theta;
};
CyclicIso cyclic_iso(const ModulePtr& m, const ModulePtr& a_plus);
/// The iso is a bimodule isomorphism.
StructureReport check_cyclic_iso(const ModulePtr& m, const ModulePtr& a_plus);
/// Naturality square for f : M' -> M.
StructureReport check_cyclic_naturality(const ModuleMap& f, const ModulePtr& a_plus);

}  // namespace descent_kit
