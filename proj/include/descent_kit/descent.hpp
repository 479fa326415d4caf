#pragma once

// Extension of scalars along i : A -> B, its comonad on right B-modules,
// descent data (comodules), and a bounded exhaustive comonadicity oracle.
//
// Right modules throughout. The left-module functor B (x)_A - is handled by
// running the same code on the opposite context A^op -> B^op.

#include "descent_kit/hom.hpp"
#include "descent_kit/verdict.hpp"

namespace descent_kit {

class ExtensionContext {
 public:
  explicit ExtensionContext(RingHom i);

  const RingHom& hom() const { return i_; }
  const RingPtr& source() const { return i_.source; }
  const RingPtr& target() const { return i_.target; }
  /// B as an (A, B)-bimodule through i.
  const ModulePtr& b_module() const { return b_; }
  /// The mirrored context A^op -> B^op (left modules become right modules).
  ExtensionContext opposite() const;

 private:
  RingHom i_;
  ModulePtr b_;
};

struct Extension {
  ModulePtr x;
  /// x (x)_A B with its right B-action.
  TensorProduct tensor;
  const ModulePtr& module() const { return tensor.module; }
};

Extension extend(const ModulePtr& x, const ExtensionContext& ctx);
ModulePtr restrict(const ModulePtr& y, const ExtensionContext& ctx);
/// x -> restrict(extend(x)), x -> x (x) 1.
ModuleMap adjunction_unit(const Extension& e, const ExtensionContext& ctx);
ModuleMap extend_map(const ModuleMap& f, const Extension& src, const Extension& dst, const ExtensionContext& ctx);

/// A right B-module y with a coaction rho : y -> y (x)_A B.
struct DescentDatum {
  ModulePtr y;
  /// y (x)_A B, where y is restricted to A.
  TensorProduct yb;
  ModuleMap rho;
};

/// The tensor y (x)_A B used as codomain of a coaction on y.
TensorProduct coaction_target(const ModulePtr& y, const ExtensionContext& ctx);

/// (x (x) B, x (x) b -> (x (x) 1) (x) b).
DescentDatum comparison(const Extension& e, const ExtensionContext& ctx);
/// {y : rho(y) = y (x) 1} as a right A-module, with its inclusion into restrict(y).
Submodule descend(const DescentDatum& d, const ExtensionContext& ctx);

ValidationReport validate_descent_datum(const DescentDatum& d, const ExtensionContext& ctx);

/// All valid data on right B-modules of order <= bound. With classes_only
/// the underlying modules run over isomorphism-class representatives.
std::vector<DescentDatum> enumerate_descent_data(const ExtensionContext& ctx, std::uint64_t bound,
                                                 bool classes_only = false);

/// A B-module isomorphism commuting with the coactions, if any.
std::optional<ModuleMap> datum_isomorphism(const DescentDatum& d1, const DescentDatum& d2, const ExtensionContext& ctx);

/// Sub-verdicts (a) unit-of-comparison, (b) every datum is a comparison image,
/// (c) conservativity, and the overall verdict (YesUpToBound or No).
struct ComonadicityReport {
  CriterionVerdict overall;
  CriterionVerdict unit;
  CriterionVerdict data;
  CriterionVerdict conservative;
  std::size_t modules_checked = 0;
  std::size_t data_checked = 0;
  std::size_t maps_checked = 0;
};

/// Comonadicity of - (x)_A B, verified exhaustively up to the bound.
/// Modules are taken up to isomorphism, which does not change the verdict.
ComonadicityReport comonadicity_oracle(const ExtensionContext& ctx, std::uint64_t bound);

RingHom opposite_hom(const RingHom& i);

}  // namespace descent_kit
