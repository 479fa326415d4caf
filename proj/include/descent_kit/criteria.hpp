#pragma once

// Decision procedures: split epi/mono, purity (exact and by enumeration),
// separability idempotents, the character map i+, and the consistency
// reports tying them to the descent oracle.

#include "descent_kit/descent.hpp"
#include "descent_kit/hom.hpp"
#include "descent_kit/verdict.hpp"

namespace descent_kit {

/// Yes with a section s (g s = id), lexicographically least; No otherwise.
CriterionVerdict is_split_epi(const ModuleMap& g);
/// Yes with a retraction r (r f = id), lexicographically least; No otherwise.
CriterionVerdict is_split_mono(const ModuleMap& f);

/// Side::Left: f as a map of left modules, tested against X (x) f for right
/// modules X. Side::Right: f as a map of right modules, tested against f (x) L.
enum class PuritySide { Left, Right };
const char* to_string(PuritySide s);

/// Exact: pure iff split mono on that side (finite modules are pure-injective).
CriterionVerdict is_pure(const ModuleMap& f, PuritySide side);
/// Tensor against every module (up to isomorphism) of order <= bound on the
/// opposite side; No carries the witness module and a kernel element.
CriterionVerdict purity_oracle(const ModuleMap& f, PuritySide side, std::uint64_t bound);

/// A (x)_K A as an (A, A)-bimodule with the multiplication map.
struct EnvelopingTensor {
  TensorProduct tensor;
  ModuleMap mu;
};
EnvelopingTensor enveloping_tensor(const RingPtr& a);

/// e in A (x)_K A with mu(e) = 1 and a e = e a; witness validated by substitution.
struct SeparabilityResult {
  CriterionVerdict verdict;
  EnvelopingTensor env;
};
SeparabilityResult separability_idempotent(const RingPtr& a);
/// Substitution check of a candidate idempotent.
bool is_separability_idempotent(const EnvelopingTensor& env, const Vec& e);

/// i+ : B+ -> A+ as a map of (A, A)-bimodules (B restricted along i).
ModuleMap character_map_of(const RingHom& i);

/// Five conditions for a bimodule map f : X -> Y with Q = A+.
struct Theorem23Report {
  CriterionVerdict hypothesis;  // A projective as a bimodule (A separable)
  CriterionVerdict left_pure;   // oracle over bimodules Z: Z (x) f injective
  CriterionVerdict right_pure;  // oracle: f (x) Z injective
  CriterionVerdict q_tensor_f;  // [[X, Q]] (x) f injective
  CriterionVerdict f_tensor_q;  // f (x) [[X, Q]] injective
  CriterionVerdict split_dual;  // [[f, Q]] split epi
  bool consistent = true;
  std::string notes;
  std::vector<const CriterionVerdict*> conditions() const {
    return {&left_pure, &right_pure, &q_tensor_f, &f_tensor_q, &split_dual};
  }
};
Theorem23Report theorem_2_3_check(const ModuleMap& f, std::uint64_t bound);

/// All criteria for i : A -> B.
struct Theorem34Report {
  CriterionVerdict separable;
  CriterionVerdict left_pure;
  CriterionVerdict left_pure_oracle;
  CriterionVerdict right_pure;
  CriterionVerdict right_pure_oracle;
  CriterionVerdict split_dual;
  /// - (x)_A B on right modules.
  ComonadicityReport right_comonadic;
  /// B (x)_A - on left modules.
  ComonadicityReport left_comonadic;
  std::uint64_t bound = 0;
  /// A negative oracle answer contradicts an exact positive one.
  bool inconsistent = false;
  /// Equivalence verdict: Yes when all agree, HypothesisNotMet without separability.
  Verdict equivalence = Verdict::Yes;
  std::string notes;
  /// Conjunction of the exact criteria (i)-(iii).
  bool positive() const { return left_pure.holds() && right_pure.holds() && split_dual.holds(); }
};
struct Theorem34Options {
  std::uint64_t bound = 16;
  /// Bound for the purity oracles (default: min(bound, |A| |B|)).
  std::uint64_t purity_bound = 0;
  bool run_oracles = true;
};
Theorem34Report theorem_3_4_report(const RingHom& i, const Theorem34Options& opt = {});

}  // namespace descent_kit
