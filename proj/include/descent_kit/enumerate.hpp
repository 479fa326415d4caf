#pragma once

// Exhaustive enumeration of module structures on small abelian groups.
//
// A left A-module structure on L is a ring hom A -> End(L). The search fixes
// images of a small set of ring generators, pruned by the polynomial
// relations each generator satisfies, and checks the relations among words
// in the generators level by level.

#include "descent_kit/module.hpp"

namespace descent_kit {

/// Every left module structure of `ring` on g (structures, not classes).
std::vector<ModulePtr> left_module_structures(const RingPtr& ring, const FiniteAbelianGroup& g);
std::vector<ModulePtr> right_module_structures(const RingPtr& ring, const FiniteAbelianGroup& g);
/// K-symmetric (a, b)-bimodule structures on g.
std::vector<ModulePtr> bimodule_structures(const RingPtr& a, const RingPtr& b, const FiniteAbelianGroup& g);

enum class Side { Left, Right, Bi };

/// All structures on all abelian groups of order <= bound, ordered by
/// group order then group then enumeration order. For Side::Bi the ring acts
/// on both sides.
std::vector<ModulePtr> enumerate_modules(const RingPtr& ring, Side side, std::uint64_t bound);

/// An isomorphism of modules (linear for every common action), if any.
std::optional<ModuleMap> find_isomorphism(const ModulePtr& x, const ModulePtr& y);
/// One representative per isomorphism class, in first-seen order.
std::vector<ModulePtr> isomorphism_classes(const std::vector<ModulePtr>& mods);

/// Isomorphism-class representatives of the structures on one group (cached).
std::vector<ModulePtr> module_classes(const RingPtr& ring, Side side, const FiniteAbelianGroup& g);
/// Class representatives on all groups of order <= bound. Any check that is
/// invariant under module isomorphism gives the same answer on these as on
/// the full structure list.
std::vector<ModulePtr> enumerate_module_classes(const RingPtr& ring, Side side, std::uint64_t bound);

/// Ring generators used by the enumerator (elements of `ring`).
std::vector<Vec> ring_generators(const RingPtr& ring);

}  // namespace descent_kit
