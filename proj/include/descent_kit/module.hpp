#pragma once

// Finite one-sided modules and bimodules over finite rings, and their maps.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "descent_kit/ring.hpp"

namespace descent_kit {

/// A ring acting on a module: cols[r][j] is the action of ring generator r
/// on module generator j (r * g_j for a left action, g_j * r for a right one).
struct Action {
  RingPtr ring;
  std::vector<std::vector<Vec>> cols;
};

struct ModuleRep {
  std::string name;
  FiniteAbelianGroup group;
  std::optional<Action> left;
  std::optional<Action> right;

  std::size_t rank() const { return group.rank(); }
  std::uint64_t order() const { return group.order(); }
  /// a * x for a ring element a.
  Vec act_left(const Vec& a, const Vec& x) const;
  /// x * a for a ring element a.
  Vec act_right(const Vec& x, const Vec& a) const;
  Vec act_left_gen(std::size_t r, const Vec& x) const;
  Vec act_right_gen(const Vec& x, std::size_t r) const;
};

using ModulePtr = std::shared_ptr<const ModuleRep>;

ModulePtr make_module(ModuleRep m);
/// Structural equality: same group, same rings, same action tables.
bool same_module(const ModuleRep& a, const ModuleRep& b);

ValidationReport validate_module(const ModuleRep& m);

struct ModuleMap {
  ModulePtr source;
  ModulePtr target;
  std::vector<Vec> images;

  Vec apply(const Vec& x) const;
  bool operator==(const ModuleMap& o) const { return images == o.images; }
};

/// Additivity plus compatibility with every action present on both ends.
ValidationReport validate_map(const ModuleMap& f);

ModuleMap identity_map(const ModulePtr& m);
ModuleMap zero_map(const ModulePtr& source, const ModulePtr& target);
ModuleMap compose(const ModuleMap& g, const ModuleMap& f);
ModuleMap add_maps(const ModuleMap& f, const ModuleMap& g);
ModuleMap sub_maps(const ModuleMap& f, const ModuleMap& g);

ModulePtr zero_module(RingPtr left, RingPtr right);
/// An abelian group g as a module over a cyclic ring Z/n (n must kill g).
ModulePtr abelian_group_module(const RingPtr& zn, const FiniteAbelianGroup& g, bool left, bool right);
/// A as an (A, A)-bimodule.
ModulePtr regular_bimodule(const RingPtr& a);
ModulePtr left_regular(const RingPtr& a);
ModulePtr right_regular(const RingPtr& a);
/// Drop actions that are not requested.
ModulePtr with_actions(const ModulePtr& m, bool keep_left, bool keep_right);
/// Restrict scalars along i: A -> B on the chosen side(s).
ModulePtr restrict_left(const ModulePtr& m, const RingHom& i);
ModulePtr restrict_right(const ModulePtr& m, const RingHom& i);
/// The map underlying a ring hom, between regular modules restricted along it.
/// side: 'l' left A-modules, 'r' right A-modules, 'b' (A,A)-bimodules.
ModuleMap ring_hom_as_module_map(const RingHom& i, char side);

/// Module on sum Z/moduli (any moduli) with action columns in those coordinates.
struct PresentedModule {
  ModulePtr module;
  Cokernel ck;
  Vec project(const Vec& ambient) const;
  Vec lift(std::size_t t) const;
};
PresentedModule module_from_presentation(const Vec& moduli, const std::optional<Action>& left,
                                         const std::optional<Action>& right, std::string name = "");

struct DirectSum {
  ModulePtr module;
  std::vector<ModuleMap> injections;
  std::vector<ModuleMap> projections;
};
DirectSum direct_sum(const std::vector<ModulePtr>& parts);

/// Submodule carried by an ambient subgroup of m (must be action-stable).
struct Submodule {
  ModulePtr module;
  ModuleMap inclusion;
  Subgroup subgroup;
};
Submodule submodule(const ModulePtr& m, const Subgroup& s);

struct MapClass {
  bool injective = false;
  bool surjective = false;
  bool iso() const { return injective && surjective; }
  Submodule kernel;
  Submodule image;
};
MapClass map_classify(const ModuleMap& f);
bool is_injective(const ModuleMap& f);
bool is_surjective(const ModuleMap& f);
bool is_iso(const ModuleMap& f);

/// Solutions of L(x) = rhs for x in `domain`, where L sends generator j to
/// images[j] in sum Z/target_moduli. Returns the lexicographically least
/// solution in canonical coordinates, or nullopt.
struct LinearSolve {
  std::optional<Vec> solution;
  /// Generators of the solution set's direction (kernel of L), canonical coords.
  std::vector<Vec> kernel;
};
LinearSolve solve_linear(const FiniteAbelianGroup& domain, const Vec& target_moduli, const std::vector<Vec>& images,
                         const Vec& rhs);

}  // namespace descent_kit
