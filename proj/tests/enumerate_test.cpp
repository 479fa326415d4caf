#include <gtest/gtest.h>

#include <set>

#include "descent_kit/enumerate.hpp"

using namespace descent_kit;

namespace {

using Table = std::vector<std::vector<Vec>>;

// Every additive endomorphism of g, as a column list.
std::vector<std::vector<Vec>> all_endos(const FiniteAbelianGroup& g) {
  std::vector<std::vector<Vec>> out;
  for (const auto& h : enumerate_group_homs(g, g)) out.push_back(h.images);
  return out;
}

// Brute force: try every assignment of endomorphisms to the additive ring
// generators and keep the ones that pass validate_module.
std::set<std::pair<Table, Table>> brute_structures(const RingPtr& left, const RingPtr& right,
                                                   const FiniteAbelianGroup& g) {
  auto endos = all_endos(g);
  std::size_t nl = left ? left->rank() : 0, nr = right ? right->rank() : 0;
  std::set<std::pair<Table, Table>> out;
  std::vector<std::size_t> pick(nl + nr, 0);
  while (true) {
    ModuleRep m;
    m.group = g;
    Table tl, tr;
    for (std::size_t r = 0; r < nl; ++r) tl.push_back(endos[pick[r]]);
    for (std::size_t r = 0; r < nr; ++r) tr.push_back(endos[pick[nl + r]]);
    if (left) m.left = Action{left, tl};
    if (right) m.right = Action{right, tr};
    if (validate_module(m).ok()) out.insert({tl, tr});
    std::size_t e = 0;
    for (; e < pick.size(); ++e) {
      if (++pick[e] < endos.size()) break;
      pick[e] = 0;
    }
    if (e == pick.size()) break;
  }
  return out;
}

std::set<std::pair<Table, Table>> as_tables(const std::vector<ModulePtr>& mods) {
  std::set<std::pair<Table, Table>> out;
  for (const auto& m : mods) out.insert({m->left ? m->left->cols : Table{}, m->right ? m->right->cols : Table{}});
  return out;
}

std::vector<FiniteAbelianGroup> groups_up_to(std::uint64_t n) {
  std::vector<FiniteAbelianGroup> out;
  for (std::uint64_t k = 1; k <= n; ++k)
    for (const auto& g : abelian_groups_of_order(k)) out.push_back(g);
  return out;
}

}  // namespace

TEST(Enumerate, CyclicRingHasOneStructureWhenExponentDivides) {
  for (std::int64_t n : {2, 4, 6})
    for (const auto& g : groups_up_to(8)) {
      std::size_t expect = n % g.exponent() == 0 ? 1 : 0;
      EXPECT_EQ(left_module_structures(cyclic_ring(n), g).size(), expect) << n << " " << g.to_string();
      EXPECT_EQ(right_module_structures(cyclic_ring(n), g).size(), expect);
    }
}

TEST(Enumerate, LeftStructuresMatchBruteForce) {
  std::vector<RingPtr> rings{product_ring(cyclic_ring(2), cyclic_ring(2)), dual_numbers(2), upper_triangular(2),
                             polynomial_quotient_ring(2, {1, 1}, "F4"), cyclic_ring(4)};
  for (const auto& a : rings)
    for (const auto& g : groups_up_to(4)) {
      auto mods = left_module_structures(a, g);
      EXPECT_EQ(as_tables(mods), brute_structures(a, nullptr, g)) << a->name << " on " << g.to_string();
      for (const auto& m : mods) EXPECT_TRUE(validate_module(*m).ok());
    }
}

TEST(Enumerate, RightStructuresMatchBruteForce) {
  for (const auto& a : {upper_triangular(2), dual_numbers(2)})
    for (const auto& g : groups_up_to(4))
      EXPECT_EQ(as_tables(right_module_structures(a, g)), brute_structures(nullptr, a, g)) << a->name;
}

TEST(Enumerate, MatrixRingOnSimpleModule) {
  // Unital homs M_2(F_2) -> End((Z/2)^2) = M_2(F_2) are the 6 automorphisms.
  RingPtr m2 = matrix_ring(cyclic_ring(2), 2);
  FiniteAbelianGroup v({2, 2});
  auto mods = left_module_structures(m2, v);
  EXPECT_EQ(as_tables(mods), brute_structures(m2, nullptr, v));
  EXPECT_EQ(mods.size(), 6u);
  EXPECT_EQ(isomorphism_classes(mods).size(), 1u);
  EXPECT_TRUE(left_module_structures(m2, FiniteAbelianGroup({2})).empty());
  EXPECT_TRUE(left_module_structures(m2, FiniteAbelianGroup({2, 2, 2})).empty());
}

TEST(Enumerate, BimodulesMatchBruteForce) {
  RingPtr a = product_ring(cyclic_ring(2), cyclic_ring(2));
  for (const auto& g : groups_up_to(4)) {
    auto mods = bimodule_structures(a, a, g);
    EXPECT_EQ(as_tables(mods), brute_structures(a, a, g)) << g.to_string();
  }
  RingPtr z4 = cyclic_ring(4), z2 = cyclic_ring(2);
  for (const auto& g : groups_up_to(8))
    EXPECT_EQ(as_tables(bimodule_structures(z4, z2, g)), brute_structures(z4, z2, g)) << g.to_string();
  for (const auto& g : groups_up_to(4))
    EXPECT_EQ(as_tables(bimodule_structures(dual_numbers(2), dual_numbers(2), g)),
              brute_structures(dual_numbers(2), dual_numbers(2), g));
}

TEST(Enumerate, MatrixRingBimodules) {
  RingPtr m2 = matrix_ring(cyclic_ring(2), 2);
  // Bimodules over M_2(F_2) are modules over M_4(F_2): none of order below 16.
  for (const auto& g : groups_up_to(8))
    EXPECT_EQ(bimodule_structures(m2, m2, g).size(), g.trivial() ? 1u : 0u) << g.to_string();
  // Over a product ring the enumerated bimodules include A itself.
  RingPtr a = product_ring(cyclic_ring(2), cyclic_ring(2));
  auto mods = bimodule_structures(a, a, a->add);
  bool found = false;
  for (const auto& m : mods) found = found || find_isomorphism(m, regular_bimodule(a)).has_value();
  EXPECT_TRUE(found);
}

TEST(Enumerate, EnumerateModulesOrdersByGroup) {
  auto mods = enumerate_modules(cyclic_ring(4), Side::Left, 8);
  // Groups of order <= 8 with exponent dividing 4.
  EXPECT_EQ(mods.size(), 6u);
  for (std::size_t i = 1; i < mods.size(); ++i) EXPECT_LE(mods[i - 1]->order(), mods[i]->order());
  EXPECT_EQ(mods.front()->order(), 1u);
}

TEST(Enumerate, IsomorphismClassesOfSemisimpleModules) {
  RingPtr a = product_ring(cyclic_ring(2), cyclic_ring(2));
  // Left modules on (Z/2)^2: S1^2, S1+S2, S2^2 with several structures each.
  auto mods = left_module_structures(a, FiniteAbelianGroup({2, 2}));
  EXPECT_EQ(isomorphism_classes(mods).size(), 3u);
  auto f = find_isomorphism(mods.front(), mods.back());
  if (f) EXPECT_TRUE(validate_map(*f).ok() && is_iso(*f));
}

TEST(Enumerate, StructuresAreDeterministic) {
  auto a = left_module_structures(upper_triangular(2), FiniteAbelianGroup({2, 2}));
  auto b = left_module_structures(upper_triangular(2), FiniteAbelianGroup({2, 2}));
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_TRUE(same_module(*a[i], *b[i]));
}
