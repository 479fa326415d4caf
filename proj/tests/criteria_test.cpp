#include <gtest/gtest.h>

#include "descent_kit/criteria.hpp"
#include "descent_kit/enumerate.hpp"

using namespace descent_kit;

namespace {

ModuleMap diag_map(char side) { return ring_hom_as_module_map(diagonal_hom(cyclic_ring(2)), side); }
ModuleMap reduction_map(char side) { return ring_hom_as_module_map(reduction_hom(4, 2), side); }

// x -> 2x from Z/2 to Z/4, as modules over Z/4.
ModuleMap times_two() {
  RingPtr z4 = cyclic_ring(4);
  ModulePtr s = abelian_group_module(z4, FiniteAbelianGroup(Vec{2}), true, false);
  ModulePtr t = left_regular(z4);
  return ModuleMap{s, t, {Vec{2}}};
}

// Every candidate map in the hom space, checked against the defining equation.
bool brute_split_epi(const ModuleMap& g) {
  for (const auto& s : enumerate_maps(module_homs(g.target, g.source)))
    if (compose(g, s).images == identity_map(g.target).images) return true;
  return false;
}

bool brute_split_mono(const ModuleMap& f) {
  for (const auto& r : enumerate_maps(module_homs(f.target, f.source)))
    if (compose(r, f).images == identity_map(f.source).images) return true;
  return false;
}

}  // namespace

TEST(SplitEpi, Identity) {
  ModulePtr a = regular_bimodule(cyclic_ring(3));
  auto v = is_split_epi(identity_map(a));
  ASSERT_EQ(v.verdict, Verdict::Yes);
  EXPECT_EQ(v.map->images, identity_map(a).images);
}

TEST(SplitEpi, ProjectionFromSum) {
  ModulePtr a = regular_bimodule(cyclic_ring(2));
  DirectSum s = direct_sum({a, a});
  auto v = is_split_epi(s.projections[0]);
  ASSERT_EQ(v.verdict, Verdict::Yes);
  EXPECT_EQ(compose(s.projections[0], *v.map).images, identity_map(a).images);
}

TEST(SplitEpi, ReductionIsNot) {
  ModuleMap g = reduction_map('b');
  EXPECT_EQ(is_split_epi(g).verdict, Verdict::No);
  EXPECT_FALSE(brute_split_epi(g));
  EXPECT_EQ(enumerate_maps(module_homs(g.target, g.source)).size(), 2u);
}

TEST(SplitMono, Examples) {
  ModulePtr a = left_regular(cyclic_ring(2));
  EXPECT_EQ(is_split_mono(identity_map(a)).verdict, Verdict::Yes);

  ModuleMap d = diag_map('l');
  auto v = is_split_mono(d);
  ASSERT_EQ(v.verdict, Verdict::Yes);
  EXPECT_EQ(compose(*v.map, d).images, identity_map(d.source).images);

  ModuleMap t = times_two();
  EXPECT_EQ(is_split_mono(t).verdict, Verdict::No);
  EXPECT_FALSE(brute_split_mono(t));
}

TEST(SplitEpi, AgreesWithBruteForceOnSmallModules) {
  for (const RingPtr& a : {cyclic_ring(4), upper_triangular(2), dual_numbers(2)}) {
    auto mods = enumerate_modules(a, Side::Left, 4);
    for (std::size_t i = 0; i < mods.size(); ++i)
      for (std::size_t j = 0; j < mods.size(); ++j)
        for (const auto& f : enumerate_maps(module_homs(mods[i], mods[j]))) {
          auto e = is_split_epi(f);
          EXPECT_EQ(e.holds(), brute_split_epi(f));
          if (e.holds()) EXPECT_EQ(compose(f, *e.map).images, identity_map(f.target).images);
          EXPECT_EQ(is_split_mono(f).holds(), brute_split_mono(f));
        }
  }
}

TEST(Purity, OracleExamples) {
  RingPtr z2 = cyclic_ring(2);
  EXPECT_EQ(purity_oracle(identity_map(left_regular(z2)), PuritySide::Left, 8).verdict, Verdict::YesUpToBound);

  auto red = purity_oracle(reduction_map('l'), PuritySide::Left, 4);
  ASSERT_EQ(red.verdict, Verdict::No);
  ASSERT_TRUE(red.module);
  EXPECT_EQ(red.module->order(), 4u);
  EXPECT_TRUE(find_isomorphism(red.module, right_regular(cyclic_ring(4))).has_value());

  auto d = purity_oracle(diag_map('l'), PuritySide::Left, 16);
  EXPECT_EQ(d.verdict, Verdict::YesUpToBound);
  EXPECT_EQ(d.bound, 16u);
}

TEST(Purity, ReductionWitnessIsRegularModule) {
  // i (x) A = i has a kernel, and A is the first order-4 candidate that fails.
  ModuleMap i = reduction_map('l');
  RingPtr z4 = cyclic_ring(4);
  ModulePtr a = right_regular(z4);
  TensorProduct s = tensor_over(a, with_actions(i.source, true, false));
  TensorProduct t = tensor_over(a, with_actions(i.target, true, false));
  ModuleMap ai = tensor_maps(identity_map(a), ModuleMap{with_actions(i.source, true, false),
                                                        with_actions(i.target, true, false), i.images},
                             s, t);
  EXPECT_FALSE(is_injective(ai));
  EXPECT_EQ(purity_oracle(i, PuritySide::Left, 4).verdict, Verdict::No);
}

TEST(Purity, ExactAgreesWithOracle) {
  std::vector<RingHom> homs = {identity_hom(cyclic_ring(2)), diagonal_hom(cyclic_ring(2)), reduction_hom(4, 2),
                               unit_hom(cyclic_ring(2), dual_numbers(2)), unit_hom(cyclic_ring(2), upper_triangular(2)),
                               reduction_hom(9, 3)};
  for (const auto& i : homs)
    for (PuritySide side : {PuritySide::Left, PuritySide::Right}) {
      ModuleMap f = ring_hom_as_module_map(i, side == PuritySide::Left ? 'l' : 'r');
      auto exact = is_pure(f, side);
      std::uint64_t bound = i.source->order() * i.target->order();
      auto oracle = purity_oracle(f, side, std::min<std::uint64_t>(bound, 16));
      EXPECT_EQ(exact.holds(), oracle.holds()) << i.target->name << " " << to_string(side);
      if (exact.holds()) EXPECT_EQ(compose(*exact.map, f).images, identity_map(f.source).images);
    }
}

TEST(Separability, BaseRing) {
  auto r = separability_idempotent(cyclic_ring(5));
  ASSERT_EQ(r.verdict.verdict, Verdict::Yes);
  EXPECT_EQ(*r.verdict.element, r.env.tensor.pure(cyclic_ring(5)->one, cyclic_ring(5)->one));
}

TEST(Separability, MatrixRing) {
  RingPtr m = matrix_ring(cyclic_ring(3), 2);
  auto r = separability_idempotent(m);
  ASSERT_EQ(r.verdict.verdict, Verdict::Yes);
  EXPECT_TRUE(is_separability_idempotent(r.env, *r.verdict.element));

  // Row-major E_11, E_12, E_21, E_22 survive canonicalization for Z/3 coefficients.
  auto e = [&](int i, int j) { return m->gen(2 * i + j); };
  ASSERT_EQ(m->mul(e(0, 0), e(0, 1)), e(0, 1));
  ASSERT_EQ(m->mul(e(1, 0), e(0, 0)), e(1, 0));
  const auto& g = r.env.tensor.module->group;
  Vec classical = g.add(r.env.tensor.pure(e(0, 0), e(0, 0)), r.env.tensor.pure(e(1, 0), e(0, 1)));
  EXPECT_TRUE(is_separability_idempotent(r.env, classical));
  EXPECT_FALSE(is_separability_idempotent(r.env, r.env.tensor.pure(m->one, m->one)));
}

TEST(Separability, DualNumbersAreNot) {
  RingPtr a = dual_numbers(2);
  auto r = separability_idempotent(a);
  EXPECT_EQ(r.verdict.verdict, Verdict::No);
  const auto& g = r.env.tensor.module->group;
  ASSERT_EQ(g.order(), 16u);
  for (std::uint64_t k = 0; k < g.order(); ++k) EXPECT_FALSE(is_separability_idempotent(r.env, g.element_at(k)));
}

TEST(Separability, ProductsAndTriangular) {
  RingPtr z2 = cyclic_ring(2);
  EXPECT_EQ(separability_idempotent(product_ring(z2, z2)).verdict.verdict, Verdict::Yes);
  EXPECT_EQ(separability_idempotent(upper_triangular(2)).verdict.verdict, Verdict::No);
  EXPECT_EQ(separability_idempotent(cyclic_ring(4)).verdict.verdict, Verdict::Yes);
}

TEST(CharacterMap, Examples) {
  RingPtr z3 = cyclic_ring(3);
  ModuleMap id = character_map_of(identity_hom(z3));
  EXPECT_TRUE(is_iso(id));
  EXPECT_EQ(is_split_epi(id).verdict, Verdict::Yes);

  ModuleMap sum = character_map_of(diagonal_hom(cyclic_ring(2)));
  EXPECT_TRUE(validate_map(sum).ok());
  EXPECT_EQ(sum.source->order(), 4u);
  // Every functional on Z/2 x Z/2 restricts along the diagonal to the sum of its values.
  const auto& bg = sum.source->group;
  std::size_t nonzero = 0;
  for (std::uint64_t k = 0; k < bg.order(); ++k) nonzero += !sum.target->group.is_zero(sum.apply(bg.element_at(k)));
  EXPECT_EQ(nonzero, 2u);
  EXPECT_EQ(is_split_epi(sum).verdict, Verdict::Yes);

  ModuleMap red = character_map_of(reduction_hom(4, 2));
  EXPECT_TRUE(is_injective(red));
  EXPECT_FALSE(is_surjective(red));
  EXPECT_EQ(is_split_epi(red).verdict, Verdict::No);
}

TEST(Theorem23, Examples) {
  ModulePtr a = regular_bimodule(cyclic_ring(2));
  auto id = theorem_2_3_check(identity_map(a), 8);
  EXPECT_EQ(id.hypothesis.verdict, Verdict::Yes);
  for (const auto* c : id.conditions()) EXPECT_TRUE(c->holds()) << c->id;
  EXPECT_TRUE(id.consistent);

  auto d = theorem_2_3_check(diag_map('b'), 8);
  for (const auto* c : d.conditions()) EXPECT_TRUE(c->holds()) << c->id;
  EXPECT_TRUE(d.consistent);

  auto r = theorem_2_3_check(reduction_map('b'), 8);
  for (const auto* c : r.conditions()) EXPECT_FALSE(c->holds()) << c->id;
  EXPECT_TRUE(r.consistent);
}

TEST(Theorem23, NonSeparableReportsHypothesis) {
  ModuleMap f = identity_map(regular_bimodule(dual_numbers(2)));
  auto rep = theorem_2_3_check(f, 4);
  EXPECT_EQ(rep.hypothesis.verdict, Verdict::HypothesisNotMet);
  EXPECT_TRUE(rep.consistent);
}

TEST(Theorem34, Examples) {
  Theorem34Options opt;
  opt.bound = 4;
  auto id = theorem_3_4_report(identity_hom(cyclic_ring(2)), opt);
  EXPECT_EQ(id.separable.verdict, Verdict::Yes);
  EXPECT_TRUE(id.positive());
  EXPECT_TRUE(id.right_comonadic.overall.holds());
  EXPECT_TRUE(id.left_comonadic.overall.holds());
  EXPECT_EQ(id.equivalence, Verdict::Yes);
  EXPECT_FALSE(id.inconsistent);

  auto d = theorem_3_4_report(diagonal_hom(cyclic_ring(2)), opt);
  EXPECT_TRUE(d.positive());
  EXPECT_TRUE(d.left_pure_oracle.holds());
  EXPECT_TRUE(d.right_pure_oracle.holds());
  EXPECT_TRUE(d.right_comonadic.overall.holds());
  EXPECT_TRUE(d.left_comonadic.overall.holds());
  EXPECT_FALSE(d.inconsistent);

  auto r = theorem_3_4_report(reduction_hom(4, 2), opt);
  EXPECT_EQ(r.separable.verdict, Verdict::Yes);
  EXPECT_FALSE(r.left_pure.holds());
  EXPECT_FALSE(r.right_pure.holds());
  EXPECT_FALSE(r.split_dual.holds());
  EXPECT_EQ(r.left_pure_oracle.verdict, Verdict::No);
  EXPECT_EQ(r.right_pure_oracle.verdict, Verdict::No);
  EXPECT_EQ(r.right_comonadic.overall.verdict, Verdict::No);
  EXPECT_EQ(r.left_comonadic.overall.verdict, Verdict::No);
  EXPECT_FALSE(r.inconsistent);
  EXPECT_EQ(r.equivalence, Verdict::Yes);
}

TEST(Theorem34, NonSeparableSource) {
  Theorem34Options opt;
  opt.bound = 4;
  auto rep = theorem_3_4_report(unit_hom(cyclic_ring(2), dual_numbers(2)), opt);
  EXPECT_EQ(rep.separable.verdict, Verdict::Yes);
  RingHom i{dual_numbers(2), dual_numbers(2), identity_hom(dual_numbers(2)).images};
  auto ns = theorem_3_4_report(i, opt);
  EXPECT_EQ(ns.separable.verdict, Verdict::No);
  EXPECT_EQ(ns.equivalence, Verdict::HypothesisNotMet);
  EXPECT_TRUE(ns.positive());
  EXPECT_FALSE(ns.inconsistent);
}
