#include <gtest/gtest.h>

#include "descent_kit/endo.hpp"
#include "descent_kit/enumerate.hpp"

using namespace descent_kit;

namespace {

ModulePtr power(const ModulePtr& m, std::size_t n) { return direct_sum(std::vector<ModulePtr>(n, m)).module; }

// Z/2 over A = Z/4 on the left and B = Z/2 on the right.
ModulePtr reduced_bimodule() { return restrict_left(regular_bimodule(cyclic_ring(2)), reduction_hom(4, 2)); }

// Z/2 as a (Z/4, Z/4)-bimodule: not projective on the right.
ModulePtr torsion_bimodule() {
  return abelian_group_module(cyclic_ring(4), FiniteAbelianGroup(Vec{2}), true, true);
}

// Matrix of an endomorphism of K^n on the canonical basis, read into M_n(K).
Vec as_matrix(const ModuleMap& f, const FiniteRing& mn, std::size_t n) {
  Vec out = mn.zero();
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) mn.add.axpy(out, f.images[j][i], mn.gen(n * i + j));
  return out;
}

// E_M matches M_n(K) when reading endomorphisms as matrices is a bijective ring map.
bool matches_matrix_table(const EndomorphismRing& e, const RingPtr& mn, std::size_t n) {
  const auto& g = e.ring->add;
  if (g.order() != mn->order()) return false;
  std::vector<Vec> seen;
  for (std::uint64_t k = 0; k < g.order(); ++k) {
    Vec x = g.element_at(k);
    Vec mx = as_matrix(e.element(x), *mn, n);
    for (std::uint64_t l = 0; l < g.order(); ++l) {
      Vec y = g.element_at(l);
      if (as_matrix(e.element(e.ring->mul(x, y)), *mn, n) != mn->mul(mx, as_matrix(e.element(y), *mn, n)))
        return false;
    }
    seen.push_back(mx);
  }
  std::sort(seen.begin(), seen.end());
  return std::adjacent_find(seen.begin(), seen.end()) == seen.end() &&
         as_matrix(e.element(e.ring->one), *mn, n) == mn->one;
}

}  // namespace

TEST(Projective, Examples) {
  RingPtr b = cyclic_ring(4);
  auto r = is_fg_projective(right_regular(b));
  ASSERT_EQ(r.verdict.verdict, Verdict::Yes);
  ASSERT_EQ(r.basis->elements.size(), 1u);
  EXPECT_EQ(r.basis->elements[0], b->one);
  EXPECT_EQ(r.basis->functionals[0].images, identity_map(right_regular(b)).images);

  auto rr = is_fg_projective(power(right_regular(b), 2));
  ASSERT_EQ(rr.verdict.verdict, Verdict::Yes);
  EXPECT_TRUE(check_dual_basis(power(right_regular(b), 2), *rr.basis));

  ModulePtr z2 = abelian_group_module(b, FiniteAbelianGroup(Vec{2}), false, true);
  EXPECT_EQ(is_fg_projective(z2).verdict.verdict, Verdict::No);
}

TEST(Projective, DualBasisLawOnEnumeratedModules) {
  for (const RingPtr& b : {cyclic_ring(4), upper_triangular(2), product_ring(cyclic_ring(2), cyclic_ring(3))})
    for (const auto& m : enumerate_modules(b, Side::Right, 8)) {
      auto r = is_fg_projective(m);
      if (r.verdict.holds()) EXPECT_TRUE(check_dual_basis(m, *r.basis));
    }
  // Over T_2 the projective indecomposables have orders 2 and 4; the simple top of E_22 is not projective.
  std::size_t projective = 0;
  for (const auto& m : enumerate_module_classes(upper_triangular(2), Side::Right, 4))
    projective += is_fg_projective(m).verdict.holds();
  EXPECT_GE(projective, 2u);
}

TEST(EndomorphismRing, RegularBimodule) {
  RingPtr b = upper_triangular(2);
  auto e = endomorphism_ring(regular_bimodule(b));
  EXPECT_EQ(e.ring->order(), b->order());
  EXPECT_TRUE(validate_ring_hom(e.i_m).ok());
  // i_M is bijective for M = B.
  std::vector<Vec> images;
  for (std::uint64_t k = 0; k < b->order(); ++k) images.push_back(e.i_m.apply(b->add.element_at(k)));
  std::sort(images.begin(), images.end());
  EXPECT_EQ(std::adjacent_find(images.begin(), images.end()), images.end());
}

TEST(EndomorphismRing, MatrixTableMatch) {
  for (std::int64_t p : {2, 3}) {
    RingPtr k = cyclic_ring(p);
    for (std::size_t n : {1u, 2u}) {
      auto e = endomorphism_ring(power(regular_bimodule(k), n));
      EXPECT_TRUE(matches_matrix_table(e, matrix_ring(k, n), n)) << p << " " << n;
      // Scalars go to scalar matrices.
      EXPECT_EQ(as_matrix(e.element(e.i_m.apply(k->one)), *matrix_ring(k, n), n), matrix_ring(k, n)->one);
    }
  }
  auto e = endomorphism_ring(power(regular_bimodule(cyclic_ring(2)), 2));
  EXPECT_EQ(e.ring->order(), 16u);
}

TEST(Dual, Examples) {
  RingPtr b = cyclic_ring(3);
  ModulePtr m = regular_bimodule(b);
  EXPECT_TRUE(find_isomorphism(dual_module(m), m).has_value());
  ModulePtr m2 = power(m, 2);
  EXPECT_TRUE(find_isomorphism(dual_module(m2), m2).has_value());
  EXPECT_THROW(dual_module(torsion_bimodule()), Error);
  for (const ModulePtr& x : {m, m2, regular_bimodule(upper_triangular(2)), power(regular_bimodule(cyclic_ring(4)), 2)})
    EXPECT_TRUE(is_iso(double_dual_evaluation(x)));
}

TEST(TotallyFaithful, Examples) {
  ModulePtr a = regular_bimodule(cyclic_ring(2));
  EXPECT_EQ(totally_faithful_oracle(a, PuritySide::Left, 16).verdict, Verdict::YesUpToBound);

  ModulePtr b = with_actions(restrict_left(regular_bimodule(product_ring(cyclic_ring(2), cyclic_ring(2))),
                                           diagonal_hom(cyclic_ring(2))),
                             true, true);
  auto d = totally_faithful_oracle(b, PuritySide::Left, 16);
  EXPECT_EQ(d.verdict, Verdict::YesUpToBound);
  EXPECT_EQ(d.bound, 16u);

  auto r = totally_faithful_oracle(reduced_bimodule(), PuritySide::Left, 4);
  ASSERT_EQ(r.verdict, Verdict::No);
  EXPECT_EQ(r.module->order(), 4u);
  EXPECT_EQ(*r.element, Vec{2});
}

TEST(Theorem41, BaseRing) {
  auto rep = theorem_4_1_report(regular_bimodule(cyclic_ring(2)), {});
  EXPECT_TRUE(rep.base_case);
  EXPECT_EQ(rep.projective.verdict, Verdict::Yes);
  EXPECT_TRUE(rep.faithful_left.holds());
  EXPECT_TRUE(rep.faithful_right.holds());
  EXPECT_TRUE(rep.ring_map.positive());
  EXPECT_EQ(rep.equivalence, Verdict::Yes);
  EXPECT_FALSE(rep.inconsistent);
}

TEST(Theorem41, FreeOfRankTwo) {
  ModulePtr m = power(regular_bimodule(cyclic_ring(2)), 2);
  auto rep = theorem_4_1_report(m, {});
  EXPECT_TRUE(matches_matrix_table(rep.endo, matrix_ring(cyclic_ring(2), 2), 2));
  EXPECT_EQ(rep.ring_map.left_pure.verdict, Verdict::Yes);
  EXPECT_EQ(rep.ring_map.right_pure.verdict, Verdict::Yes);
  EXPECT_EQ(rep.ring_map.split_dual.verdict, Verdict::Yes);
  EXPECT_EQ(rep.faithful_left.verdict, Verdict::YesUpToBound);
  EXPECT_EQ(rep.faithful_right.verdict, Verdict::YesUpToBound);
  EXPECT_TRUE(rep.ring_map.right_comonadic.overall.holds());
  EXPECT_TRUE(rep.ring_map.left_comonadic.overall.holds());
  EXPECT_TRUE(rep.double_dual_iso);
  EXPECT_EQ(rep.equivalence, Verdict::Yes);
  EXPECT_FALSE(rep.inconsistent);
}

TEST(Theorem41, ReducedBimoduleIsNotFaithful) {
  // B_B is free, so the hypotheses hold and every criterion is negative.
  Theorem34Options opt;
  opt.bound = 4;
  auto rep = theorem_4_1_report(reduced_bimodule(), opt);
  EXPECT_EQ(rep.projective.verdict, Verdict::Yes);
  EXPECT_EQ(rep.faithful_left.verdict, Verdict::No);
  EXPECT_EQ(rep.faithful_right.verdict, Verdict::No);
  EXPECT_FALSE(rep.ring_map.left_pure.holds());
  EXPECT_FALSE(rep.ring_map.split_dual.holds());
  EXPECT_EQ(rep.ring_map.right_comonadic.overall.verdict, Verdict::No);
  EXPECT_EQ(rep.equivalence, Verdict::Yes);
  EXPECT_FALSE(rep.inconsistent);
}

TEST(Theorem41, NotProjective) {
  Theorem34Options opt;
  opt.bound = 4;
  auto rep = theorem_4_1_report(torsion_bimodule(), opt);
  EXPECT_EQ(rep.projective.verdict, Verdict::No);
  EXPECT_EQ(rep.equivalence, Verdict::HypothesisNotMet);
  EXPECT_FALSE(rep.inconsistent);
}

TEST(Theorem44, Examples) {
  RingPtr m2 = matrix_ring(cyclic_ring(2), 2);
  Theorem34Options opt;
  opt.bound = 16;
  auto id = theorem_4_4_report(identity_hom(m2), opt);
  EXPECT_EQ(id.n, 2u);
  EXPECT_TRUE(id.ring_map.positive());
  EXPECT_TRUE(id.ring_map.right_comonadic.overall.holds());
  EXPECT_TRUE(id.ring_map.left_comonadic.overall.holds());
  EXPECT_FALSE(id.inconsistent);

  EXPECT_THROW(theorem_4_4_report(identity_hom(upper_triangular(2)), opt), Error);
  // M_1(K) = K.
  EXPECT_EQ(theorem_4_4_report(identity_hom(cyclic_ring(4)), opt).n, 1u);

  // Modules of M_2 x M_2 on groups of order 16 number in the tens of thousands; bound 8 keeps this quick.
  opt.bound = 8;
  auto d = theorem_4_4_report(diagonal_hom(m2), opt);
  EXPECT_TRUE(d.ring_map.positive());
  EXPECT_TRUE(d.ring_map.right_comonadic.overall.holds());
  EXPECT_FALSE(d.inconsistent);
}
