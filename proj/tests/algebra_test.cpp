#include <gtest/gtest.h>

#include <random>
#include <set>

#include "descent_kit/hom.hpp"

using namespace descent_kit;

namespace {

// Brute force: all additive maps m -> n compatible with the requested actions.
std::uint64_t brute_hom_count(const ModulePtr& m, const ModulePtr& n, bool left, bool right) {
  std::uint64_t count = 0;
  for (const auto& h : enumerate_group_homs(m->group, n->group)) {
    ModuleMap f{m, n, h.images};
    bool ok = true;
    if (left)
      for (std::size_t r = 0; ok && r < m->left->ring->rank(); ++r)
        for (std::size_t j = 0; ok && j < m->rank(); ++j)
          ok = f.apply(m->act_left_gen(r, m->group.basis(j))) == n->act_left_gen(r, f.images[j]);
    if (right)
      for (std::size_t r = 0; ok && r < m->right->ring->rank(); ++r)
        for (std::size_t j = 0; ok && j < m->rank(); ++j)
          ok = f.apply(m->act_right_gen(m->group.basis(j), r)) == n->act_right_gen(f.images[j], r);
    count += ok;
  }
  return count;
}

// Read the canonical generators of M_2(Z/p) as explicit matrices and compare
// the structure constants with genuine matrix multiplication.
bool matrix_table_matches(const FiniteRing& r, std::int64_t p) {
  if (r.rank() != 4) return false;
  auto as_matrix = [&](const Vec& x) { return std::array<std::int64_t, 4>{x[0], x[1], x[2], x[3]}; };
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      auto a = as_matrix(r.gen(i)), b = as_matrix(r.gen(j));
      std::array<std::int64_t, 4> c{};
      for (int u = 0; u < 2; ++u)
        for (int v = 0; v < 2; ++v)
          for (int w = 0; w < 2; ++w) c[u * 2 + v] = (c[u * 2 + v] + a[u * 2 + w] * b[w * 2 + v]) % p;
      if (as_matrix(r.mult[i][j]) != c) return false;
    }
  return true;
}

}  // namespace

TEST(Ring, CyclicRingIsValid) {
  auto z4 = cyclic_ring(4);
  EXPECT_TRUE(validate_ring(*z4).ok());
  EXPECT_EQ(z4->order(), 4u);
  EXPECT_EQ(z4->characteristic(), 4);
}

TEST(Ring, ZeroMultiplicationHasNoUnit) {
  FiniteRing r;
  r.name = "broken";
  r.add = FiniteAbelianGroup({2, 2});
  r.mult.assign(2, std::vector<Vec>(2, Vec{0, 0}));
  r.one = Vec{0, 0};
  auto rep = validate_ring(r);
  ASSERT_FALSE(rep.ok());
  bool unit = false;
  for (const auto& v : rep.violations) unit = unit || v.axiom == "unit";
  EXPECT_TRUE(unit);
}

TEST(Ring, MatrixRingTwoByTwoOverZ2) {
  auto m2 = matrix_ring(cyclic_ring(2), 2);
  EXPECT_TRUE(validate_ring(*m2).ok()) << validate_ring(*m2).to_string();
  EXPECT_EQ(m2->order(), 16u);
  EXPECT_TRUE(matrix_table_matches(*m2, 2));
  EXPECT_EQ(m2->one, (Vec{1, 0, 0, 1}));
  EXPECT_FALSE(m2->is_commutative());
  // Exhaustive associativity over all element triples.
  for (std::uint64_t a = 0; a < 16; ++a)
    for (std::uint64_t b = 0; b < 16; ++b)
      for (std::uint64_t c = 0; c < 16; ++c) {
        Vec x = m2->add.element_at(a), y = m2->add.element_at(b), z = m2->add.element_at(c);
        ASSERT_EQ(m2->mul(m2->mul(x, y), z), m2->mul(x, m2->mul(y, z)));
      }
}

TEST(Ring, NonAssociativeTableIsReported) {
  FiniteRing r = *matrix_ring(cyclic_ring(2), 2);
  r.mult[1][2] = Vec{0, 0, 0, 0};  // E12 E21 should be E11
  auto rep = validate_ring(r);
  ASSERT_FALSE(rep.ok());
  bool assoc = false;
  for (const auto& v : rep.violations) assoc = assoc || v.axiom == "associativity";
  EXPECT_TRUE(assoc);
}

TEST(Ring, StandardConstructionsValidate) {
  std::vector<RingPtr> rings{cyclic_ring(6),
                             matrix_ring(cyclic_ring(3), 2),
                             matrix_ring(cyclic_ring(4), 2),
                             dual_numbers(2),
                             dual_numbers(3),
                             upper_triangular(2),
                             polynomial_quotient_ring(2, Vec{1, 1}),
                             product_ring(cyclic_ring(2), cyclic_ring(2)),
                             product_ring(cyclic_ring(2), cyclic_ring(3)),
                             product_ring(matrix_ring(cyclic_ring(2), 2), matrix_ring(cyclic_ring(2), 2)),
                             opposite_ring(upper_triangular(3)),
                             enveloping_ring(upper_triangular(2)).ring,
                             enveloping_ring(matrix_ring(cyclic_ring(2), 2)).ring};
  for (const auto& r : rings) EXPECT_TRUE(validate_ring(*r).ok()) << r->name << ": " << validate_ring(*r).to_string();
  EXPECT_EQ(matrix_ring(cyclic_ring(3), 2)->order(), 81u);
  EXPECT_TRUE(matrix_table_matches(*matrix_ring(cyclic_ring(3), 2), 3));
  EXPECT_EQ(enveloping_ring(matrix_ring(cyclic_ring(2), 2)).ring->order(), 65536u);
  EXPECT_EQ(matrix_ring(cyclic_ring(5), 1)->order(), 5u);
}

TEST(Ring, GaloisFieldOfOrderFourIsAField) {
  auto f4 = polynomial_quotient_ring(2, Vec{1, 1});
  std::size_t units = 0;
  f4->add.for_each_element([&](const Vec& x) {
    f4->add.for_each_element([&](const Vec& y) {
      units += f4->mul(x, y) == f4->one;
      return true;
    });
    return true;
  });
  EXPECT_EQ(units, 3u);
}

TEST(Ring, StandardHomsValidate) {
  auto z2 = cyclic_ring(2);
  std::vector<RingHom> homs{identity_hom(z2),
                            diagonal_hom(z2),
                            reduction_hom(4, 2),
                            reduction_hom(8, 4),
                            structure_hom(matrix_ring(cyclic_ring(3), 2)),
                            unit_hom(z2, polynomial_quotient_ring(2, Vec{1, 1})),
                            diagonal_hom(matrix_ring(z2, 2))};
  for (const auto& h : homs) EXPECT_TRUE(validate_ring_hom(h).ok()) << validate_ring_hom(h).to_string();
  auto prod = product_ring(z2, cyclic_ring(3));
  EXPECT_TRUE(validate_ring_hom(projection_hom(prod, z2, cyclic_ring(3), true)).ok());
  EXPECT_TRUE(validate_ring_hom(projection_hom(prod, z2, cyclic_ring(3), false)).ok());
  RingHom bad{cyclic_ring(2), cyclic_ring(4), {Vec{2}}};
  EXPECT_FALSE(validate_ring_hom(bad).ok());
}

TEST(Tensor, CoprimeOrdersGiveZero) {
  auto z = cyclic_ring(6);
  auto m = abelian_group_module(z, FiniteAbelianGroup({2}), false, true);
  auto n = abelian_group_module(z, FiniteAbelianGroup({3}), true, false);
  EXPECT_TRUE(tensor_over(m, n).module->group.trivial());
}

TEST(Tensor, GcdOfCyclicGroups) {
  auto z = cyclic_ring(12);
  auto m = abelian_group_module(z, FiniteAbelianGroup({4}), false, true);
  auto n = abelian_group_module(z, FiniteAbelianGroup({6}), true, false);
  EXPECT_EQ(tensor_over(m, n).module->group, FiniteAbelianGroup({2}));
}

TEST(Tensor, UnitLawOverNoncommutativeRings) {
  for (const auto& a : {matrix_ring(cyclic_ring(2), 2), upper_triangular(2), dual_numbers(3)}) {
    auto ra = right_regular(a);
    auto n = direct_sum({left_regular(a), left_regular(a)}).module;
    auto t = tensor_over(ra, n);
    ASSERT_EQ(t.module->group, n->group);
    // a (x) y -> a y is inverse to y -> 1 (x) y, element by element.
    n->group.for_each_element([&](const Vec& y) {
      Vec tv = t.pure(a->one, y);
      Vec back = n->group.zero();
      for (std::size_t s = 0; s < t.module->rank(); ++s)
        for (const auto& term : t.lift[s])
          n->group.axpy(back, term.coef * tv[s], n->act_left(a->gen(term.i), n->group.basis(term.j)));
      EXPECT_EQ(back, y);
      return true;
    });
  }
}

TEST(Tensor, BalancedMapRespectsRelations) {
  auto a = upper_triangular(2);
  auto m = regular_bimodule(a);
  auto t = tensor_over(m, m);
  EXPECT_TRUE(validate_module(*t.module).ok());
  // (x r) (x) y = x (x) (r y) for all elements and ring generators.
  m->group.for_each_element([&](const Vec& x) {
    m->group.for_each_element([&](const Vec& y) {
      for (std::size_t r = 0; r < a->rank(); ++r)
        EXPECT_EQ(t.pure(m->act_right_gen(x, r), y), t.pure(x, m->act_left_gen(r, y)));
      return true;
    });
    return true;
  });
}

TEST(Hom, EvaluationAtOneIdentifiesHomFromRegular) {
  for (const auto& a : {matrix_ring(cyclic_ring(2), 2), upper_triangular(3), cyclic_ring(4)}) {
    auto n = direct_sum({regular_bimodule(a), character_dual(regular_bimodule(a))}).module;
    auto h = hom_right(regular_bimodule(a), n);
    EXPECT_EQ(h.module->group, n->group);
    auto hl = hom_left(regular_bimodule(a), n);
    EXPECT_EQ(hl.module->group, n->group);
    // Evaluation at 1 is a bijection.
    std::set<Vec> values;
    h.module->group.for_each_element([&](const Vec& c) {
      values.insert(h.map(c).apply(a->one));
      return true;
    });
    EXPECT_EQ(values.size(), n->order());
  }
}

TEST(Hom, VectorSpaceMatrices) {
  auto z2 = cyclic_ring(2);
  auto v = abelian_group_module(z2, FiniteAbelianGroup({2, 2}), true, true);
  auto w = abelian_group_module(z2, FiniteAbelianGroup({2, 2, 2}), true, true);
  EXPECT_EQ(hom_right(v, w).size(), 64u);
  EXPECT_EQ(hom_left(v, w).size(), 64u);
}

TEST(Hom, IntegerHomGcd) {
  auto z = cyclic_ring(12);
  auto m = abelian_group_module(z, FiniteAbelianGroup({4}), true, true);
  auto n = abelian_group_module(z, FiniteAbelianGroup({6}), true, true);
  EXPECT_EQ(hom_right(m, n).module->group, FiniteAbelianGroup({2}));
  EXPECT_EQ(hom_left(m, n).module->group, FiniteAbelianGroup({2}));
  EXPECT_EQ(hom_z(m, n).module->group, FiniteAbelianGroup({2}));
}

TEST(Hom, CountsMatchBruteForceAndResidualActionsAreBimodules) {
  std::vector<ModulePtr> mods;
  for (const auto& a : {upper_triangular(2), matrix_ring(cyclic_ring(2), 2), dual_numbers(2)}) {
    auto reg = regular_bimodule(a);
    auto plus = character_dual(reg);
    mods = {reg, plus, direct_sum({reg, plus}).module, zero_module(a, a)};
    for (const auto& m : mods)
      for (const auto& n : mods) {
        std::uint64_t homs = 1;
        for (auto d : m->group.factors())
          for (auto e : n->group.factors()) homs = std::min<std::uint64_t>(homs * gcd64(d, e), 1u << 20);
        if (homs > (1u << 14)) continue;
        auto hr = hom_right(m, n);
        auto hl = hom_left(m, n);
        auto hb = module_homs(m, n);
        EXPECT_EQ(hr.size(), brute_hom_count(m, n, false, true));
        EXPECT_EQ(hl.size(), brute_hom_count(m, n, true, false));
        EXPECT_EQ(hb.size(), brute_hom_count(m, n, true, true));
        EXPECT_TRUE(validate_module(*hr.module).ok()) << validate_module(*hr.module).to_string();
        EXPECT_TRUE(validate_module(*hl.module).ok()) << validate_module(*hl.module).to_string();
        // (a f a')(x) = a f(a' x) on [M, N], (a f a')(x) = f(x a) a' on {M, N}.
        hr.module->group.for_each_element([&](const Vec& c) {
          ModuleMap f = hr.map(c);
          for (std::size_t r = 0; r < a->rank(); ++r) {
            ModuleMap af = hr.map(hr.module->act_left_gen(r, c));
            ModuleMap fa = hr.map(hr.module->act_right_gen(c, r));
            for (std::size_t j = 0; j < m->rank(); ++j) {
              Vec x = m->group.basis(j);
              EXPECT_EQ(af.apply(x), n->act_left_gen(r, f.apply(x)));
              EXPECT_EQ(fa.apply(x), f.apply(m->act_left_gen(r, x)));
            }
          }
          return true;
        });
        hl.module->group.for_each_element([&](const Vec& c) {
          ModuleMap f = hl.map(c);
          for (std::size_t r = 0; r < a->rank(); ++r) {
            ModuleMap af = hl.map(hl.module->act_left_gen(r, c));
            ModuleMap fa = hl.map(hl.module->act_right_gen(c, r));
            for (std::size_t j = 0; j < m->rank(); ++j) {
              Vec x = m->group.basis(j);
              EXPECT_EQ(af.apply(x), f.apply(m->act_right_gen(x, r)));
              EXPECT_EQ(fa.apply(x), n->act_right_gen(f.apply(x), r));
            }
          }
          return true;
        });
      }
  }
}

TEST(Dual, CyclicGroupsAreSelfDual) {
  for (std::int64_t n : {2, 3, 4, 12}) {
    auto m = abelian_group_module(cyclic_ring(n), FiniteAbelianGroup({n}), true, true);
    EXPECT_EQ(character_dual(m)->group, FiniteAbelianGroup({n}));
  }
}

TEST(Dual, MatrixRingDualHasSameOrder) {
  auto a = matrix_ring(cyclic_ring(2), 2);
  auto plus = character_dual(regular_bimodule(a));
  EXPECT_EQ(plus->group, FiniteAbelianGroup({2, 2, 2, 2}));
  EXPECT_TRUE(validate_module(*plus).ok());
}

TEST(Dual, ActionsFollowTheReversedFormula) {
  auto a = upper_triangular(2);
  auto m = regular_bimodule(a);
  auto plus = character_dual(m);
  ASSERT_TRUE(validate_module(*plus).ok());
  // (a f a')(x) = f(a' x a) for all generators and all x.
  plus->group.for_each_element([&](const Vec& f) {
    for (std::size_t r = 0; r < a->rank(); ++r)
      for (std::size_t s = 0; s < a->rank(); ++s) {
        Vec afa = plus->act_right_gen(plus->act_left_gen(r, f), s);
        m->group.for_each_element([&](const Vec& x) {
          Vec moved = m->act_right_gen(m->act_left_gen(s, x), r);
          EXPECT_EQ(evaluate_functional(m->group, afa, x), evaluate_functional(m->group, f, moved));
          return true;
        });
      }
    return true;
  });
}

TEST(Dual, SurjectionDualizesToInjection) {
  auto i = reduction_hom(4, 2);
  auto f = ring_hom_as_module_map(i, 'b');
  auto fp = dual_map(f);
  EXPECT_TRUE(validate_map(fp).ok());
  EXPECT_TRUE(is_injective(fp));
  EXPECT_FALSE(is_surjective(fp));
}

TEST(Dual, DiagonalDualizesToSum) {
  auto z2 = cyclic_ring(2);
  auto m = abelian_group_module(z2, FiniteAbelianGroup({2}), true, true);
  auto n = abelian_group_module(z2, FiniteAbelianGroup({2, 2}), true, true);
  ModuleMap diag{m, n, {Vec{1, 1}}};
  auto fp = dual_map(diag);
  // Both dual generators evaluate to 1/2 on the diagonal element.
  EXPECT_EQ(fp.images, (std::vector<Vec>{Vec{1}, Vec{1}}));
  EXPECT_EQ(dual_map(identity_map(n)).images, identity_map(character_dual(n)).images);
}

TEST(Dual, ContravarianceAndDoubleDual) {
  std::mt19937 rng(17);
  for (const auto& a : {upper_triangular(2), dual_numbers(2), matrix_ring(cyclic_ring(2), 2)}) {
    auto reg = regular_bimodule(a);
    std::vector<ModulePtr> mods{reg, character_dual(reg), direct_sum({reg, character_dual(reg)}).module};
    for (const auto& m : mods) {
      auto dd = double_dual_map(m);
      EXPECT_TRUE(validate_map(dd).ok());
      EXPECT_TRUE(is_iso(dd));
    }
    for (int trial = 0; trial < 10; ++trial) {
      auto x = mods[rng() % mods.size()], y = mods[rng() % mods.size()], z = mods[rng() % mods.size()];
      auto hxy = module_homs(x, y), hyz = module_homs(y, z);
      auto f = hxy.map(hxy.module->group.element_at(rng() % hxy.size()));
      auto g = hyz.map(hyz.module->group.element_at(rng() % hyz.size()));
      auto lhs = dual_map(compose(g, f));
      auto rhs = compose(dual_map(f), dual_map(g));
      EXPECT_EQ(lhs.images, rhs.images);
      EXPECT_TRUE(validate_map(dual_map(f)).ok());
    }
  }
}

TEST(Dual, ExactAndConservativeOnSampledMaps) {
  std::mt19937 rng(23);
  std::size_t isos = 0, non_isos = 0;
  for (const auto& a : {cyclic_ring(4), upper_triangular(2), dual_numbers(2)}) {
    auto reg = regular_bimodule(a);
    std::vector<ModulePtr> mods{reg, character_dual(reg), direct_sum({reg, reg}).module,
                                abelian_group_module(cyclic_ring(2), FiniteAbelianGroup({2}), true, true)};
    if (a->characteristic() != 2) mods.pop_back();
    for (int trial = 0; trial < 15; ++trial) {
      auto x = mods[rng() % mods.size()], y = mods[rng() % mods.size()];
      if (!same_ring(x->left->ring, y->left->ring)) continue;
      auto h = module_homs(x, y);
      ModuleMap f = h.map(h.module->group.element_at(rng() % h.size()));
      // 0 -> ker f -> X -> im f -> 0 dualizes to 0 -> (im f)+ -> X+ -> (ker f)+ -> 0.
      MapClass c = map_classify(f);
      ModuleMap p{x, c.image.module, {}};
      for (const auto& v : f.images) p.images.push_back(*c.image.subgroup.coordinates(v));
      ModulePtr xd = character_dual(x);
      ModuleMap pd = dual_map(p, xd, character_dual(c.image.module));
      ModuleMap id = dual_map(c.kernel.inclusion, character_dual(c.kernel.module), xd);
      EXPECT_TRUE(is_injective(pd));
      EXPECT_TRUE(is_surjective(id));
      EXPECT_EQ(compose(id, pd).images, zero_map(pd.source, id.target).images);
      EXPECT_EQ(pd.source->order() * id.target->order(), xd->order());
      // f is an isomorphism exactly when f+ is.
      EXPECT_EQ(is_iso(f), is_iso(dual_map(f)));
      (is_iso(f) ? isos : non_isos)++;
    }
  }
  EXPECT_GT(isos, 0u);
  EXPECT_GT(non_isos, 0u);
}

TEST(MapClassify, Basics) {
  auto z4 = cyclic_ring(4);
  auto m = abelian_group_module(z4, FiniteAbelianGroup({4}), true, true);
  EXPECT_TRUE(map_classify(identity_map(m)).iso());
  auto zero = map_classify(zero_map(m, m));
  EXPECT_FALSE(zero.injective);
  EXPECT_FALSE(zero.surjective);
  auto twice = map_classify(ModuleMap{m, m, {Vec{2}}});
  EXPECT_EQ(twice.kernel.module->group, FiniteAbelianGroup({2}));
  EXPECT_EQ(twice.image.module->group, FiniteAbelianGroup({2}));
  EXPECT_TRUE(validate_module(*twice.kernel.module).ok());
}

TEST(DirectSumTest, InjectionsAndProjections) {
  auto a = upper_triangular(2);
  auto s = direct_sum({regular_bimodule(a), character_dual(regular_bimodule(a))});
  EXPECT_TRUE(validate_module(*s.module).ok());
  for (std::size_t p = 0; p < 2; ++p) {
    EXPECT_TRUE(validate_map(s.injections[p]).ok());
    EXPECT_TRUE(validate_map(s.projections[p]).ok());
    EXPECT_EQ(compose(s.projections[p], s.injections[p]).images, identity_map(s.injections[p].source).images);
  }
}
