#include "descent_kit/structure.hpp"

#include <functional>

namespace descent_kit {

namespace {

void expect(StructureReport& rep, bool cond, const std::string& what) {
  ++rep.checked;
  if (!cond) rep.failures.push_back(what);
}

void expect_bimodule_iso(StructureReport& rep, const ModuleMap& f, const std::string& what) {
  expect(rep, validate_map(f).ok(), what + ": not a bimodule map");
  expect(rep, is_iso(f), what + ": not bijective");
}

// Value of F : X (x) Y -> Z on x_i (x) y_j.
Vec on_pair(const TensorProduct& t, const ModuleMap& f, std::size_t i, std::size_t j) { return f.apply(t.pair[i][j]); }

// Map on T = X (x) Y from values on generator pairs.
std::vector<Vec> from_pairs(const TensorProduct& t, const FiniteAbelianGroup& z,
                            const std::function<Vec(std::size_t, std::size_t)>& value) {
  std::vector<Vec> out;
  for (const auto& terms : t.lift) {
    Vec v = z.zero();
    for (const auto& term : terms) z.axpy(v, term.coef, value(term.i, term.j));
    out.push_back(v);
  }
  return out;
}

// The curried form of F as images of the outer generators, each an element of `inner`.
std::optional<std::vector<Vec>> curry(const TensorProduct& t, const ModuleMap& f, const HomSpace& inner, bool over_x) {
  const std::size_t kx = t.left_factor->rank(), ky = t.right_factor->rank();
  std::vector<Vec> outer;
  for (std::size_t o = 0; o < (over_x ? kx : ky); ++o) {
    std::vector<Vec> imgs;
    for (std::size_t n = 0; n < (over_x ? ky : kx); ++n) imgs.push_back(over_x ? on_pair(t, f, o, n) : on_pair(t, f, n, o));
    auto c = inner.coords(imgs);
    if (!c) return std::nullopt;
    outer.push_back(*c);
  }
  return outer;
}

std::vector<Vec> uncurry(const TensorProduct& t, const std::vector<Vec>& outer, const HomSpace& inner, bool over_x) {
  std::vector<std::vector<Vec>> inner_imgs;
  for (const auto& c : outer) inner_imgs.push_back(inner.images(c));
  return from_pairs(t, inner.target->group, [&](std::size_t i, std::size_t j) {
    return over_x ? inner_imgs[i][j] : inner_imgs[j][i];
  });
}

InternalIso build_internal(const ModulePtr& x, const ModulePtr& y, const ModulePtr& z, bool left) {
  TensorProduct t = tensor_over(x, y);
  HomSpace lhs = left ? hom_left(t.module, z) : hom_right(t.module, z);
  HomSpace inner = left ? hom_left(x, z) : hom_right(y, z);
  HomSpace rhs = left ? hom_left(y, inner.module) : hom_right(x, inner.module);
  ModuleMap phi{lhs.module, rhs.module, {}};
  for (std::size_t s = 0; s < lhs.module->rank(); ++s) {
    ModuleMap f = lhs.map(lhs.module->group.basis(s));
    auto outer = curry(t, f, inner, !left);
    if (!outer) throw Error(ErrorKind::InvalidArgument, "curried map leaves the inner hom");
    auto c = rhs.coords(*outer);
    if (!c) throw Error(ErrorKind::InvalidArgument, "curried map leaves the outer hom");
    phi.images.push_back(*c);
  }
  return InternalIso{std::move(lhs), std::move(rhs), std::move(inner), std::move(t), std::move(phi)};
}

}  // namespace

StructureReport check_adjunction(const ModulePtr& x, const ModulePtr& y, const ModulePtr& z, AdjunctionSizes* sizes) {
  StructureReport rep{"adjunction", 0, {}};
  TensorProduct t = tensor_over(x, y);
  HomSpace yz = hom_right(y, z), xz = hom_left(x, z);
  HomSpace h_tensor = module_homs(t.module, z);
  HomSpace h_x = module_homs(x, yz.module);
  HomSpace h_y = module_homs(y, xz.module);
  if (sizes) *sizes = {h_x.size(), h_tensor.size(), h_y.size()};
  expect(rep, h_x.size() == h_tensor.size(), "|V0(X,[Y,Z])| != |V0(X(x)Y,Z)|");
  expect(rep, h_y.size() == h_tensor.size(), "|V0(Y,{X,Z})| != |V0(X(x)Y,Z)|");
  for (const auto& f : enumerate_maps(h_tensor)) {
    for (bool over_x : {true, false}) {
      const HomSpace& inner = over_x ? yz : xz;
      const HomSpace& outer_space = over_x ? h_x : h_y;
      auto outer = curry(t, f, inner, over_x);
      expect(rep, outer.has_value(), "curried map leaves the inner hom");
      if (!outer) continue;
      ModuleMap g{outer_space.source, outer_space.target, *outer};
      expect(rep, validate_map(g).ok() && outer_space.coords(g).has_value(), "curried map is not a bimodule map");
      expect(rep, uncurry(t, *outer, inner, over_x) == f.images, "uncurry(curry(F)) != F");
    }
  }
  for (bool over_x : {true, false}) {
    const HomSpace& inner = over_x ? yz : xz;
    const HomSpace& outer_space = over_x ? h_x : h_y;
    for (const auto& g : enumerate_maps(outer_space)) {
      ModuleMap f{t.module, z, uncurry(t, g.images, inner, over_x)};
      expect(rep, validate_map(f).ok(), "uncurried map is not a bimodule map");
      // The uncurried map must agree with g on every generator pair.
      bool agrees = true;
      for (std::size_t i = 0; i < x->rank(); ++i)
        for (std::size_t j = 0; j < y->rank(); ++j) {
          Vec want = over_x ? inner.images(g.images[i])[j] : inner.images(g.images[j])[i];
          agrees = agrees && on_pair(t, f, i, j) == want;
        }
      expect(rep, agrees, "uncurried map disagrees on generator pairs");
      auto back = curry(t, f, inner, over_x);
      expect(rep, back && *back == g.images, "curry(uncurry(G)) != G");
    }
  }
  return rep;
}

InternalIso left_internal_iso(const ModulePtr& x, const ModulePtr& y, const ModulePtr& z) {
  return build_internal(x, y, z, true);
}

InternalIso right_internal_iso(const ModulePtr& x, const ModulePtr& y, const ModulePtr& z) {
  return build_internal(x, y, z, false);
}

StructureReport check_internal_iso(const ModulePtr& x, const ModulePtr& y, const ModulePtr& z) {
  StructureReport rep{"internal_iso", 0, {}};
  expect_bimodule_iso(rep, left_internal_iso(x, y, z).phi, "{X(x)Y,Z} -> {Y,{X,Z}}");
  expect_bimodule_iso(rep, right_internal_iso(x, y, z).phi, "[X(x)Y,Z] -> [X,[Y,Z]]");
  return rep;
}

StructureReport check_internal_naturality(const ModulePtr& x, const ModulePtr& y, const ModulePtr& z, int slot,
                                          const ModuleMap& f) {
  StructureReport rep{"internal_naturality", 0, {}};
  ModulePtr x2 = slot == 0 ? f.source : x;
  ModulePtr y2 = slot == 1 ? f.source : y;
  ModulePtr z2 = slot == 2 ? f.target : z;
  for (bool left : {true, false}) {
    InternalIso a = build_internal(x, y, z, left);
    InternalIso b = build_internal(x2, y2, z2, left);
    // Induced maps go from the spaces at (x, y, z) to the spaces at (x2, y2, z2).
    ModuleMap lhs_map, rhs_map;
    if (slot == 2) {
      lhs_map = postcompose_map(a.lhs, b.lhs, f);
      rhs_map = postcompose_map(a.rhs, b.rhs, postcompose_map(a.inner, b.inner, f));
    } else {
      ModuleMap fx = slot == 0 ? f : identity_map(x);
      ModuleMap fy = slot == 1 ? f : identity_map(y);
      lhs_map = precompose_map(a.lhs, b.lhs, tensor_maps(fx, fy, b.tensor, a.tensor));
      bool inner_slot = left ? slot == 0 : slot == 1;
      rhs_map = inner_slot ? postcompose_map(a.rhs, b.rhs, precompose_map(a.inner, b.inner, f))
                           : precompose_map(a.rhs, b.rhs, f);
    }
    expect(rep, compose(b.phi, lhs_map) == compose(rhs_map, a.phi),
           std::string(left ? "{-,-}" : "[-,-]") + " naturality in slot " + std::to_string(slot));
  }
  return rep;
}

CyclicIso cyclic_iso(const ModulePtr& m, const ModulePtr& a_plus) {
  HomSpace lh = hom_left(m, a_plus);
  HomSpace rh = hom_right(m, a_plus);
  const FiniteRing& a = *m->right->ring;
  ModuleMap theta{lh.module, rh.module, {}};
  for (std::size_t s = 0; s < lh.module->rank(); ++s) {
    ModuleMap f = lh.map(lh.module->group.basis(s));
    std::vector<Vec> g_imgs;
    for (std::size_t j = 0; j < m->rank(); ++j) {
      std::vector<std::pair<std::int64_t, std::int64_t>> values;
      for (std::size_t l = 0; l < a.rank(); ++l) {
        Vec fm = f.apply(m->act_right_gen(m->group.basis(j), l));
        values.push_back(evaluate_functional(a.add, fm, a.one));
      }
      g_imgs.push_back(functional_coords(a_plus->group, values));
    }
    auto c = rh.coords(g_imgs);
    if (!c) throw Error(ErrorKind::InvalidArgument, "cyclic transform is not right linear");
    theta.images.push_back(*c);
  }
  return CyclicIso{std::move(lh), std::move(rh), std::move(theta)};
}

StructureReport check_cyclic_iso(const ModulePtr& m, const ModulePtr& a_plus) {
  StructureReport rep{"cyclic_iso", 0, {}};
  expect_bimodule_iso(rep, cyclic_iso(m, a_plus).theta, "{M,A+} -> [M,A+]");
  return rep;
}

StructureReport check_cyclic_naturality(const ModuleMap& f, const ModulePtr& a_plus) {
  StructureReport rep{"cyclic_naturality", 0, {}};
  CyclicIso at_m = cyclic_iso(f.target, a_plus);
  CyclicIso at_src = cyclic_iso(f.source, a_plus);
  ModuleMap left_pre = precompose_map(at_m.left_hom, at_src.left_hom, f);
  ModuleMap right_pre = precompose_map(at_m.right_hom, at_src.right_hom, f);
  expect(rep, compose(at_src.theta, left_pre) == compose(right_pre, at_m.theta), "cyclic iso naturality");
  return rep;
}

}  // namespace descent_kit
