#include "descent_kit/module.hpp"

namespace descent_kit {

namespace {

std::vector<Integer> to_integers(const Vec& v) { return std::vector<Integer>(v.begin(), v.end()); }

Vec apply_cols(const FiniteAbelianGroup& g, const std::vector<Vec>& cols, const Vec& x) {
  Vec out = g.zero();
  for (std::size_t j = 0; j < x.size(); ++j)
    if (x[j] != 0) g.axpy(out, x[j], cols[j]);
  return out;
}

// Action of an arbitrary ring element as columns.
std::vector<Vec> element_cols(const FiniteAbelianGroup& g, const Action& act, const Vec& a) {
  std::vector<Vec> cols(g.rank(), g.zero());
  for (std::size_t r = 0; r < a.size(); ++r) {
    if (a[r] == 0) continue;
    for (std::size_t j = 0; j < g.rank(); ++j) g.axpy(cols[j], a[r], act.cols[r][j]);
  }
  return cols;
}

bool same_action(const std::optional<Action>& a, const std::optional<Action>& b) {
  if (a.has_value() != b.has_value()) return false;
  if (!a) return true;
  return same_ring(a->ring, b->ring) && a->cols == b->cols;
}

}  // namespace

Vec ModuleRep::act_left(const Vec& a, const Vec& x) const {
  Vec out = group.zero();
  for (std::size_t r = 0; r < a.size(); ++r)
    if (a[r] != 0) group.axpy(out, a[r], act_left_gen(r, x));
  return out;
}

Vec ModuleRep::act_right(const Vec& x, const Vec& a) const {
  Vec out = group.zero();
  for (std::size_t r = 0; r < a.size(); ++r)
    if (a[r] != 0) group.axpy(out, a[r], act_right_gen(x, r));
  return out;
}

Vec ModuleRep::act_left_gen(std::size_t r, const Vec& x) const { return apply_cols(group, left->cols[r], x); }

Vec ModuleRep::act_right_gen(const Vec& x, std::size_t r) const { return apply_cols(group, right->cols[r], x); }

ModulePtr make_module(ModuleRep m) {
  for (auto* act : {&m.left, &m.right})
    if (*act)
      for (auto& row : (*act)->cols)
        for (auto& v : row)
          if (v.size() == m.group.rank()) m.group.reduce(v);
  return std::make_shared<const ModuleRep>(std::move(m));
}

bool same_module(const ModuleRep& a, const ModuleRep& b) {
  return a.group == b.group && same_action(a.left, b.left) && same_action(a.right, b.right);
}

ValidationReport validate_module(const ModuleRep& m) {
  ValidationReport rep;
  auto& vs = rep.violations;
  const auto& g = m.group;
  const std::size_t k = g.rank();
  for (int side = 0; side < 2; ++side) {
    const auto& act = side == 0 ? m.left : m.right;
    if (!act) continue;
    const std::string tag = side == 0 ? "left_" : "right_";
    const FiniteRing& a = *act->ring;
    bool shape_ok = act->cols.size() == a.rank();
    for (const auto& row : act->cols) {
      shape_ok = shape_ok && row.size() == k;
      for (const auto& v : row) shape_ok = shape_ok && v.size() == k;
    }
    if (!shape_ok) {
      vs.push_back({tag + "shape", {}});
      return rep;
    }
    for (std::size_t r = 0; r < a.rank(); ++r)
      for (std::size_t j = 0; j < k; ++j) {
        const Vec& c = act->cols[r][j];
        if (!g.is_zero(g.scale(g.factor(j), c)) || !g.is_zero(g.scale(a.add.factor(r), c)))
          vs.push_back({tag + "well_defined", {r, j}});
      }
    auto one = element_cols(g, *act, a.one);
    for (std::size_t j = 0; j < k; ++j)
      if (one[j] != g.basis(j)) vs.push_back({tag + "unit", {j}});
    for (std::size_t r = 0; r < a.rank(); ++r)
      for (std::size_t s = 0; s < a.rank(); ++s) {
        auto prod = element_cols(g, *act, a.mult[r][s]);
        for (std::size_t j = 0; j < k; ++j) {
          Vec expect = side == 0 ? apply_cols(g, act->cols[r], act->cols[s][j])
                                 : apply_cols(g, act->cols[s], act->cols[r][j]);
          if (prod[j] != expect) vs.push_back({tag + "associativity", {r, s, j}});
        }
      }
  }
  if (m.left && m.right) {
    const FiniteRing& a = *m.left->ring;
    const FiniteRing& b = *m.right->ring;
    for (std::size_t r = 0; r < a.rank(); ++r)
      for (std::size_t s = 0; s < b.rank(); ++s)
        for (std::size_t j = 0; j < k; ++j)
          if (m.act_right_gen(m.left->cols[r][j], s) != m.act_left_gen(r, m.right->cols[s][j]))
            vs.push_back({"bimodule", {r, s, j}});
    RingPtr ka = base_of(m.left->ring), kb = base_of(m.right->ring);
    if (!(is_cyclic_ring(*ka) && is_cyclic_ring(*kb))) {
      if (!same_ring(ka, kb)) {
        vs.push_back({"base_mismatch", {}});
      } else {
        for (std::size_t s = 0; s < ka->rank(); ++s) {
          auto l = element_cols(g, *m.left, base_image(a, ka->gen(s)));
          auto r = element_cols(g, *m.right, base_image(b, ka->gen(s)));
          for (std::size_t j = 0; j < k; ++j)
            if (l[j] != r[j]) vs.push_back({"k_symmetric", {s, j}});
        }
      }
    }
  }
  return rep;
}

Vec ModuleMap::apply(const Vec& x) const { return apply_cols(target->group, images, x); }

ValidationReport validate_map(const ModuleMap& f) {
  ValidationReport rep;
  auto& vs = rep.violations;
  const auto& s = *f.source;
  const auto& t = *f.target;
  if (f.images.size() != s.rank()) {
    vs.push_back({"shape", {}});
    return rep;
  }
  for (std::size_t j = 0; j < s.rank(); ++j) {
    if (f.images[j].size() != t.rank()) {
      vs.push_back({"shape", {j}});
      return rep;
    }
    if (!t.group.is_zero(t.group.scale(s.group.factor(j), f.images[j]))) vs.push_back({"additive", {j}});
  }
  if (s.left && t.left) {
    if (!same_ring(s.left->ring, t.left->ring)) {
      vs.push_back({"left_ring_mismatch", {}});
    } else {
      for (std::size_t r = 0; r < s.left->ring->rank(); ++r)
        for (std::size_t j = 0; j < s.rank(); ++j)
          if (f.apply(s.left->cols[r][j]) != t.act_left_gen(r, f.images[j])) vs.push_back({"left_linear", {r, j}});
    }
  }
  if (s.right && t.right) {
    if (!same_ring(s.right->ring, t.right->ring)) {
      vs.push_back({"right_ring_mismatch", {}});
    } else {
      for (std::size_t r = 0; r < s.right->ring->rank(); ++r)
        for (std::size_t j = 0; j < s.rank(); ++j)
          if (f.apply(s.right->cols[r][j]) != t.act_right_gen(f.images[j], r)) vs.push_back({"right_linear", {r, j}});
    }
  }
  return rep;
}

ModuleMap identity_map(const ModulePtr& m) {
  ModuleMap f{m, m, {}};
  for (std::size_t j = 0; j < m->rank(); ++j) f.images.push_back(m->group.basis(j));
  return f;
}

ModuleMap zero_map(const ModulePtr& source, const ModulePtr& target) {
  return ModuleMap{source, target, std::vector<Vec>(source->rank(), target->group.zero())};
}

ModuleMap compose(const ModuleMap& g, const ModuleMap& f) {
  ModuleMap h{f.source, g.target, {}};
  for (const auto& v : f.images) h.images.push_back(g.apply(v));
  return h;
}

ModuleMap add_maps(const ModuleMap& f, const ModuleMap& g) {
  ModuleMap h = f;
  for (std::size_t j = 0; j < h.images.size(); ++j) h.images[j] = f.target->group.add(f.images[j], g.images[j]);
  return h;
}

ModuleMap sub_maps(const ModuleMap& f, const ModuleMap& g) {
  ModuleMap h = f;
  for (std::size_t j = 0; j < h.images.size(); ++j) h.images[j] = f.target->group.sub(f.images[j], g.images[j]);
  return h;
}

ModulePtr zero_module(RingPtr left, RingPtr right) {
  ModuleRep m;
  m.name = "0";
  if (left) m.left = Action{left, std::vector<std::vector<Vec>>(left->rank())};
  if (right) m.right = Action{right, std::vector<std::vector<Vec>>(right->rank())};
  return make_module(std::move(m));
}

namespace {

Action left_regular_action(const RingPtr& a) {
  Action act{a, std::vector<std::vector<Vec>>(a->rank(), std::vector<Vec>(a->rank()))};
  for (std::size_t r = 0; r < a->rank(); ++r)
    for (std::size_t j = 0; j < a->rank(); ++j) act.cols[r][j] = a->mult[r][j];
  return act;
}

Action right_regular_action(const RingPtr& a) {
  Action act{a, std::vector<std::vector<Vec>>(a->rank(), std::vector<Vec>(a->rank()))};
  for (std::size_t r = 0; r < a->rank(); ++r)
    for (std::size_t j = 0; j < a->rank(); ++j) act.cols[r][j] = a->mult[j][r];
  return act;
}

}  // namespace

ModulePtr abelian_group_module(const RingPtr& zn, const FiniteAbelianGroup& g, bool left, bool right) {
  if (!is_cyclic_ring(*zn)) throw Error(ErrorKind::InvalidArgument, "abelian_group_module needs a cyclic ring");
  if (zn->characteristic() % g.exponent() != 0)
    throw Error(ErrorKind::InvalidArgument, "group exponent does not divide the characteristic");
  ModuleRep m;
  m.name = g.to_string();
  m.group = g;
  Action act{zn, {{}}};
  for (std::size_t j = 0; j < g.rank(); ++j) act.cols[0].push_back(g.basis(j));
  if (left) m.left = act;
  if (right) m.right = act;
  return make_module(std::move(m));
}

ModulePtr regular_bimodule(const RingPtr& a) {
  ModuleRep m;
  m.name = a->name;
  m.group = a->add;
  m.left = left_regular_action(a);
  m.right = right_regular_action(a);
  return make_module(std::move(m));
}

ModulePtr left_regular(const RingPtr& a) { return with_actions(regular_bimodule(a), true, false); }

ModulePtr right_regular(const RingPtr& a) { return with_actions(regular_bimodule(a), false, true); }

ModulePtr with_actions(const ModulePtr& m, bool keep_left, bool keep_right) {
  if ((keep_left || !m->left) && (keep_right || !m->right)) return m;
  ModuleRep out = *m;
  if (!keep_left) out.left.reset();
  if (!keep_right) out.right.reset();
  return make_module(std::move(out));
}

namespace {

Action restrict_action(const ModuleRep& m, const Action& act, const RingHom& i) {
  if (!same_ring(act.ring, i.target)) throw Error(ErrorKind::RingMismatch, "restriction along a hom with another target");
  Action out{i.source, {}};
  for (std::size_t r = 0; r < i.source->rank(); ++r) out.cols.push_back(element_cols(m.group, act, i.images[r]));
  return out;
}

}  // namespace

ModulePtr restrict_left(const ModulePtr& m, const RingHom& i) {
  if (!m->left) throw Error(ErrorKind::RingMismatch, "module has no left action");
  ModuleRep out = *m;
  out.left = restrict_action(*m, *m->left, i);
  return make_module(std::move(out));
}

ModulePtr restrict_right(const ModulePtr& m, const RingHom& i) {
  if (!m->right) throw Error(ErrorKind::RingMismatch, "module has no right action");
  ModuleRep out = *m;
  out.right = restrict_action(*m, *m->right, i);
  return make_module(std::move(out));
}

ModuleMap ring_hom_as_module_map(const RingHom& i, char side) {
  bool l = side == 'l' || side == 'b';
  bool r = side == 'r' || side == 'b';
  ModulePtr src = with_actions(regular_bimodule(i.source), l, r);
  ModulePtr tgt = regular_bimodule(i.target);
  if (l) tgt = restrict_left(tgt, i);
  if (r) tgt = restrict_right(tgt, i);
  tgt = with_actions(tgt, l, r);
  return ModuleMap{src, tgt, i.images};
}

Vec PresentedModule::project(const Vec& ambient) const { return ck.project(to_integers(ambient)); }

Vec PresentedModule::lift(std::size_t t) const {
  Vec out(ck.lift.rows());
  for (std::size_t r = 0; r < out.size(); ++r) out[r] = static_cast<std::int64_t>(ck.lift(r, t));
  return out;
}

PresentedModule module_from_presentation(const Vec& moduli, const std::optional<Action>& left,
                                         const std::optional<Action>& right, std::string name) {
  const std::size_t n = moduli.size();
  IntMatrix rel(n, n);
  for (std::size_t i = 0; i < n; ++i) rel(i, i) = moduli[i];
  PresentedModule p;
  p.ck = cokernel(rel);
  ModuleRep m;
  m.name = std::move(name);
  m.group = p.ck.group;
  auto convert = [&](const Action& act) {
    Action out{act.ring, std::vector<std::vector<Vec>>(act.ring->rank(), std::vector<Vec>(m.group.rank()))};
    for (std::size_t r = 0; r < act.ring->rank(); ++r)
      for (std::size_t t = 0; t < m.group.rank(); ++t) {
        Vec lift = p.lift(t);
        Vec amb(n, 0);
        for (std::size_t j = 0; j < n; ++j)
          if (lift[j] != 0)
            for (std::size_t s = 0; s < n; ++s) amb[s] = mod_floor(amb[s] + lift[j] * act.cols[r][j][s], moduli[s]);
        out.cols[r][t] = p.project(amb);
      }
    return out;
  };
  if (left) m.left = convert(*left);
  if (right) m.right = convert(*right);
  p.module = make_module(std::move(m));
  return p;
}

DirectSum direct_sum(const std::vector<ModulePtr>& parts) {
  Vec moduli;
  std::vector<std::size_t> offset;
  for (const auto& p : parts) {
    offset.push_back(moduli.size());
    moduli.insert(moduli.end(), p->group.factors().begin(), p->group.factors().end());
  }
  const std::size_t n = moduli.size();
  auto sum_action = [&](bool left) -> std::optional<Action> {
    std::optional<Action> first = left ? parts.at(0)->left : parts.at(0)->right;
    if (!first) return std::nullopt;
    Action act{first->ring, std::vector<std::vector<Vec>>(first->ring->rank(), std::vector<Vec>(n, Vec(n, 0)))};
    for (std::size_t p = 0; p < parts.size(); ++p) {
      const auto& a = left ? parts[p]->left : parts[p]->right;
      if (!a || !same_ring(a->ring, first->ring)) throw Error(ErrorKind::RingMismatch, "direct sum over different rings");
      for (std::size_t r = 0; r < act.cols.size(); ++r)
        for (std::size_t j = 0; j < parts[p]->rank(); ++j)
          for (std::size_t s = 0; s < parts[p]->rank(); ++s) act.cols[r][offset[p] + j][offset[p] + s] = a->cols[r][j][s];
    }
    return act;
  };
  if (parts.empty()) throw Error(ErrorKind::InvalidArgument, "empty direct sum");
  std::string name;
  for (const auto& p : parts) name += (name.empty() ? "" : " + ") + p->name;
  PresentedModule pm = module_from_presentation(moduli, sum_action(true), sum_action(false), name);
  DirectSum out;
  out.module = pm.module;
  for (std::size_t p = 0; p < parts.size(); ++p) {
    ModuleMap inj{parts[p], pm.module, {}};
    for (std::size_t j = 0; j < parts[p]->rank(); ++j) {
      Vec amb(n, 0);
      amb[offset[p] + j] = 1;
      inj.images.push_back(pm.project(amb));
    }
    ModuleMap proj{pm.module, parts[p], {}};
    for (std::size_t t = 0; t < pm.module->rank(); ++t) {
      Vec lift = pm.lift(t);
      Vec img(parts[p]->rank());
      for (std::size_t j = 0; j < img.size(); ++j) img[j] = lift[offset[p] + j];
      proj.images.push_back(parts[p]->group.reduced(img));
    }
    out.injections.push_back(std::move(inj));
    out.projections.push_back(std::move(proj));
  }
  return out;
}

Submodule submodule(const ModulePtr& m, const Subgroup& s) {
  ModuleRep sub;
  sub.name = m->name + "_sub";
  sub.group = s.group();
  const std::size_t k = sub.group.rank();
  auto restrict = [&](const Action& act, bool left) {
    Action out{act.ring, std::vector<std::vector<Vec>>(act.ring->rank(), std::vector<Vec>(k))};
    for (std::size_t r = 0; r < act.ring->rank(); ++r)
      for (std::size_t t = 0; t < k; ++t) {
        Vec x = s.generators()[t];
        Vec y = left ? m->act_left_gen(r, x) : m->act_right_gen(x, r);
        auto c = s.coordinates(y);
        if (!c) throw Error(ErrorKind::InvalidArgument, "subgroup is not a submodule");
        out.cols[r][t] = *c;
      }
    return out;
  };
  if (m->left) sub.left = restrict(*m->left, true);
  if (m->right) sub.right = restrict(*m->right, false);
  Submodule out;
  out.module = make_module(std::move(sub));
  out.inclusion = ModuleMap{out.module, m, s.generators()};
  out.subgroup = s;
  return out;
}

MapClass map_classify(const ModuleMap& f) {
  MapClass c;
  const auto& src = f.source->group;
  const auto& tgt = f.target->group;
  Subgroup ker = Subgroup::kernel(src.factors(), tgt.factors(), f.images);
  Subgroup im = Subgroup::generated_by(tgt.factors(), f.images);
  c.injective = ker.group().trivial();
  c.surjective = im.group() == tgt;
  c.kernel = submodule(f.source, ker);
  c.image = submodule(f.target, im);
  return c;
}

namespace {

// Small sources: look for a nonzero element in the kernel directly.
constexpr std::uint64_t kDirectKernelScan = 1024;

bool scan_injective(const ModuleMap& f) {
  bool injective = true;
  const auto& g = f.source->group;
  g.for_each_element([&](const Vec& x) {
    if (!g.is_zero(x) && f.target->group.is_zero(f.apply(x))) injective = false;
    return injective;
  });
  return injective;
}

}  // namespace

bool is_injective(const ModuleMap& f) {
  if (f.source->group.exact_order() <= kDirectKernelScan) return scan_injective(f);
  return Subgroup::kernel(f.source->group.factors(), f.target->group.factors(), f.images).group().trivial();
}

bool is_surjective(const ModuleMap& f) {
  return Subgroup::generated_by(f.target->group.factors(), f.images).group() == f.target->group;
}

bool is_iso(const ModuleMap& f) { return f.source->group == f.target->group && is_injective(f); }

LinearSolve solve_linear(const FiniteAbelianGroup& domain, const Vec& target_moduli, const std::vector<Vec>& images,
                         const Vec& rhs) {
  const std::size_t k = domain.rank(), rows = target_moduli.size();
  IntMatrix m(rows, k);
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = images[j][i];
  LinearSolve out;
  auto sol = solve_congruences(m, to_integers(rhs), to_integers(target_moduli));
  if (!sol) return out;
  Vec base(k);
  for (std::size_t j = 0; j < k; ++j) base[j] = static_cast<std::int64_t>(sol->particular[j] % domain.factor(j));
  domain.reduce(base);
  for (std::size_t c = 0; c < sol->homogeneous.cols(); ++c) {
    Vec g(k);
    for (std::size_t j = 0; j < k; ++j) g[j] = static_cast<std::int64_t>(sol->homogeneous(j, c) % domain.factor(j));
    domain.reduce(g);
    if (!domain.is_zero(g)) out.kernel.push_back(g);
  }
  out.solution = lexmin_in_coset(domain, base, out.kernel);
  return out;
}

}  // namespace descent_kit
