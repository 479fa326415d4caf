#include "descent_kit/hom.hpp"

#include <functional>
#include <numeric>

namespace descent_kit {

namespace {

enum class Residual { None, RightHom, LeftHom };

HomSpace build_hom(const ModulePtr& m, const ModulePtr& n, bool left_linear, bool right_linear, Residual residual) {
  const auto& d = m->group.factors();
  const auto& e = n->group.factors();
  const std::size_t ks = d.size(), kt = e.size();
  Vec param(ks * kt);
  for (std::size_t i = 0; i < ks; ++i)
    for (std::size_t j = 0; j < kt; ++j) param[i * kt + j] = gcd64(d[i], e[j]);

  struct Constraint {
    bool left;
    std::size_t r;
  };
  std::vector<Constraint> cons;
  if (left_linear) {
    if (!m->left || !n->left || !same_ring(m->left->ring, n->left->ring))
      throw Error(ErrorKind::RingMismatch, "left-linear maps need a common left ring");
    for (std::size_t r = 0; r < m->left->ring->rank(); ++r) cons.push_back({true, r});
  }
  if (right_linear) {
    if (!m->right || !n->right || !same_ring(m->right->ring, n->right->ring))
      throw Error(ErrorKind::RingMismatch, "right-linear maps need a common right ring");
    for (std::size_t r = 0; r < m->right->ring->rank(); ++r) cons.push_back({false, r});
  }

  HomSpace h;
  h.source = m;
  h.target = n;
  if (cons.empty()) {
    h.sub = Subgroup::whole(param);
  } else {
    Vec target_moduli;
    for (std::size_t c = 0; c < cons.size() * ks; ++c) target_moduli.insert(target_moduli.end(), e.begin(), e.end());
    std::vector<Vec> images(ks * kt);
    for (std::size_t i0 = 0; i0 < ks; ++i0)
      for (std::size_t j0 = 0; j0 < kt; ++j0) {
        const std::int64_t c = e[j0] / param[i0 * kt + j0];
        Vec fx = n->group.zero();
        fx[j0] = c;  // f(g_i0)
        Vec img;
        img.reserve(target_moduli.size());
        for (const auto& con : cons) {
          Vec r_fx = con.left ? n->act_left_gen(con.r, fx) : n->act_right_gen(fx, con.r);
          for (std::size_t i = 0; i < ks; ++i) {
            Vec gi = m->group.basis(i);
            Vec rg = con.left ? m->act_left_gen(con.r, gi) : m->act_right_gen(gi, con.r);
            Vec defect = n->group.scale(rg[i0], fx);
            if (i == i0) defect = n->group.sub(defect, r_fx);
            img.insert(img.end(), defect.begin(), defect.end());
          }
        }
        images[i0 * kt + j0] = std::move(img);
      }
    h.sub = Subgroup::kernel(param, target_moduli, images);
  }

  ModuleRep rep;
  rep.name = "Hom(" + m->name + ", " + n->name + ")";
  rep.group = h.sub.group();
  h.module = make_module(rep);  // provisional, so images()/coords() work below
  auto residual_action = [&](const RingPtr& ring, auto&& transform) {
    Action act{ring, std::vector<std::vector<Vec>>(ring->rank(), std::vector<Vec>(rep.group.rank()))};
    for (std::size_t r = 0; r < ring->rank(); ++r)
      for (std::size_t t = 0; t < rep.group.rank(); ++t) {
        ModuleMap f = h.map(rep.group.basis(t));
        std::vector<Vec> img(ks);
        for (std::size_t i = 0; i < ks; ++i) img[i] = transform(f, r, i);
        auto c = h.coords(img);
        if (!c) throw Error(ErrorKind::InvalidArgument, "residual action leaves the hom space");
        act.cols[r][t] = *c;
      }
    return act;
  };
  if (residual == Residual::RightHom) {
    if (n->left)
      rep.left = residual_action(n->left->ring, [&](const ModuleMap& f, std::size_t r, std::size_t i) {
        return n->act_left_gen(r, f.images[i]);
      });
    if (m->left)
      rep.right = residual_action(m->left->ring, [&](const ModuleMap& f, std::size_t r, std::size_t i) {
        return f.apply(m->act_left_gen(r, m->group.basis(i)));
      });
  } else if (residual == Residual::LeftHom) {
    if (m->right)
      rep.left = residual_action(m->right->ring, [&](const ModuleMap& f, std::size_t r, std::size_t i) {
        return f.apply(m->act_right_gen(m->group.basis(i), r));
      });
    if (n->right)
      rep.right = residual_action(n->right->ring, [&](const ModuleMap& f, std::size_t r, std::size_t i) {
        return n->act_right_gen(f.images[i], r);
      });
  }
  h.module = make_module(std::move(rep));
  return h;
}

}  // namespace

std::vector<Vec> HomSpace::images(const Vec& coords) const {
  const auto& d = source->group.factors();
  const auto& e = target->group.factors();
  const std::size_t ks = d.size(), kt = e.size();
  Vec p = sub.embed(coords);
  std::vector<Vec> out(ks, target->group.zero());
  for (std::size_t i = 0; i < ks; ++i)
    for (std::size_t j = 0; j < kt; ++j) out[i][j] = mod_floor(p[i * kt + j] * (e[j] / gcd64(d[i], e[j])), e[j]);
  return out;
}

std::optional<Vec> HomSpace::coords(const std::vector<Vec>& images) const {
  const auto& d = source->group.factors();
  const auto& e = target->group.factors();
  const std::size_t ks = d.size(), kt = e.size();
  if (images.size() != ks) return std::nullopt;
  Vec p(ks * kt);
  for (std::size_t i = 0; i < ks; ++i)
    for (std::size_t j = 0; j < kt; ++j) {
      const std::int64_t g = gcd64(d[i], e[j]);
      const std::int64_t step = e[j] / g;
      const std::int64_t c = mod_floor(images[i][j], e[j]);
      if (c % step != 0) return std::nullopt;
      p[i * kt + j] = c / step;
    }
  return sub.coordinates(p);
}

ModuleMap HomSpace::map(const Vec& coords) const { return ModuleMap{source, target, images(coords)}; }

HomSpace hom_space(const ModulePtr& m, const ModulePtr& n, bool left_linear, bool right_linear) {
  return build_hom(m, n, left_linear, right_linear, Residual::None);
}

HomSpace hom_right(const ModulePtr& m, const ModulePtr& n) { return build_hom(m, n, false, true, Residual::RightHom); }

HomSpace hom_left(const ModulePtr& m, const ModulePtr& n) { return build_hom(m, n, true, false, Residual::LeftHom); }

HomSpace module_homs(const ModulePtr& m, const ModulePtr& n) {
  bool l = m->left && n->left;
  bool r = m->right && n->right;
  return build_hom(m, n, l, r, Residual::None);
}

HomSpace hom_z(const ModulePtr& m, const ModulePtr& n) { return build_hom(m, n, false, false, Residual::None); }

namespace {

ModuleMap induced_map(const HomSpace& from, const HomSpace& to, const std::function<ModuleMap(const ModuleMap&)>& op) {
  ModuleMap out{from.module, to.module, {}};
  for (std::size_t t = 0; t < from.module->rank(); ++t) {
    auto c = to.coords(op(from.map(from.module->group.basis(t))));
    if (!c) throw Error(ErrorKind::InvalidArgument, "composite leaves the target hom space");
    out.images.push_back(*c);
  }
  return out;
}

}  // namespace

ModuleMap precompose_map(const HomSpace& from, const HomSpace& to, const ModuleMap& f) {
  return induced_map(from, to, [&](const ModuleMap& h) {
    ModuleMap c = compose(h, f);
    c.source = to.source;
    c.target = to.target;
    return c;
  });
}

ModuleMap postcompose_map(const HomSpace& from, const HomSpace& to, const ModuleMap& g) {
  return induced_map(from, to, [&](const ModuleMap& h) {
    ModuleMap c = compose(g, h);
    c.source = to.source;
    c.target = to.target;
    return c;
  });
}

std::vector<ModuleMap> enumerate_maps(const HomSpace& h, std::uint64_t cap) {
  const auto& g = h.module->group;
  if (g.exact_order() > cap) throw Error(ErrorKind::SizeLimitExceeded, "hom space larger than the enumeration cap");
  std::vector<ModuleMap> out;
  out.reserve(g.order());
  g.for_each_element([&](const Vec& c) {
    out.push_back(h.map(c));
    return true;
  });
  return out;
}

Vec TensorProduct::pure(const Vec& x, const Vec& y) const {
  Vec out = module->group.zero();
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < y.size(); ++j)
      if (y[j] != 0) module->group.axpy(out, x[i] * y[j], pair[i][j]);
  }
  return out;
}

TensorProduct tensor_over(const ModulePtr& m, const ModulePtr& n) {
  if (!m->right || !n->left || !same_ring(m->right->ring, n->left->ring))
    throw Error(ErrorKind::RingMismatch, "tensor product needs M right and N left over the same ring");
  const std::size_t km = m->rank(), kn = n->rank(), amb = km * kn;
  const FiniteRing& a = *m->right->ring;
  auto col = [&](std::size_t i, std::size_t j) { return i * kn + j; };
  std::vector<std::vector<Integer>> cols;
  for (std::size_t i = 0; i < km; ++i)
    for (std::size_t j = 0; j < kn; ++j) {
      std::vector<Integer> c(amb, 0);
      c[col(i, j)] = gcd64(m->group.factor(i), n->group.factor(j));
      cols.push_back(std::move(c));
    }
  for (std::size_t r = 0; r < a.rank(); ++r)
    for (std::size_t i = 0; i < km; ++i)
      for (std::size_t j = 0; j < kn; ++j) {
        const Vec& gr = m->right->cols[r][i];
        const Vec& rh = n->left->cols[r][j];
        std::vector<Integer> c(amb, 0);
        for (std::size_t u = 0; u < km; ++u) c[col(u, j)] += gr[u];
        for (std::size_t u = 0; u < kn; ++u) c[col(i, u)] -= rh[u];
        bool nonzero = false;
        for (const auto& x : c) nonzero = nonzero || x != 0;
        if (nonzero) cols.push_back(std::move(c));
      }
  IntMatrix rel(amb, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c)
    for (std::size_t r = 0; r < amb; ++r) rel(r, c) = cols[c][r];
  Cokernel ck = cokernel(rel);

  TensorProduct t;
  t.left_factor = m;
  t.right_factor = n;
  ModuleRep rep;
  rep.name = m->name + " (x) " + n->name;
  rep.group = ck.group;
  t.module = make_module(rep);
  t.pair.assign(km, std::vector<Vec>(kn));
  for (std::size_t i = 0; i < km; ++i)
    for (std::size_t j = 0; j < kn; ++j) {
      std::vector<Integer> e(amb, 0);
      e[col(i, j)] = 1;
      t.pair[i][j] = ck.project(e);
    }
  const std::size_t k = rep.group.rank();
  t.lift.resize(k);
  for (std::size_t s = 0; s < k; ++s)
    for (std::size_t c = 0; c < amb; ++c) {
      auto v = static_cast<std::int64_t>(ck.lift(c, s));
      if (v != 0) t.lift[s].push_back({c / kn, c % kn, v});
    }
  if (m->left) {
    Action act{m->left->ring, std::vector<std::vector<Vec>>(m->left->ring->rank(), std::vector<Vec>(k))};
    for (std::size_t r = 0; r < act.cols.size(); ++r)
      for (std::size_t s = 0; s < k; ++s) {
        Vec v = rep.group.zero();
        for (const auto& term : t.lift[s])
          rep.group.axpy(v, term.coef, t.pure(m->left->cols[r][term.i], n->group.basis(term.j)));
        act.cols[r][s] = v;
      }
    rep.left = std::move(act);
  }
  if (n->right) {
    Action act{n->right->ring, std::vector<std::vector<Vec>>(n->right->ring->rank(), std::vector<Vec>(k))};
    for (std::size_t r = 0; r < act.cols.size(); ++r)
      for (std::size_t s = 0; s < k; ++s) {
        Vec v = rep.group.zero();
        for (const auto& term : t.lift[s])
          rep.group.axpy(v, term.coef, t.pure(m->group.basis(term.i), n->right->cols[r][term.j]));
        act.cols[r][s] = v;
      }
    rep.right = std::move(act);
  }
  t.module = make_module(std::move(rep));
  return t;
}

ModuleMap tensor_maps(const ModuleMap& f, const ModuleMap& g, const TensorProduct& src, const TensorProduct& dst) {
  ModuleMap h{src.module, dst.module, {}};
  for (const auto& terms : src.lift) {
    Vec v = dst.module->group.zero();
    for (const auto& term : terms) dst.module->group.axpy(v, term.coef, dst.pure(f.images[term.i], g.images[term.j]));
    h.images.push_back(v);
  }
  return h;
}

std::pair<std::int64_t, std::int64_t> evaluate_functional(const FiniteAbelianGroup& g, const Vec& c, const Vec& x) {
  const std::int64_t e = g.exponent();
  __int128 num = 0;
  for (std::size_t l = 0; l < g.rank(); ++l) num += static_cast<__int128>(x[l]) * c[l] * (e / g.factor(l));
  std::int64_t n = static_cast<std::int64_t>(((num % e) + e) % e);
  std::int64_t q = std::gcd(n, e);
  return {n / q, e / q};
}

Vec functional_coords(const FiniteAbelianGroup& g, const std::vector<std::pair<std::int64_t, std::int64_t>>& values) {
  Vec c(g.rank());
  for (std::size_t l = 0; l < g.rank(); ++l) {
    auto [num, den] = values[l];
    __int128 scaled = static_cast<__int128>(num) * g.factor(l);
    if (scaled % den != 0) throw Error(ErrorKind::InvalidArgument, "functional value incompatible with generator order");
    c[l] = mod_floor(static_cast<std::int64_t>(scaled / den), g.factor(l));
  }
  return c;
}

ModulePtr character_dual(const ModulePtr& m) {
  const auto& g = m->group;
  const std::size_t k = g.rank();
  ModuleRep rep;
  rep.name = m->name + "+";
  rep.group = g;
  auto dual_action = [&](const Action& src, bool from_right) {
    Action act{src.ring, std::vector<std::vector<Vec>>(src.ring->rank(), std::vector<Vec>(k))};
    for (std::size_t r = 0; r < act.cols.size(); ++r)
      for (std::size_t t = 0; t < k; ++t) {
        std::vector<std::pair<std::int64_t, std::int64_t>> values(k);
        for (std::size_t l = 0; l < k; ++l) {
          Vec moved = from_right ? m->act_right_gen(g.basis(l), r) : m->act_left_gen(r, g.basis(l));
          values[l] = evaluate_functional(g, g.basis(t), moved);
        }
        act.cols[r][t] = functional_coords(g, values);
      }
    return act;
  };
  // (b f)(x) = f(x b): the right ring of M acts on the left of M+, and vice versa.
  if (m->right) rep.left = dual_action(*m->right, true);
  if (m->left) rep.right = dual_action(*m->left, false);
  return make_module(std::move(rep));
}

ModuleMap dual_map(const ModuleMap& f) { return dual_map(f, character_dual(f.source), character_dual(f.target)); }

ModuleMap dual_map(const ModuleMap& f, const ModulePtr& source_dual, const ModulePtr& target_dual) {
  const auto& gm = f.source->group;
  const auto& gn = f.target->group;
  ModuleMap out{target_dual, source_dual, {}};
  for (std::size_t t = 0; t < gn.rank(); ++t) {
    std::vector<std::pair<std::int64_t, std::int64_t>> values(gm.rank());
    for (std::size_t i = 0; i < gm.rank(); ++i) values[i] = evaluate_functional(gn, gn.basis(t), f.images[i]);
    out.images.push_back(functional_coords(gm, values));
  }
  return out;
}

ModuleMap double_dual_map(const ModulePtr& m) {
  ModulePtr plus = character_dual(m);
  ModulePtr plus_plus = character_dual(plus);
  const auto& g = m->group;
  ModuleMap out{m, plus_plus, {}};
  for (std::size_t j = 0; j < g.rank(); ++j) {
    std::vector<std::pair<std::int64_t, std::int64_t>> values(g.rank());
    for (std::size_t t = 0; t < g.rank(); ++t) values[t] = evaluate_functional(g, g.basis(t), g.basis(j));
    out.images.push_back(functional_coords(plus->group, values));
  }
  return out;
}

}  // namespace descent_kit
