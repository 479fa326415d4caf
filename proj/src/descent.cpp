#include "descent_kit/descent.hpp"

#include "descent_kit/enumerate.hpp"

namespace descent_kit {

namespace {

ModulePtr right_only(const ModulePtr& m, const RingPtr& ring) {
  if (!m->right || !same_ring(m->right->ring, ring))
    throw Error(ErrorKind::RingMismatch, "expected a right module over " + ring->name);
  return with_actions(m, false, true);
}

// Additive map on x (x) B given by its values on generator pairs (x_i, b_j).
std::vector<Vec> on_tensor(const TensorProduct& t, const FiniteAbelianGroup& target,
                           const std::function<Vec(std::size_t, std::size_t)>& value) {
  std::vector<Vec> out;
  for (const auto& terms : t.lift) {
    Vec v = target.zero();
    for (const auto& term : terms) target.axpy(v, term.coef, value(term.i, term.j));
    out.push_back(v);
  }
  return out;
}

// y (x) b -> y b.
ModuleMap action_map(const DescentDatum& d) {
  const auto& b = *d.y->right->ring;
  return ModuleMap{d.yb.module, d.y, on_tensor(d.yb, d.y->group, [&](std::size_t i, std::size_t j) {
                     return d.y->act_right(d.y->group.basis(i), b.gen(j));
                   })};
}

// y -> y (x) 1.
std::vector<Vec> insert_one(const ModulePtr& y, const TensorProduct& yb, const Vec& one) {
  std::vector<Vec> out;
  for (std::size_t s = 0; s < y->rank(); ++s) out.push_back(yb.pure(y->group.basis(s), one));
  return out;
}

// (rho (x) B) rho = (y (x) delta) rho, with y (x) B (x) B built once per y.
class CoassociativityCheck {
 public:
  CoassociativityCheck(const ModulePtr& y, const TensorProduct& yb, const ExtensionContext& ctx)
      : yb_(yb), ybb_(tensor_over(restrict(yb.module, ctx), ctx.b_module())), b_(ctx.b_module()) {
    const FiniteRing& b = *ctx.target();
    y_delta_ = on_tensor(yb, ybb_.module->group, [&](std::size_t i, std::size_t j) {
      return ybb_.pure(yb.pure(y->group.basis(i), b.one), b.gen(j));
    });
  }

  std::vector<std::size_t> failures(const ModuleMap& rho) const {
    ModuleMap rho_b = tensor_maps(rho, identity_map(b_), yb_, ybb_);
    ModuleMap y_delta{yb_.module, ybb_.module, y_delta_};
    std::vector<std::size_t> out;
    for (std::size_t s = 0; s < rho.images.size(); ++s)
      if (rho_b.apply(rho.images[s]) != y_delta.apply(rho.images[s])) out.push_back(s);
    return out;
  }

 private:
  const TensorProduct& yb_;
  TensorProduct ybb_;
  ModulePtr b_;
  std::vector<Vec> y_delta_;
};

}  // namespace

ExtensionContext::ExtensionContext(RingHom i) : i_(std::move(i)) {
  auto rep = validate_ring_hom(i_);
  if (!rep.ok()) throw Error(ErrorKind::ValidationError, "ring hom: " + rep.to_string());
  b_ = with_actions(restrict_left(regular_bimodule(i_.target), i_), true, true);
}

ExtensionContext ExtensionContext::opposite() const { return ExtensionContext(opposite_hom(i_)); }

RingHom opposite_hom(const RingHom& i) { return RingHom{opposite_ring(i.source), opposite_ring(i.target), i.images}; }

Extension extend(const ModulePtr& x, const ExtensionContext& ctx) {
  ModulePtr xr = right_only(x, ctx.source());
  return Extension{xr, tensor_over(xr, ctx.b_module())};
}

ModulePtr restrict(const ModulePtr& y, const ExtensionContext& ctx) {
  return with_actions(restrict_right(right_only(y, ctx.target()), ctx.hom()), false, true);
}

ModuleMap adjunction_unit(const Extension& e, const ExtensionContext& ctx) {
  return ModuleMap{e.x, restrict(e.module(), ctx), insert_one(e.x, e.tensor, ctx.target()->one)};
}

ModuleMap extend_map(const ModuleMap& f, const Extension& src, const Extension& dst, const ExtensionContext& ctx) {
  ModuleMap h = tensor_maps(f, identity_map(ctx.b_module()), src.tensor, dst.tensor);
  return ModuleMap{src.module(), dst.module(), h.images};
}

TensorProduct coaction_target(const ModulePtr& y, const ExtensionContext& ctx) {
  return tensor_over(restrict(y, ctx), ctx.b_module());
}

DescentDatum comparison(const Extension& e, const ExtensionContext& ctx) {
  DescentDatum d;
  d.y = e.module();
  d.yb = coaction_target(d.y, ctx);
  const FiniteRing& b = *ctx.target();
  d.rho = ModuleMap{d.y, d.yb.module, on_tensor(e.tensor, d.yb.module->group, [&](std::size_t i, std::size_t j) {
                      return d.yb.pure(e.tensor.pure(e.x->group.basis(i), b.one), b.gen(j));
                    })};
  return d;
}

Submodule descend(const DescentDatum& d, const ExtensionContext& ctx) {
  auto one = insert_one(d.y, d.yb, ctx.target()->one);
  std::vector<Vec> diff;
  for (std::size_t s = 0; s < d.y->rank(); ++s) diff.push_back(d.yb.module->group.sub(d.rho.images[s], one[s]));
  Subgroup eq = Subgroup::kernel(d.y->group.factors(), d.yb.module->group.factors(), diff);
  return submodule(restrict(d.y, ctx), eq);
}

ValidationReport validate_descent_datum(const DescentDatum& d, const ExtensionContext& ctx) {
  ValidationReport rep;
  for (const auto& v : validate_map(d.rho).violations) rep.violations.push_back({"b_linear:" + v.axiom, v.witness});
  ModuleMap act = action_map(d);
  for (std::size_t s = 0; s < d.y->rank(); ++s)
    if (act.apply(d.rho.images[s]) != d.y->group.basis(s)) rep.violations.push_back({"counit", {s}});
  CoassociativityCheck coassoc(d.y, d.yb, ctx);
  for (std::size_t s : coassoc.failures(d.rho)) rep.violations.push_back({"coassociativity", {s}});
  return rep;
}

std::vector<DescentDatum> enumerate_descent_data(const ExtensionContext& ctx, std::uint64_t bound, bool classes_only) {
  std::vector<DescentDatum> out;
  auto ys = classes_only ? enumerate_module_classes(ctx.target(), Side::Right, bound)
                         : enumerate_modules(ctx.target(), Side::Right, bound);
  for (const auto& y : ys) {
    TensorProduct yb = coaction_target(y, ctx);
    HomSpace h = hom_space(y, yb.module, false, true);
    DescentDatum probe{y, yb, ModuleMap{y, yb.module, {}}};
    ModuleMap act = action_map(probe);
    // Counit law act o rho = id is affine in rho.
    Vec moduli;
    for (std::size_t s = 0; s < y->rank(); ++s)
      moduli.insert(moduli.end(), y->group.factors().begin(), y->group.factors().end());
    std::vector<Vec> images;
    for (std::size_t t = 0; t < h.module->rank(); ++t) {
      Vec flat;
      for (const auto& v : h.images(h.module->group.basis(t))) {
        Vec w = act.apply(v);
        flat.insert(flat.end(), w.begin(), w.end());
      }
      images.push_back(flat);
    }
    Vec rhs;
    for (std::size_t s = 0; s < y->rank(); ++s) {
      Vec e = y->group.basis(s);
      rhs.insert(rhs.end(), e.begin(), e.end());
    }
    LinearSolve sol = solve_linear(h.module->group, moduli, images, rhs);
    if (!sol.solution) continue;
    CoassociativityCheck coassoc(y, yb, ctx);
    Subgroup dir = Subgroup::generated_by(h.module->group.factors(), sol.kernel);
    if (dir.group().exact_order() > enumeration_cap())
      throw Error(ErrorKind::SizeLimitExceeded, "descent datum candidates on " + y->name);
    dir.group().for_each_element([&](const Vec& c) {
      Vec coords = h.module->group.add(*sol.solution, dir.embed(c));
      // B-linearity and the counit law hold by construction.
      DescentDatum d{y, yb, h.map(coords)};
      if (coassoc.failures(d.rho).empty()) out.push_back(std::move(d));
      return true;
    });
  }
  return out;
}

std::optional<ModuleMap> datum_isomorphism(const DescentDatum& d1, const DescentDatum& d2, const ExtensionContext& ctx) {
  if (d1.y->group != d2.y->group) return std::nullopt;
  HomSpace h = module_homs(d1.y, d2.y);
  if (h.module->group.exact_order() > enumeration_cap())
    throw Error(ErrorKind::SizeLimitExceeded, "datum isomorphism search");
  std::optional<ModuleMap> found;
  h.module->group.for_each_element([&](const Vec& c) {
    ModuleMap phi = h.map(c);
    if (!is_iso(phi)) return true;
    ModuleMap phi_b = tensor_maps(phi, identity_map(ctx.b_module()), d1.yb, d2.yb);
    for (std::size_t s = 0; s < d1.y->rank(); ++s)
      if (d2.rho.apply(phi.images[s]) != phi_b.apply(d1.rho.images[s])) return true;
    found = phi;
    return false;
  });
  return found;
}

ComonadicityReport comonadicity_oracle(const ExtensionContext& ctx, std::uint64_t bound) {
  ComonadicityReport rep;
  auto make = [&](const char* id) {
    CriterionVerdict v;
    v.id = id;
    v.verdict = Verdict::YesUpToBound;
    v.bound = bound;
    return v;
  };
  rep.unit = make("unit_of_comparison");
  rep.data = make("data_are_comparisons");
  rep.conservative = make("conservative");

  auto xs = enumerate_module_classes(ctx.source(), Side::Right, bound);
  std::vector<Extension> ext;
  for (const auto& x : xs) ext.push_back(extend(x, ctx));

  // (a) x -> descend(comparison(x)) is an isomorphism.
  for (std::size_t k = 0; k < xs.size() && rep.unit.verdict != Verdict::No; ++k) {
    ++rep.modules_checked;
    Submodule eq = descend(comparison(ext[k], ctx), ctx);
    ModuleMap eta = adjunction_unit(ext[k], ctx);
    Subgroup ker = Subgroup::kernel(xs[k]->group.factors(), eta.target->group.factors(), eta.images);
    bool inside = true;
    for (const auto& v : eta.images) inside = inside && eq.subgroup.contains(v);
    if (!ker.group().trivial() || !inside || eq.module->order() != xs[k]->order()) {
      rep.unit.verdict = Verdict::No;
      rep.unit.module = xs[k];
      if (!ker.group().trivial()) rep.unit.element = ker.generators().front();
      rep.unit.map = eta;
      rep.unit.notes = "unit x -> descend(comparison(x)) is not an isomorphism (|x| = " +
                       std::to_string(xs[k]->order()) + ", equalizer order " + std::to_string(eq.module->order()) + ")";
    }
  }

  // (b) every datum is isomorphic to a comparison image.
  for (const auto& d : enumerate_descent_data(ctx, bound, true)) {
    if (rep.data.verdict == Verdict::No) break;
    ++rep.data_checked;
    bool matched = false;
    Submodule down = descend(d, ctx);
    if (down.module->order() <= bound) {
      // Counit of the comparison adjunction: x (x) b -> x b.
      Extension e = extend(down.module, ctx);
      DescentDatum c = comparison(e, ctx);
      const FiniteRing& b = *ctx.target();
      ModuleMap counit{c.y, d.y, {}};
      for (const auto& terms : e.tensor.lift) {
        Vec v = d.y->group.zero();
        for (const auto& term : terms)
          d.y->group.axpy(v, term.coef, d.y->act_right(down.inclusion.images[term.i], b.gen(term.j)));
        counit.images.push_back(v);
      }
      if (is_iso(counit)) {
        ModuleMap phi_b = tensor_maps(counit, identity_map(ctx.b_module()), c.yb, d.yb);
        matched = true;
        for (std::size_t s = 0; s < c.y->rank(); ++s)
          matched = matched && d.rho.apply(counit.images[s]) == phi_b.apply(c.rho.images[s]);
      }
    }
    for (std::size_t k = 0; k < xs.size() && !matched; ++k)
      if (ext[k].module()->group == d.y->group) matched = datum_isomorphism(comparison(ext[k], ctx), d, ctx).has_value();
    if (!matched) {
      rep.data.verdict = Verdict::No;
      rep.data.module = d.y;
      rep.data.map = d.rho;
      rep.data.notes = "descent datum on a module of order " + std::to_string(d.y->order()) +
                       " is not isomorphic to any comparison image";
    }
  }

  // (c) a non-iso f whose extension is an iso.
  for (std::size_t p = 0; p < xs.size() && rep.conservative.verdict != Verdict::No; ++p)
    for (std::size_t q = 0; q < xs.size() && rep.conservative.verdict != Verdict::No; ++q) {
      if (ext[p].module()->group != ext[q].module()->group) continue;
      HomSpace h = module_homs(xs[p], xs[q]);
      if (h.module->group.exact_order() > enumeration_cap())
        throw Error(ErrorKind::SizeLimitExceeded, "conservativity check hom space");
      h.module->group.for_each_element([&](const Vec& c) {
        ++rep.maps_checked;
        ModuleMap f = h.map(c);
        if (is_iso(f) || !is_iso(extend_map(f, ext[p], ext[q], ctx))) return true;
        rep.conservative.verdict = Verdict::No;
        rep.conservative.map = f;
        rep.conservative.notes = "map is not an isomorphism but its extension is";
        return false;
      });
    }

  rep.overall = make("comonadic");
  for (const auto* sub : {&rep.conservative, &rep.unit, &rep.data})
    if (sub->verdict == Verdict::No) {
      rep.overall.verdict = Verdict::No;
      rep.overall.map = sub->map;
      rep.overall.module = sub->module;
      rep.overall.element = sub->element;
      rep.overall.notes = sub->id + ": " + sub->notes;
      break;
    }
  return rep;
}

}  // namespace descent_kit
