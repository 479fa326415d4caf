#include "descent_kit/endo.hpp"

#include "descent_kit/enumerate.hpp"

namespace descent_kit {

namespace {

void require_bimodule(const ModulePtr& m) {
  if (!m->left || !m->right) throw Error(ErrorKind::RingMismatch, "expected a bimodule");
}

}  // namespace

ProjectivityResult is_fg_projective(const ModulePtr& m) {
  if (!m->right) throw Error(ErrorKind::RingMismatch, "expected a right module");
  ModulePtr mr = with_actions(m, false, true);
  const RingPtr& b = m->right->ring;
  ProjectivityResult res;
  res.verdict.id = "fg_projective";
  const std::size_t n = m->rank();
  if (n == 0) {
    res.verdict.verdict = Verdict::Yes;
    res.basis = DualBasis{};
    res.verdict.notes = "zero module";
    return res;
  }
  DirectSum free = direct_sum(std::vector<ModulePtr>(n, right_regular(b)));
  // B^n -> M, e_j -> m_j.
  ModuleMap p{free.module, mr, {}};
  for (std::size_t t = 0; t < free.module->rank(); ++t) {
    Vec v = m->group.zero();
    Vec e = free.module->group.basis(t);
    for (std::size_t j = 0; j < n; ++j)
      v = m->group.add(v, mr->act_right(m->group.basis(j), free.projections[j].apply(e)));
    p.images.push_back(v);
  }
  CriterionVerdict split = is_split_epi(p);
  if (!split.holds()) {
    res.verdict.verdict = Verdict::No;
    res.verdict.map = p;
    res.verdict.notes = "the canonical surjection from B^" + std::to_string(n) + " does not split";
    return res;
  }
  DualBasis db;
  for (std::size_t j = 0; j < n; ++j) {
    db.elements.push_back(m->group.basis(j));
    db.functionals.push_back(compose(free.projections[j], *split.map));
  }
  if (!check_dual_basis(mr, db)) throw Error(ErrorKind::ValidationError, "dual basis failed substitution");
  res.verdict.verdict = Verdict::Yes;
  res.verdict.map = split.map;
  res.verdict.notes = "dual basis of length " + std::to_string(n);
  res.basis = std::move(db);
  return res;
}

bool check_dual_basis(const ModulePtr& m, const DualBasis& basis) {
  if (basis.elements.size() != basis.functionals.size()) return false;
  for (const auto& f : basis.functionals)
    if (!validate_map(f).ok()) return false;
  for (std::size_t s = 0; s < m->rank(); ++s) {
    Vec x = m->group.basis(s);
    Vec sum = m->group.zero();
    for (std::size_t j = 0; j < basis.elements.size(); ++j)
      sum = m->group.add(sum, m->act_right(basis.elements[j], basis.functionals[j].apply(x)));
    if (sum != x) return false;
  }
  return true;
}

EndomorphismRing endomorphism_ring(const ModulePtr& m) {
  require_bimodule(m);
  EndomorphismRing e{nullptr, hom_space(m, m, false, true), {}};
  const auto& g = e.space.module->group;
  FiniteRing r;
  r.name = "End(" + m->name + ")";
  r.add = g;
  r.mult.assign(g.rank(), std::vector<Vec>(g.rank()));
  std::vector<ModuleMap> gens;
  for (std::size_t t = 0; t < g.rank(); ++t) gens.push_back(e.space.map(g.basis(t)));
  for (std::size_t s = 0; s < g.rank(); ++s)
    for (std::size_t t = 0; t < g.rank(); ++t) r.mult[s][t] = *e.space.coords(compose(gens[s], gens[t]));
  r.one = *e.space.coords(identity_map(m));
  e.ring = make_ring(std::move(r));
  auto rep = validate_ring(*e.ring);
  if (!rep.ok()) throw Error(ErrorKind::ValidationError, "endomorphism ring: " + rep.to_string());

  const FiniteRing& a = *m->left->ring;
  e.i_m = RingHom{m->left->ring, e.ring, {}};
  for (std::size_t k = 0; k < a.rank(); ++k) {
    std::vector<Vec> images;
    for (std::size_t s = 0; s < m->rank(); ++s) images.push_back(m->act_left_gen(k, m->group.basis(s)));
    e.i_m.images.push_back(*e.space.coords(images));
  }
  rep = validate_ring_hom(e.i_m);
  if (!rep.ok()) throw Error(ErrorKind::ValidationError, "i_M: " + rep.to_string());
  return e;
}

ModulePtr dual_module(const ModulePtr& m) {
  require_bimodule(m);
  if (!is_fg_projective(m).verdict.holds()) throw Error(ErrorKind::NotProjective, m->name);
  return hom_right(m, regular_bimodule(m->right->ring)).module;
}

ModuleMap double_dual_evaluation(const ModulePtr& m) {
  require_bimodule(m);
  if (!is_fg_projective(m).verdict.holds()) throw Error(ErrorKind::NotProjective, m->name);
  ModulePtr b = regular_bimodule(m->right->ring);
  HomSpace dual = hom_right(m, b);
  HomSpace bidual = hom_left(dual.module, b);
  std::vector<ModuleMap> fs;
  for (std::size_t t = 0; t < dual.module->rank(); ++t) fs.push_back(dual.map(dual.module->group.basis(t)));
  ModuleMap ev{m, bidual.module, {}};
  for (std::size_t s = 0; s < m->rank(); ++s) {
    std::vector<Vec> values;
    for (const auto& f : fs) values.push_back(f.images[s]);
    auto c = bidual.coords(values);
    if (!c) throw Error(ErrorKind::ValidationError, "evaluation is not left linear");
    ev.images.push_back(*c);
  }
  return ev;
}

CriterionVerdict totally_faithful_oracle(const ModulePtr& m, PuritySide side, std::uint64_t bound) {
  require_bimodule(m);
  bool left = side == PuritySide::Left;
  CriterionVerdict v;
  v.id = std::string("totally_faithful_") + to_string(side);
  v.verdict = Verdict::YesUpToBound;
  v.bound = bound;
  const RingPtr& ring = left ? m->left->ring : m->right->ring;
  auto xs = enumerate_module_classes(ring, left ? Side::Right : Side::Left, bound);
  for (const auto& x : xs) {
    TensorProduct t = left ? tensor_over(x, m) : tensor_over(m, x);
    // x -> (m_j -> x (x) m_j), flattened over the generators m_j.
    Vec moduli;
    for (std::size_t j = 0; j < m->rank(); ++j)
      moduli.insert(moduli.end(), t.module->group.factors().begin(), t.module->group.factors().end());
    std::vector<Vec> images;
    for (std::size_t s = 0; s < x->rank(); ++s) {
      Vec flat;
      for (std::size_t j = 0; j < m->rank(); ++j) {
        Vec w = left ? t.pure(x->group.basis(s), m->group.basis(j)) : t.pure(m->group.basis(j), x->group.basis(s));
        flat.insert(flat.end(), w.begin(), w.end());
      }
      images.push_back(flat);
    }
    Subgroup ker = Subgroup::kernel(x->group.factors(), moduli, images);
    if (!ker.group().trivial()) {
      v.verdict = Verdict::No;
      v.module = x;
      v.element = ker.generators().front();
      v.notes = "unit has a kernel on a module of order " + std::to_string(x->order());
      return v;
    }
  }
  v.notes = std::to_string(xs.size()) + " modules checked up to isomorphism";
  return v;
}

Theorem41Report theorem_4_1_report(const ModulePtr& m, const Theorem34Options& opt) {
  require_bimodule(m);
  Theorem41Report rep;
  const RingPtr& a = m->left->ring;
  rep.projective = is_fg_projective(m).verdict;
  rep.separable = separability_idempotent(a).verdict;
  rep.endo = endomorphism_ring(m);
  rep.dual = hom_right(m, regular_bimodule(m->right->ring)).module;
  if (rep.projective.holds()) rep.double_dual_iso = is_iso(double_dual_evaluation(m));
  rep.faithful_left = totally_faithful_oracle(m, PuritySide::Left, opt.bound);
  rep.faithful_right = totally_faithful_oracle(rep.dual, PuritySide::Right, opt.bound);
  rep.ring_map = theorem_3_4_report(rep.endo.i_m, opt);
  rep.base_case = is_cyclic_ring(*a) && !a->base;

  std::vector<std::string> notes;
  if (rep.base_case) notes.push_back("A = K: base ring case");
  rep.inconsistent = rep.ring_map.inconsistent;
  bool agree = true;
  if (rep.projective.holds()) {
    if (!rep.double_dual_iso) {
      rep.inconsistent = true;
      notes.push_back("double dual evaluation is not an isomorphism");
    }
    for (auto [exact, oracle] : {std::pair{&rep.ring_map.left_pure, &rep.faithful_left},
                                 std::pair{&rep.ring_map.right_pure, &rep.faithful_right}}) {
      if (exact->holds() == oracle->holds()) continue;
      agree = false;
      if (exact->holds()) {
        rep.inconsistent = true;
        notes.push_back(oracle->id + ": counterexample although i_M is pure");
      } else {
        notes.push_back(oracle->id + ": no counterexample up to bound " + std::to_string(oracle->bound) +
                        " although i_M is not pure");
      }
    }
  }
  if (!rep.projective.holds() || !rep.separable.holds()) {
    rep.equivalence = Verdict::HypothesisNotMet;
    notes.push_back(!rep.projective.holds() ? "M is not finitely generated projective over B"
                                            : "A is not separable");
  } else {
    rep.equivalence = agree && rep.ring_map.equivalence == Verdict::Yes && !rep.inconsistent ? Verdict::Yes
                                                                                             : Verdict::No;
  }
  if (!rep.ring_map.notes.empty()) notes.push_back(rep.ring_map.notes);
  for (const auto& n : notes) rep.notes += (rep.notes.empty() ? "" : "; ") + n;
  return rep;
}

std::size_t matrix_degree(const RingPtr& r) {
  RingPtr k = base_of(r);
  std::uint64_t order = 1;
  for (std::size_t d = 1; d <= 6; ++d) {
    for (std::size_t e = (d - 1) * (d - 1); e < d * d; ++e) order *= k->order();
    if (order == r->order() && same_ring(r, matrix_ring(k, d))) return d;
    if (order >= r->order()) break;
  }
  return 0;
}

Theorem44Report theorem_4_4_report(const RingHom& i, const Theorem34Options& opt) {
  const RingPtr& src = i.source;
  std::size_t n = matrix_degree(src);
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "source of " + src->name + " is not a full matrix ring");
  Theorem44Report rep;
  rep.n = n;
  rep.ring_map = theorem_3_4_report(i, opt);
  rep.inconsistent = rep.ring_map.inconsistent || !rep.ring_map.separable.holds();
  return rep;
}

}  // namespace descent_kit
