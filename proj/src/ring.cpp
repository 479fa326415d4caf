#include "descent_kit/ring.hpp"

#include <sstream>

namespace descent_kit {

namespace {

std::string vec_str(const Vec& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(v[i]);
  }
  return s + "]";
}

struct Presented {
  RingPtr ring;
  Cokernel ck;
};

std::vector<Integer> to_integers(const Vec& v) { return std::vector<Integer>(v.begin(), v.end()); }

Vec lift_column(const Cokernel& ck, std::size_t t) {
  Vec out(ck.lift.rows());
  for (std::size_t r = 0; r < out.size(); ++r) out[r] = static_cast<std::int64_t>(ck.lift(r, t));
  return out;
}

// Multiply two ambient vectors using an ambient table, without reduction.
Vec ambient_mul(const std::vector<std::vector<Vec>>& mult, const Vec& moduli, const Vec& x, const Vec& y) {
  Vec out(moduli.size(), 0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < y.size(); ++j) {
      if (y[j] == 0) continue;
      const Vec& c = mult[i][j];
      for (std::size_t s = 0; s < out.size(); ++s)
        out[s] = mod_floor(out[s] + x[i] * y[j] * c[s], moduli[s]);
    }
  }
  return out;
}

Presented present(std::string name, const Vec& moduli, const std::vector<std::vector<Vec>>& mult, const Vec& one,
                  RingPtr base, const std::vector<Vec>& base_map) {
  const std::size_t n = moduli.size();
  IntMatrix rel(n, n);
  for (std::size_t i = 0; i < n; ++i) rel(i, i) = moduli[i];
  Presented p;
  p.ck = cokernel(rel);
  FiniteRing r;
  r.name = std::move(name);
  r.add = p.ck.group;
  const std::size_t k = r.add.rank();
  std::vector<Vec> lifts(k);
  for (std::size_t t = 0; t < k; ++t) lifts[t] = lift_column(p.ck, t);
  r.mult.assign(k, std::vector<Vec>(k));
  for (std::size_t s = 0; s < k; ++s)
    for (std::size_t t = 0; t < k; ++t)
      r.mult[s][t] = p.ck.project(to_integers(ambient_mul(mult, moduli, lifts[s], lifts[t])));
  r.one = p.ck.project(to_integers(one));
  r.base = std::move(base);
  for (const auto& b : base_map) r.base_map.push_back(p.ck.project(to_integers(b)));
  p.ring = make_ring(std::move(r));
  return p;
}

}  // namespace

std::int64_t FiniteRing::characteristic() const { return add.element_order(one); }

Vec FiniteRing::mul(const Vec& x, const Vec& y) const {
  Vec out = zero();
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < y.size(); ++j) {
      if (y[j] == 0) continue;
      add.axpy(out, x[i] * y[j], mult[i][j]);
    }
  }
  return out;
}

bool FiniteRing::is_commutative() const {
  for (std::size_t i = 0; i < rank(); ++i)
    for (std::size_t j = i + 1; j < rank(); ++j)
      if (mult[i][j] != mult[j][i]) return false;
  return true;
}

RingPtr make_ring(FiniteRing r) {
  for (auto& row : r.mult)
    for (auto& v : row)
      if (v.size() == r.add.rank()) r.add.reduce(v);
  if (r.one.size() == r.add.rank()) r.add.reduce(r.one);
  std::ostringstream os;
  os << r.add.to_string() << "|";
  for (auto& row : r.mult)
    for (auto& v : row) os << vec_str(v);
  os << "|" << vec_str(r.one) << "|";
  if (r.base) {
    os << "{" << r.base->fingerprint << "}";
    for (auto& v : r.base_map) os << vec_str(v);
  }
  r.fingerprint = os.str();
  return std::make_shared<const FiniteRing>(std::move(r));
}

bool same_ring(const FiniteRing& a, const FiniteRing& b) { return &a == &b || a.fingerprint == b.fingerprint; }

bool same_ring(const RingPtr& a, const RingPtr& b) {
  if (!a || !b) return a == b;
  return same_ring(*a, *b);
}

bool is_cyclic_ring(const FiniteRing& r) { return r.rank() == 1 && r.one == Vec{1}; }

RingPtr base_of(const RingPtr& r) { return r->base ? r->base : cyclic_ring(r->characteristic()); }

Vec base_image(const FiniteRing& r, const Vec& k) {
  if (!r.base) {
    std::int64_t c = k.empty() ? 0 : k[0];
    return r.add.scale(c, r.one);
  }
  Vec out = r.zero();
  for (std::size_t s = 0; s < k.size(); ++s) r.add.axpy(out, k[s], r.base_map[s]);
  return out;
}

std::string Violation::to_string() const {
  std::string s = axiom + " at (";
  for (std::size_t i = 0; i < witness.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(witness[i]);
  }
  return s + ")";
}

std::string ValidationReport::to_string() const {
  if (ok()) return "valid";
  std::string s;
  for (const auto& v : violations) s += (s.empty() ? "" : "; ") + v.to_string();
  return s;
}

ValidationReport validate_ring(const FiniteRing& r) {
  ValidationReport rep;
  const std::size_t k = r.rank();
  auto& vs = rep.violations;
  bool shape_ok = r.mult.size() == k && r.one.size() == k;
  for (const auto& row : r.mult) {
    shape_ok = shape_ok && row.size() == k;
    for (const auto& v : row) shape_ok = shape_ok && v.size() == k;
  }
  if (!shape_ok) {
    vs.push_back({"shape", {}});
    return rep;
  }
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      if (!r.add.is_zero(r.add.scale(r.add.factor(i), r.mult[i][j])) ||
          !r.add.is_zero(r.add.scale(r.add.factor(j), r.mult[i][j])))
        vs.push_back({"well_defined", {i, j}});
    }
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t l = 0; l < k; ++l)
        if (r.mul(r.mult[i][j], r.gen(l)) != r.mul(r.gen(i), r.mult[j][l])) vs.push_back({"associativity", {i, j, l}});
  for (std::size_t j = 0; j < k; ++j) {
    Vec g = r.gen(j);
    if (r.mul(r.one, g) != g || r.mul(g, r.one) != g) vs.push_back({"unit", {j}});
  }
  if (r.base) {
    const FiniteRing& kb = *r.base;
    if (!kb.is_commutative()) vs.push_back({"base_commutative", {}});
    if (r.base_map.size() != kb.rank()) {
      vs.push_back({"base_map_shape", {}});
      return rep;
    }
    for (std::size_t s = 0; s < kb.rank(); ++s) {
      if (r.base_map[s].size() != k) {
        vs.push_back({"base_map_shape", {s}});
        return rep;
      }
      if (!r.add.is_zero(r.add.scale(kb.add.factor(s), r.base_map[s]))) vs.push_back({"base_well_defined", {s}});
      for (std::size_t j = 0; j < k; ++j)
        if (r.mul(r.base_map[s], r.gen(j)) != r.mul(r.gen(j), r.base_map[s])) vs.push_back({"base_central", {s, j}});
      for (std::size_t t = 0; t < kb.rank(); ++t)
        if (base_image(r, kb.mult[s][t]) != r.mul(r.base_map[s], r.base_map[t]))
          vs.push_back({"base_multiplicative", {s, t}});
    }
    if (base_image(r, kb.one) != r.one) vs.push_back({"base_unit", {}});
  }
  return rep;
}

RingPtr ring_from_presentation(std::string name, const Vec& moduli, const std::vector<std::vector<Vec>>& mult,
                               const Vec& one, RingPtr base, const std::vector<Vec>& base_map) {
  return present(std::move(name), moduli, mult, one, std::move(base), base_map).ring;
}

Vec RingHom::apply(const Vec& x) const {
  Vec out = target->zero();
  for (std::size_t i = 0; i < x.size(); ++i) target->add.axpy(out, x[i], images[i]);
  return out;
}

ValidationReport validate_ring_hom(const RingHom& h) {
  ValidationReport rep;
  auto& vs = rep.violations;
  const FiniteRing& a = *h.source;
  const FiniteRing& b = *h.target;
  if (h.images.size() != a.rank()) {
    vs.push_back({"shape", {}});
    return rep;
  }
  for (std::size_t i = 0; i < a.rank(); ++i) {
    if (h.images[i].size() != b.rank()) {
      vs.push_back({"shape", {i}});
      return rep;
    }
    if (!b.add.is_zero(b.add.scale(a.add.factor(i), h.images[i]))) vs.push_back({"additive", {i}});
  }
  for (std::size_t i = 0; i < a.rank(); ++i)
    for (std::size_t j = 0; j < a.rank(); ++j)
      if (h.apply(a.mult[i][j]) != b.mul(h.images[i], h.images[j])) vs.push_back({"multiplicative", {i, j}});
  if (h.apply(a.one) != b.one) vs.push_back({"unit", {}});
  RingPtr ka = base_of(h.source), kb = base_of(h.target);
  if (!(is_cyclic_ring(*ka) && is_cyclic_ring(*kb))) {
    if (!same_ring(ka, kb)) {
      vs.push_back({"base_mismatch", {}});
    } else {
      for (std::size_t s = 0; s < ka->rank(); ++s)
        if (h.apply(base_image(a, ka->gen(s))) != base_image(b, ka->gen(s))) vs.push_back({"base_linear", {s}});
    }
  }
  return rep;
}

RingPtr cyclic_ring(std::int64_t n) {
  if (n < 2) throw Error(ErrorKind::InvalidArgument, "cyclic ring needs n >= 2");
  FiniteRing r;
  r.name = "Z/" + std::to_string(n);
  r.add = FiniteAbelianGroup({n});
  r.mult = {{Vec{1}}};
  r.one = Vec{1};
  return make_ring(std::move(r));
}

namespace {

Presented present_product(const RingPtr& a, const RingPtr& b) {
  const std::size_t ka = a->rank(), kb = b->rank(), n = ka + kb;
  Vec moduli = a->add.factors();
  moduli.insert(moduli.end(), b->add.factors().begin(), b->add.factors().end());
  std::vector<std::vector<Vec>> mult(n, std::vector<Vec>(n, Vec(n, 0)));
  for (std::size_t i = 0; i < ka; ++i)
    for (std::size_t j = 0; j < ka; ++j)
      for (std::size_t s = 0; s < ka; ++s) mult[i][j][s] = a->mult[i][j][s];
  for (std::size_t i = 0; i < kb; ++i)
    for (std::size_t j = 0; j < kb; ++j)
      for (std::size_t s = 0; s < kb; ++s) mult[ka + i][ka + j][ka + s] = b->mult[i][j][s];
  Vec one = a->one;
  one.insert(one.end(), b->one.begin(), b->one.end());
  RingPtr base;
  std::vector<Vec> base_map;
  RingPtr base_a = base_of(a), base_b = base_of(b);
  if (same_ring(base_a, base_b) && (a->base || b->base)) {
    base = base_a;
    for (std::size_t s = 0; s < base->rank(); ++s) {
      Vec v = base_image(*a, base->gen(s));
      Vec w = base_image(*b, base->gen(s));
      v.insert(v.end(), w.begin(), w.end());
      base_map.push_back(v);
    }
  } else if (!same_ring(base_a, base_b) && !(is_cyclic_ring(*base_a) && is_cyclic_ring(*base_b))) {
    throw Error(ErrorKind::RingMismatch, "product of algebras over different bases");
  }
  std::string name = a->name + " x " + b->name;
  return present(name, moduli, mult, one, base, base_map);
}

}  // namespace

RingPtr product_ring(const RingPtr& a, const RingPtr& b) { return present_product(a, b).ring; }

RingPtr matrix_ring(const RingPtr& k, std::size_t n) {
  if (!k->is_commutative()) throw Error(ErrorKind::InvalidArgument, "matrix ring needs a commutative base");
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "matrix ring needs n >= 1");
  if (n == 1) return k;
  const std::size_t kk = k->rank(), dim = n * n * kk;
  auto idx = [&](std::size_t i, std::size_t j, std::size_t s) { return (i * n + j) * kk + s; };
  Vec moduli(dim);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t s = 0; s < kk; ++s) moduli[idx(i, j, s)] = k->add.factor(s);
  std::vector<std::vector<Vec>> mult(dim, std::vector<Vec>(dim, Vec(dim, 0)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t s = 0; s < kk; ++s)
        for (std::size_t l = 0; l < n; ++l)
          for (std::size_t t = 0; t < kk; ++t) {
            const Vec& c = k->mult[s][t];
            for (std::size_t u = 0; u < kk; ++u) mult[idx(i, j, s)][idx(j, l, t)][idx(i, l, u)] = c[u];
          }
  Vec one(dim, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t u = 0; u < kk; ++u) one[idx(i, i, u)] = k->one[u];
  std::vector<Vec> base_map;
  for (std::size_t s = 0; s < kk; ++s) {
    Vec v(dim, 0);
    for (std::size_t i = 0; i < n; ++i) v[idx(i, i, s)] = 1;
    base_map.push_back(v);
  }
  return present("M_" + std::to_string(n) + "(" + k->name + ")", moduli, mult, one, k, base_map).ring;
}

RingPtr polynomial_quotient_ring(std::int64_t n, const Vec& c, std::string name) {
  const std::size_t d = c.size();
  if (d == 0) throw Error(ErrorKind::InvalidArgument, "polynomial quotient needs degree >= 1");
  // x^e for e < 2d-1 in the basis 1, x, ..., x^{d-1}.
  std::vector<Vec> power(2 * d - 1, Vec(d, 0));
  for (std::size_t e = 0; e < d; ++e) power[e][e] = 1;
  for (std::size_t e = d; e < power.size(); ++e) {
    // x^e = x * x^{e-1}; x * x^{d-1} = -sum c_i x^i.
    const Vec& prev = power[e - 1];
    Vec next(d, 0);
    for (std::size_t i = 0; i + 1 < d; ++i) next[i + 1] = prev[i];
    for (std::size_t i = 0; i < d; ++i) next[i] = mod_floor(next[i] - prev[d - 1] * c[i], n);
    power[e] = next;
  }
  std::vector<std::vector<Vec>> mult(d, std::vector<Vec>(d));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) mult[i][j] = power[i + j];
  Vec one(d, 0);
  one[0] = 1;
  if (name.empty()) {
    name = "Z/" + std::to_string(n) + "[x]/(x^" + std::to_string(d);
    for (std::size_t i = d; i-- > 0;)
      if (c[i]) name += "+" + (c[i] == 1 ? std::string() : std::to_string(c[i])) + (i ? "x^" + std::to_string(i) : "1");
    name += ")";
  }
  return ring_from_presentation(name, Vec(d, n), mult, one);
}

RingPtr dual_numbers(std::int64_t p) { return polynomial_quotient_ring(p, Vec{0, 0}); }

RingPtr upper_triangular(std::int64_t p) {
  // Basis E11, E12, E22.
  std::vector<std::vector<Vec>> mult(3, std::vector<Vec>(3, Vec(3, 0)));
  mult[0][0] = {1, 0, 0};
  mult[0][1] = {0, 1, 0};
  mult[1][2] = {0, 1, 0};
  mult[2][2] = {0, 0, 1};
  return ring_from_presentation("T_2(Z/" + std::to_string(p) + ")", Vec(3, p), mult, Vec{1, 0, 1});
}

RingPtr opposite_ring(const RingPtr& a) {
  FiniteRing r = *a;
  r.name = a->name + "^op";
  for (std::size_t i = 0; i < a->rank(); ++i)
    for (std::size_t j = 0; j < a->rank(); ++j) r.mult[i][j] = a->mult[j][i];
  return make_ring(std::move(r));
}

Vec TensorRing::pure(const Vec& x, const Vec& y) const {
  Vec out = ring->zero();
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < y.size(); ++j)
      if (y[j] != 0) ring->add.axpy(out, x[i] * y[j], pair[i][j]);
  }
  return out;
}

TensorRing tensor_ring(const RingPtr& a, const RingPtr& b) {
  const std::size_t ka = a->rank(), kb = b->rank(), n = ka * kb;
  RingPtr base;
  std::vector<Vec> base_map;
  {
    RingPtr ka = base_of(a), kb = base_of(b);
    if (same_ring(ka, kb) && (a->base || b->base)) {
      base = ka;
    } else if (!same_ring(ka, kb) && !(is_cyclic_ring(*ka) && is_cyclic_ring(*kb))) {
      throw Error(ErrorKind::RingMismatch, "tensor of algebras over different bases");
    }
  }
  // Ambient Z^(ka*kb) with relations gcd(d_i, e_j) e_ij and K-balance.
  std::vector<std::vector<Integer>> cols;
  auto col = [&](std::size_t i, std::size_t j) { return i * kb + j; };
  for (std::size_t i = 0; i < ka; ++i)
    for (std::size_t j = 0; j < kb; ++j) {
      std::vector<Integer> c(n, 0);
      c[col(i, j)] = gcd64(a->add.factor(i), b->add.factor(j));
      cols.push_back(c);
    }
  if (base && !is_cyclic_ring(*base)) {
    for (std::size_t s = 0; s < base->rank(); ++s)
      for (std::size_t i = 0; i < ka; ++i)
        for (std::size_t j = 0; j < kb; ++j) {
          Vec left = a->mul(a->gen(i), base_image(*a, base->gen(s)));
          Vec right = b->mul(base_image(*b, base->gen(s)), b->gen(j));
          std::vector<Integer> c(n, 0);
          for (std::size_t u = 0; u < ka; ++u) c[col(u, j)] += left[u];
          for (std::size_t u = 0; u < kb; ++u) c[col(i, u)] -= right[u];
          cols.push_back(c);
        }
  }
  IntMatrix rel(n, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c)
    for (std::size_t r = 0; r < n; ++r) rel(r, c) = cols[c][r];
  Cokernel ck = cokernel(rel);

  TensorRing out;
  out.pair.assign(ka, std::vector<Vec>(kb));
  for (std::size_t i = 0; i < ka; ++i)
    for (std::size_t j = 0; j < kb; ++j) {
      std::vector<Integer> e(n, 0);
      e[col(i, j)] = 1;
      out.pair[i][j] = ck.project(e);
    }
  FiniteRing r;
  r.name = a->name + " (x) " + b->name;
  r.add = ck.group;
  const std::size_t k = r.add.rank();
  auto pure_in = [&](const Vec& x, const Vec& y) {
    Vec v = r.add.zero();
    for (std::size_t i = 0; i < ka; ++i) {
      if (x[i] == 0) continue;
      for (std::size_t j = 0; j < kb; ++j)
        if (y[j] != 0) r.add.axpy(v, x[i] * y[j], out.pair[i][j]);
    }
    return v;
  };
  std::vector<std::vector<std::pair<std::size_t, std::int64_t>>> lifts(k);
  for (std::size_t t = 0; t < k; ++t)
    for (std::size_t c = 0; c < n; ++c) {
      std::int64_t v = static_cast<std::int64_t>(ck.lift(c, t));
      if (v != 0) lifts[t].push_back({c, v});
    }
  r.mult.assign(k, std::vector<Vec>(k, r.add.zero()));
  for (std::size_t s = 0; s < k; ++s)
    for (std::size_t t = 0; t < k; ++t)
      for (auto [c1, v1] : lifts[s])
        for (auto [c2, v2] : lifts[t]) {
          Vec x = a->mul(a->gen(c1 / kb), a->gen(c2 / kb));
          Vec y = b->mul(b->gen(c1 % kb), b->gen(c2 % kb));
          r.add.axpy(r.mult[s][t], v1 * v2, pure_in(x, y));
        }
  r.one = pure_in(a->one, b->one);
  if (base) {
    r.base = base;
    for (std::size_t s = 0; s < base->rank(); ++s) r.base_map.push_back(pure_in(base_image(*a, base->gen(s)), b->one));
  }
  // Ring generators: g (x) 1 for generators of a, 1 (x) h for generators of b.
  for (std::size_t i = 0; i < ka; ++i) r.ring_generators.push_back(pure_in(a->gen(i), b->one));
  for (std::size_t j = 0; j < kb; ++j) r.ring_generators.push_back(pure_in(a->one, b->gen(j)));
  out.ring = make_ring(std::move(r));
  return out;
}

TensorRing enveloping_ring(const RingPtr& a) { return tensor_ring(a, opposite_ring(a)); }

RingHom identity_hom(const RingPtr& a) {
  RingHom h{a, a, {}};
  for (std::size_t i = 0; i < a->rank(); ++i) h.images.push_back(a->gen(i));
  return h;
}

RingHom diagonal_hom(const RingPtr& a) {
  Presented p = present_product(a, a);
  RingHom h{a, p.ring, {}};
  const std::size_t k = a->rank();
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<Integer> amb(2 * k, 0);
    amb[i] = 1;
    amb[k + i] = 1;
    h.images.push_back(p.ck.project(amb));
  }
  return h;
}

RingHom projection_hom(const RingPtr& product, const RingPtr& a, const RingPtr& b, bool first) {
  Presented p = present_product(a, b);
  if (!same_ring(p.ring, product)) throw Error(ErrorKind::RingMismatch, "not the product of the given factors");
  const RingPtr& target = first ? a : b;
  const std::size_t offset = first ? 0 : a->rank();
  RingHom h{product, target, {}};
  for (std::size_t t = 0; t < product->rank(); ++t) {
    Vec lift = lift_column(p.ck, t);
    Vec img(target->rank());
    for (std::size_t s = 0; s < img.size(); ++s) img[s] = lift[offset + s];
    h.images.push_back(target->add.reduced(img));
  }
  return h;
}

RingHom reduction_hom(std::int64_t n, std::int64_t m) {
  if (m <= 0 || n % m != 0) throw Error(ErrorKind::InvalidArgument, "reduction Z/n -> Z/m needs m | n");
  return unit_hom(cyclic_ring(n), cyclic_ring(m));
}

RingHom structure_hom(const RingPtr& a) {
  RingPtr k = base_of(a);
  RingHom h{k, a, {}};
  for (std::size_t s = 0; s < k->rank(); ++s) h.images.push_back(base_image(*a, k->gen(s)));
  if (!a->base) h.source = cyclic_ring(a->characteristic());
  return h;
}

RingHom unit_hom(const RingPtr& cyclic, const RingPtr& target) {
  if (cyclic->rank() != 1 || cyclic->one != Vec{1})
    throw Error(ErrorKind::InvalidArgument, "unit_hom needs a ring generated by 1");
  return RingHom{cyclic, target, {target->one}};
}

RingHom compose(const RingHom& g, const RingHom& f) {
  if (!same_ring(f.target, g.source)) throw Error(ErrorKind::RingMismatch, "compose: rings do not match");
  RingHom h{f.source, g.target, {}};
  for (const auto& v : f.images) h.images.push_back(g.apply(v));
  return h;
}

}  // namespace descent_kit
