#include "descent_kit/enumerate.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>

#include "descent_kit/hom.hpp"

namespace descent_kit {

namespace {

constexpr std::size_t kMaxWords = 4096;
constexpr std::size_t kMaxPowers = 12;

// Endomorphism of sum Z/d_i as a flat k x k matrix; entry (i, j) is
// coordinate i of the image of generator j, reduced mod d_i.
using Mat = Vec;

struct EndAlgebra {
  FiniteAbelianGroup g;
  std::size_t k;

  Mat identity() const {
    Mat m(k * k, 0);
    for (std::size_t i = 0; i < k; ++i) m[i * k + i] = 1 % g.factor(i);
    return m;
  }
  Mat zero() const { return Mat(k * k, 0); }
  Mat mul(const Mat& x, const Mat& y) const {
    Mat out(k * k, 0);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) {
        __int128 s = 0;
        for (std::size_t l = 0; l < k; ++l) s += static_cast<__int128>(x[i * k + l]) * y[l * k + j];
        out[i * k + j] = static_cast<std::int64_t>(s % g.factor(i));
      }
    return out;
  }
  void axpy(Mat& acc, std::int64_t c, const Mat& x) const {
    if (c == 0) return;
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) {
        __int128 v = acc[i * k + j] + static_cast<__int128>(c) * x[i * k + j];
        acc[i * k + j] = mod_floor(static_cast<std::int64_t>(v % g.factor(i)), g.factor(i));
      }
  }
  bool is_zero(const Mat& x) const {
    return std::all_of(x.begin(), x.end(), [](std::int64_t v) { return v == 0; });
  }
  // Every additive endomorphism.
  std::vector<Mat> all() const {
    Vec steps(k * k), counts(k * k);
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) {
        std::int64_t c = gcd64(g.factor(i), g.factor(j));
        counts[i * k + j] = c;
        steps[i * k + j] = g.factor(i) / c;
        if (total > enumeration_cap() / static_cast<std::uint64_t>(c))
          throw Error(ErrorKind::SizeLimitExceeded, "endomorphism enumeration of " + g.to_string());
        total *= static_cast<std::uint64_t>(c);
      }
    std::vector<Mat> out;
    out.reserve(total);
    Vec digit(k * k, 0);
    for (std::uint64_t n = 0; n < total; ++n) {
      Mat m(k * k);
      for (std::size_t e = 0; e < k * k; ++e) m[e] = digit[e] * steps[e];
      out.push_back(std::move(m));
      for (std::size_t e = 0; e < k * k; ++e) {
        if (++digit[e] < counts[e]) break;
        digit[e] = 0;
      }
    }
    return out;
  }
};

struct Closure {
  std::vector<Vec> words;
  // Word w > 0 equals gens[via[w]] * words[parent[w]].
  std::vector<std::size_t> parent, via;
  struct Hit {
    std::size_t gen, word, target;
  };
  std::vector<Hit> hits;
};

// Words in gens[0..count) obtained from 1 by left multiplication.
std::optional<Closure> word_closure(const FiniteRing& a, const std::vector<Vec>& gens, std::size_t count) {
  Closure c;
  std::map<Vec, std::size_t> index;
  c.words.push_back(a.one);
  c.parent.push_back(0);
  c.via.push_back(0);
  index[a.one] = 0;
  for (std::size_t w = 0; w < c.words.size(); ++w)
    for (std::size_t r = 0; r < count; ++r) {
      Vec p = a.mul(gens[r], c.words[w]);
      auto it = index.find(p);
      if (it != index.end()) {
        c.hits.push_back({r, w, it->second});
        continue;
      }
      if (c.words.size() >= kMaxWords) return std::nullopt;
      index[p] = c.words.size();
      c.words.push_back(p);
      c.parent.push_back(w);
      c.via.push_back(r);
    }
  return c;
}

std::vector<Vec> relations_among(const FiniteRing& a, const std::vector<Vec>& elems) {
  std::int64_t e = a.add.exponent();
  Subgroup ker = Subgroup::kernel(Vec(elems.size(), e), a.add.factors(), elems);
  return ker.generators();
}

bool spans(const FiniteRing& a, const std::vector<Vec>& elems) {
  return Subgroup::generated_by(a.add.factors(), elems).group() == a.add;
}

std::vector<Vec> choose_generators(const FiniteRing& a) {
  if (!a.ring_generators.empty()) return a.ring_generators;
  const std::size_t n = a.rank();
  std::vector<Vec> basis;
  for (std::size_t i = 0; i < n; ++i) basis.push_back(a.gen(i));
  // Smallest subset of additive generators that generates the ring.
  for (std::size_t size = 0; size <= n; ++size) {
    std::vector<bool> pick(n, false);
    std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(size), true);
    do {
      std::vector<Vec> gens;
      for (std::size_t i = 0; i < n; ++i)
        if (pick[i]) gens.push_back(basis[i]);
      auto c = word_closure(a, gens, gens.size());
      if (c && spans(a, c->words)) return gens;
    } while (std::prev_permutation(pick.begin(), pick.end()));
  }
  return basis;
}

struct Level {
  Closure closure;
  std::vector<Vec> relations;
};

struct Plan {
  std::vector<Vec> gens;
  std::vector<Level> levels;  // levels[k] uses gens[0..k]
  std::vector<std::vector<Vec>> monogenic;  // relations among powers 1, r, r^2, ...
  std::vector<std::size_t> powers;
  // Additive generator s = sum basis_expr[s][w] * word w of the last level.
  std::vector<Vec> basis_expr;
};

Plan make_plan(const FiniteRing& a, std::vector<Vec> gens) {
  Plan p;
  p.gens = std::move(gens);
  for (std::size_t k = 1; k <= p.gens.size(); ++k) {
    auto c = word_closure(a, p.gens, k);
    if (!c) throw Error(ErrorKind::SizeLimitExceeded, "too many words in ring generators of " + a.name);
    Level lv{std::move(*c), {}};
    lv.relations = relations_among(a, lv.closure.words);
    p.levels.push_back(std::move(lv));
  }
  for (const auto& r : p.gens) {
    std::vector<Vec> pw{a.one};
    while (pw.size() < kMaxPowers) {
      Vec nx = a.mul(r, pw.back());
      if (std::find(pw.begin(), pw.end(), nx) != pw.end()) {
        pw.push_back(nx);
        break;
      }
      pw.push_back(nx);
    }
    p.powers.push_back(pw.size());
    p.monogenic.push_back(relations_among(a, pw));
  }
  const auto& words = p.gens.empty() ? std::vector<Vec>{a.one} : p.levels.back().closure.words;
  if (!spans(a, words)) throw Error(ErrorKind::InvalidArgument, "ring generators do not generate " + a.name);
  IntMatrix m(a.rank(), words.size());
  for (std::size_t w = 0; w < words.size(); ++w)
    for (std::size_t i = 0; i < a.rank(); ++i) m(i, w) = words[w][i];
  std::vector<Integer> moduli(a.add.factors().begin(), a.add.factors().end());
  for (std::size_t s = 0; s < a.rank(); ++s) {
    Vec b = a.gen(s);
    auto sol = solve_congruences(m, std::vector<Integer>(b.begin(), b.end()), moduli);
    Vec expr(words.size());
    for (std::size_t w = 0; w < words.size(); ++w)
      expr[w] = static_cast<std::int64_t>(mod_floor(static_cast<std::int64_t>(sol->particular[w] % a.add.exponent()),
                                                    a.add.exponent()));
    p.basis_expr.push_back(std::move(expr));
  }
  return p;
}

// Images of the words of one level, or nullopt when a relation fails.
std::optional<std::vector<Mat>> word_images(const EndAlgebra& end, const Level& lv, const std::vector<Mat>& gen_images) {
  const auto& c = lv.closure;
  std::vector<Mat> img(c.words.size());
  img[0] = end.identity();
  for (std::size_t w = 1; w < c.words.size(); ++w) img[w] = end.mul(gen_images[c.via[w]], img[c.parent[w]]);
  for (const auto& h : c.hits)
    if (end.mul(gen_images[h.gen], img[h.word]) != img[h.target]) return std::nullopt;
  for (const auto& rel : lv.relations) {
    Mat acc = end.zero();
    for (std::size_t w = 0; w < rel.size(); ++w) end.axpy(acc, rel[w], img[w]);
    if (!end.is_zero(acc)) return std::nullopt;
  }
  return img;
}

// All ring homs a -> End(g), as matrices for each additive generator of a.
std::vector<std::vector<Mat>> ring_homs_to_end(const FiniteRing& a, const Plan& plan, const FiniteAbelianGroup& g) {
  if (a.add.exponent() % g.exponent() != 0) return {};
  EndAlgebra end{g, g.rank()};
  std::vector<std::vector<Mat>> out;
  if (plan.gens.empty()) {
    // a is generated by 1 additively.
    std::vector<Mat> imgs;
    for (std::size_t s = 0; s < a.rank(); ++s) {
      Mat acc = end.zero();
      end.axpy(acc, plan.basis_expr[s][0], end.identity());
      imgs.push_back(acc);
    }
    out.push_back(std::move(imgs));
    return out;
  }
  std::vector<Mat> all = end.all();
  std::vector<std::vector<Mat>> candidates(plan.gens.size());
  for (std::size_t r = 0; r < plan.gens.size(); ++r)
    for (const auto& x : all) {
      std::vector<Mat> pw{end.identity()};
      while (pw.size() < plan.powers[r]) pw.push_back(end.mul(x, pw.back()));
      bool ok = true;
      for (const auto& rel : plan.monogenic[r]) {
        Mat acc = end.zero();
        for (std::size_t t = 0; t < rel.size(); ++t) end.axpy(acc, rel[t], pw[t]);
        if (!end.is_zero(acc)) {
          ok = false;
          break;
        }
      }
      if (ok) candidates[r].push_back(x);
    }
  std::vector<Mat> chosen(plan.gens.size());
  std::function<void(std::size_t)> search = [&](std::size_t r) {
    for (const auto& x : candidates[r]) {
      chosen[r] = x;
      auto img = word_images(end, plan.levels[r], chosen);
      if (!img) continue;
      if (r + 1 < plan.gens.size()) {
        search(r + 1);
        continue;
      }
      std::vector<Mat> imgs;
      for (std::size_t s = 0; s < a.rank(); ++s) {
        Mat acc = end.zero();
        for (std::size_t w = 0; w < img->size(); ++w) end.axpy(acc, plan.basis_expr[s][w], (*img)[w]);
        imgs.push_back(std::move(acc));
      }
      out.push_back(std::move(imgs));
      if (out.size() > enumeration_cap())
        throw Error(ErrorKind::SizeLimitExceeded, "module structure enumeration over " + a.name);
    }
  };
  search(0);
  return out;
}

std::vector<Vec> columns(const Mat& m, std::size_t k) {
  std::vector<Vec> cols(k, Vec(k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) cols[j][i] = m[i * k + j];
  return cols;
}

struct Cache {
  std::mutex mu;
  std::map<std::string, std::shared_ptr<const Plan>> plans;
  std::map<std::string, std::vector<ModulePtr>> structures;
  std::map<std::string, std::vector<Vec>> generators;
};

Cache& cache() {
  static Cache c;
  return c;
}

std::string gens_key(const std::vector<Vec>& gens) {
  std::string s;
  for (const auto& g : gens) {
    for (auto v : g) s += std::to_string(v) + ",";
    s += ";";
  }
  return s;
}

std::shared_ptr<const Plan> plan_for(const RingPtr& a, const std::vector<Vec>& gens) {
  std::string key = a->fingerprint + "|" + gens_key(gens);
  {
    std::lock_guard lock(cache().mu);
    auto it = cache().plans.find(key);
    if (it != cache().plans.end()) return it->second;
  }
  auto plan = std::make_shared<const Plan>(make_plan(*a, gens));
  std::lock_guard lock(cache().mu);
  return cache().plans.emplace(key, plan).first->second;
}

template <class F>
std::vector<ModulePtr> cached(const std::string& key, F compute) {
  {
    std::lock_guard lock(cache().mu);
    auto it = cache().structures.find(key);
    if (it != cache().structures.end()) return it->second;
  }
  auto v = compute();
  std::lock_guard lock(cache().mu);
  return cache().structures.emplace(key, std::move(v)).first->second;
}

// Module structures of a on g, each returned as per-generator column lists.
std::vector<std::vector<std::vector<Vec>>> action_tables(const RingPtr& a, const std::vector<Vec>& gens,
                                                         const FiniteAbelianGroup& g) {
  auto plan = plan_for(a, gens);
  std::vector<std::vector<std::vector<Vec>>> out;
  for (const auto& imgs : ring_homs_to_end(*a, *plan, g)) {
    std::vector<std::vector<Vec>> cols;
    for (const auto& m : imgs) cols.push_back(columns(m, g.rank()));
    out.push_back(std::move(cols));
  }
  return out;
}

}  // namespace

std::vector<Vec> ring_generators(const RingPtr& ring) {
  {
    std::lock_guard lock(cache().mu);
    auto it = cache().generators.find(ring->fingerprint);
    if (it != cache().generators.end()) return it->second;
  }
  auto gens = choose_generators(*ring);
  std::lock_guard lock(cache().mu);
  return cache().generators.emplace(ring->fingerprint, std::move(gens)).first->second;
}

std::vector<ModulePtr> module_classes(const RingPtr& ring, Side side, const FiniteAbelianGroup& g) {
  const char* tag = side == Side::Left ? "CL|" : side == Side::Right ? "CR|" : "CB|";
  return cached(tag + ring->fingerprint + "|" + g.to_string(), [&] {
    auto all = side == Side::Left    ? left_module_structures(ring, g)
               : side == Side::Right ? right_module_structures(ring, g)
                                     : bimodule_structures(ring, ring, g);
    return isomorphism_classes(all);
  });
}

std::vector<ModulePtr> enumerate_module_classes(const RingPtr& ring, Side side, std::uint64_t bound) {
  std::vector<ModulePtr> out;
  for (std::uint64_t n = 1; n <= bound; ++n)
    for (const auto& g : abelian_groups_of_order(n)) {
      auto part = module_classes(ring, side, g);
      out.insert(out.end(), part.begin(), part.end());
    }
  return out;
}

std::vector<ModulePtr> left_module_structures(const RingPtr& ring, const FiniteAbelianGroup& g) {
  return cached("L|" + ring->fingerprint + "|" + g.to_string(), [&] {
    std::vector<ModulePtr> out;
    for (auto& cols : action_tables(ring, ring_generators(ring), g)) {
      ModuleRep m;
      m.name = "L" + std::to_string(out.size()) + "_" + g.to_string();
      m.group = g;
      m.left = Action{ring, std::move(cols)};
      out.push_back(make_module(std::move(m)));
    }
    return out;
  });
}

std::vector<ModulePtr> right_module_structures(const RingPtr& ring, const FiniteAbelianGroup& g) {
  return cached("R|" + ring->fingerprint + "|" + g.to_string(), [&] {
    RingPtr op = opposite_ring(ring);
    std::vector<ModulePtr> out;
    for (auto& cols : action_tables(op, ring_generators(op), g)) {
      ModuleRep m;
      m.name = "R" + std::to_string(out.size()) + "_" + g.to_string();
      m.group = g;
      m.right = Action{ring, std::move(cols)};
      out.push_back(make_module(std::move(m)));
    }
    return out;
  });
}

std::vector<ModulePtr> bimodule_structures(const RingPtr& a, const RingPtr& b, const FiniteAbelianGroup& g) {
  return cached("B|" + a->fingerprint + "|" + b->fingerprint + "|" + g.to_string(), [&] {
    TensorRing t = tensor_ring(a, opposite_ring(b));
    std::vector<Vec> gens;
    Vec one_b = b->one;
    for (const auto& x : ring_generators(a)) gens.push_back(t.pure(x, one_b));
    for (const auto& y : ring_generators(b)) gens.push_back(t.pure(a->one, y));
    std::vector<ModulePtr> out;
    for (auto& cols : action_tables(t.ring, gens, g)) {
      // Re-express through pure tensors: left action of a_s, right action of b_t.
      auto act = [&](const Vec& elem) {
        std::vector<Vec> c(g.rank(), g.zero());
        for (std::size_t s = 0; s < elem.size(); ++s)
          for (std::size_t j = 0; j < g.rank(); ++j) g.axpy(c[j], elem[s], cols[s][j]);
        return c;
      };
      ModuleRep m;
      m.name = "B" + std::to_string(out.size()) + "_" + g.to_string();
      m.group = g;
      Action left{a, {}}, right{b, {}};
      for (std::size_t s = 0; s < a->rank(); ++s) left.cols.push_back(act(t.pure(a->gen(s), one_b)));
      for (std::size_t s = 0; s < b->rank(); ++s) right.cols.push_back(act(t.pure(a->one, b->gen(s))));
      m.left = std::move(left);
      m.right = std::move(right);
      out.push_back(make_module(std::move(m)));
    }
    return out;
  });
}

std::vector<ModulePtr> enumerate_modules(const RingPtr& ring, Side side, std::uint64_t bound) {
  std::vector<ModulePtr> out;
  for (std::uint64_t n = 1; n <= bound; ++n)
    for (const auto& g : abelian_groups_of_order(n)) {
      auto part = side == Side::Left    ? left_module_structures(ring, g)
                  : side == Side::Right ? right_module_structures(ring, g)
                                        : bimodule_structures(ring, ring, g);
      out.insert(out.end(), part.begin(), part.end());
      if (out.size() > enumeration_cap()) throw Error(ErrorKind::SizeLimitExceeded, "module enumeration");
    }
  return out;
}

std::optional<ModuleMap> find_isomorphism(const ModulePtr& x, const ModulePtr& y) {
  if (x->group != y->group) return std::nullopt;
  if (x->left.has_value() != y->left.has_value() || x->right.has_value() != y->right.has_value()) return std::nullopt;
  if (same_module(*x, *y)) return identity_map(x);
  HomSpace h = module_homs(x, y);
  std::optional<ModuleMap> found;
  h.module->group.for_each_element([&](const Vec& c) {
    ModuleMap f = h.map(c);
    if (is_iso(f)) {
      found = std::move(f);
      return false;
    }
    return true;
  });
  return found;
}

std::vector<ModulePtr> isomorphism_classes(const std::vector<ModulePtr>& mods) {
  std::vector<ModulePtr> reps;
  std::vector<std::uint64_t> end_sizes;
  for (const auto& m : mods) {
    std::uint64_t es = module_homs(m, m).size();
    bool seen = false;
    for (std::size_t r = 0; r < reps.size() && !seen; ++r)
      seen = end_sizes[r] == es && find_isomorphism(reps[r], m).has_value();
    if (!seen) {
      reps.push_back(m);
      end_sizes.push_back(es);
    }
  }
  return reps;
}

}  // namespace descent_kit
