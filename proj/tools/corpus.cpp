#include "corpus.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <set>

namespace descent_kit::cli {

namespace {

struct Family {
  std::vector<std::pair<std::string, RingPtr>> rings;

  void add(const std::string& t, RingPtr r) {
    if (r->order() > enumeration_cap())
      throw Error(ErrorKind::CapExceeded, r->name + " has " + std::to_string(r->order()) + " elements");
    rings.emplace_back(t, std::move(r));
  }
  RingPtr find(const std::string& t) const {
    for (const auto& [name, r] : rings)
      if (name == t) return r;
    return nullptr;
  }
};

struct Builder {
  std::vector<Instance> out;
  std::set<std::string> seen;

  void hom(const std::string& name, const RingHom& h, std::optional<bool> descends) {
    std::string key = h.source->fingerprint + "->" + h.target->fingerprint;
    for (const auto& v : h.images)
      for (auto x : v) key += "," + std::to_string(x);
    if (!seen.insert(key).second) return;
    Instance inst;
    inst.kind = InstanceKind::Hom;
    inst.name = name;
    inst.hom = h;
    if (descends) inst.expect["descends"] = *descends;
    out.push_back(std::move(inst));
  }
  void bimodule(const std::string& name, const ModulePtr& m, bool descends) {
    Instance inst;
    inst.kind = InstanceKind::Bimodule;
    inst.name = name;
    ModuleRep rep = *m;
    rep.name = name;
    inst.module = make_module(std::move(rep));
    inst.expect["descends"] = descends;
    out.push_back(std::move(inst));
  }
};

std::vector<std::pair<std::int64_t, std::int64_t>> read_pairs(const nlohmann::json& j) {
  std::vector<std::pair<std::int64_t, std::int64_t>> out;
  for (const auto& p : j) {
    if (!p.is_array() || p.size() != 2) throw Error(ErrorKind::ParseError, "products: expected pairs");
    out.emplace_back(p[0].get<std::int64_t>(), p[1].get<std::int64_t>());
  }
  return out;
}

}  // namespace

std::string tag(const RingPtr& r) {
  std::string s;
  for (char c : r->name)
    if (std::isalnum(static_cast<unsigned char>(c))) s += c;
  return s;
}

CorpusSpec corpus_spec_from_json(const std::string& text) {
  CorpusSpec spec;
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ParseError, std::string("corpus spec: ") + e.what());
  }
  if (!j.is_object()) throw Error(ErrorKind::ParseError, "corpus spec: expected an object");
  try {
    for (auto it = j.begin(); it != j.end(); ++it) {
      const auto& v = it.value();
      if (it.key() == "cyclic_max") spec.cyclic_max = v.get<std::int64_t>();
      else if (it.key() == "products") spec.products = read_pairs(v);
      else if (it.key() == "matrix_primes") spec.matrix_primes = v.get<std::vector<std::int64_t>>();
      else if (it.key() == "matrix_max_n") spec.matrix_max_n = v.get<std::size_t>();
      else if (it.key() == "dual_numbers") spec.dual_numbers = v.get<std::vector<std::int64_t>>();
      else if (it.key() == "upper_triangular") spec.upper_triangular = v.get<std::vector<std::int64_t>>();
      else if (it.key() == "diagonals") spec.diagonals = v.get<std::vector<std::string>>();
      else if (it.key() == "bimodules") spec.bimodules = v.get<bool>();
      else throw Error(ErrorKind::ParseError, "corpus spec: unknown field \"" + it.key() + "\"");
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ParseError, std::string("corpus spec: ") + e.what());
  }
  return spec;
}

std::vector<Instance> corpus_generate(const CorpusSpec& spec) {
  Family cyclic, products, matrices, duals, triangular;
  for (std::int64_t n = 2; n <= spec.cyclic_max; ++n) cyclic.add("Z" + std::to_string(n), cyclic_ring(n));
  for (auto [m, n] : spec.products) {
    RingPtr p = product_ring(cyclic_ring(m), cyclic_ring(n));
    products.add(tag(p), p);
  }
  for (std::int64_t p : spec.matrix_primes)
    for (std::size_t n = 1; n <= spec.matrix_max_n; ++n) {
      std::uint64_t order = 1;
      for (std::size_t e = 0; e < n * n; ++e) {
        order *= static_cast<std::uint64_t>(p);
        if (order > enumeration_cap())
          throw Error(ErrorKind::CapExceeded, "M_" + std::to_string(n) + "(Z/" + std::to_string(p) + ")");
      }
      // M_1(K) = K is already among the cyclic rings.
      if (n > 1) matrices.add("M" + std::to_string(n) + "Z" + std::to_string(p), matrix_ring(cyclic_ring(p), n));
    }
  for (std::int64_t p : spec.dual_numbers) duals.add("D" + std::to_string(p), dual_numbers(p));
  for (std::int64_t p : spec.upper_triangular) triangular.add("T2Z" + std::to_string(p), upper_triangular(p));

  Builder b;
  for (const Family* f : {&cyclic, &products, &matrices, &duals, &triangular})
    for (const auto& [t, r] : f->rings) b.hom("id_" + t, identity_hom(r), true);

  for (const auto& t : spec.diagonals) {
    RingPtr r;
    for (const Family* f : {&cyclic, &products, &matrices, &duals, &triangular})
      if (!r) r = f->find(t);
    if (!r) throw Error(ErrorKind::InvalidArgument, "corpus spec: no ring tagged " + t);
    // A x A is free of rank 2 over A.
    b.hom("diag_" + t, diagonal_hom(r), true);
  }

  for (auto [m, n] : spec.products) {
    RingPtr a = cyclic_ring(m), c = cyclic_ring(n), p = product_ring(a, c);
    std::string t = tag(p);
    // Projections kill a factor, so they are not injective.
    b.hom("proj1_" + t, projection_hom(p, a, c, true), false);
    b.hom("proj2_" + t, projection_hom(p, a, c, false), false);
    // Z/mn -> Z/m x Z/n is an isomorphism when gcd(m, n) = 1.
    if (std::gcd(m, n) == 1 && m * n <= spec.cyclic_max) b.hom("crt_Z" + std::to_string(m * n) + "_" + t,
                                                            unit_hom(cyclic_ring(m * n), p), true);
  }

  for (std::int64_t n = 2; n <= spec.cyclic_max; ++n)
    for (std::int64_t m = 2; m < n; ++m)
      if (n % m == 0) b.hom("red_Z" + std::to_string(n) + "_Z" + std::to_string(m), reduction_hom(n, m), false);

  // Over a field every nonzero algebra is free, so K -> A splits as a K-map.
  auto is_prime = [](std::int64_t p) {
    for (std::int64_t d = 2; d * d <= p; ++d)
      if (p % d == 0) return false;
    return p >= 2;
  };
  for (const Family* f : {&matrices, &duals, &triangular, &products})
    for (const auto& [t, r] : f->rings) {
      RingPtr k = base_of(r);
      if (is_cyclic_ring(*k) && is_prime(k->characteristic()))
        b.hom("scalar_Z" + std::to_string(k->characteristic()) + "_" + t, structure_hom(r), true);
    }

  if (spec.bimodules) {
    RingPtr z2 = cyclic_ring(2), z3 = cyclic_ring(3), z4 = cyclic_ring(4);
    b.bimodule("bimod_Z2_free2", direct_sum({regular_bimodule(z2), regular_bimodule(z2)}).module, true);
    b.bimodule("bimod_Z3_regular", regular_bimodule(z3), true);
    b.bimodule("bimod_M2Z2_regular", regular_bimodule(matrix_ring(z2, 2)), true);
    // Z/2 over Z/4 on the left: free on the right, but the criteria fail.
    b.bimodule("bimod_Z4_Z2_reduced", restrict_left(regular_bimodule(z2), reduction_hom(4, 2)), false);
    // Z/2 over Z/4 on both sides: not projective.
    b.bimodule("bimod_Z4_torsion", abelian_group_module(z4, FiniteAbelianGroup(Vec{2}), true, true), false);
  }

  std::sort(b.out.begin(), b.out.end(), [](const Instance& x, const Instance& y) { return x.name < y.name; });
  return b.out;
}

}  // namespace descent_kit::cli
