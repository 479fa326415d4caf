#pragma once

// Deterministic instance families for corpus runs.

#include <vector>

#include "instance.hpp"

namespace descent_kit::cli {

struct CorpusSpec {
  /// Z/n for 2 <= n <= cyclic_max.
  std::int64_t cyclic_max = 6;
  /// Z/m x Z/n for each pair.
  std::vector<std::pair<std::int64_t, std::int64_t>> products = {{2, 2}, {2, 3}, {3, 3}};
  std::vector<std::int64_t> matrix_primes = {2, 3};
  std::size_t matrix_max_n = 2;
  std::vector<std::int64_t> dual_numbers = {2, 3};
  std::vector<std::int64_t> upper_triangular = {2, 3};
  /// Rings whose diagonal into their square is included, by instance-name tag.
  std::vector<std::string> diagonals = {"Z2", "Z3", "Z4", "Z5", "Z6", "Z2xZ2", "M2Z2", "M2Z3"};
  bool bimodules = true;
};

/// Reads a spec object; absent fields keep their defaults, unknown fields are rejected.
CorpusSpec corpus_spec_from_json(const std::string& text);

/// Named, deduplicated instances sorted by name. Homs carry expect.descends
/// when the family determines it; bimodules likewise for the endomorphism
/// criteria. Throws CapExceeded when a requested ring exceeds the enumeration cap.
std::vector<Instance> corpus_generate(const CorpusSpec& spec = {});

/// Short name used inside instance names, e.g. "M2Z3" for M_2(Z/3).
std::string tag(const RingPtr& r);

}  // namespace descent_kit::cli
