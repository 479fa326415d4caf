#pragma once

#include <optional>
#include <string>

#include "descent_kit/module.hpp"

namespace descent_kit {

enum class Verdict { Yes, No, YesUpToBound, HypothesisNotMet };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Yes: return "Yes";
    case Verdict::No: return "No";
    case Verdict::YesUpToBound: return "YesUpToBound";
    case Verdict::HypothesisNotMet: return "HypothesisNotMet";
  }
  return "?";
}

/// A decision with its evidence. Yes carries a witness map (section,
/// retraction, ...); No from an oracle carries the counterexample.
struct CriterionVerdict {
  std::string id;
  Verdict verdict = Verdict::No;
  /// Enumeration bound behind YesUpToBound, or behind an oracle's No.
  std::uint64_t bound = 0;
  std::optional<ModuleMap> map;
  ModulePtr module;
  std::optional<Vec> element;
  std::string notes;

  bool holds() const { return verdict == Verdict::Yes || verdict == Verdict::YesUpToBound; }
};

}  // namespace descent_kit
