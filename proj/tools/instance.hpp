#pragma once

// Instance files: strict JSON schema for rings, modules, bimodules and ring
// homs, with located errors and a canonical serializer.

#include <map>
#include <optional>
#include <string>

#include "descent_kit/module.hpp"
#include "json.hpp"

namespace descent_kit::cli {

using Json = nlohmann::ordered_json;

enum class InstanceKind { Ring, Module, Bimodule, Hom };
const char* to_string(InstanceKind k);

struct Instance {
  InstanceKind kind = InstanceKind::Ring;
  std::string name;
  RingPtr ring;
  ModulePtr module;
  std::optional<RingHom> hom;
  /// Expected outcomes known independently of the checkers, e.g. "descends".
  std::map<std::string, bool> expect;
};

/// ParseError or ValidationError with a position in the source text.
class InstanceError : public Error {
 public:
  InstanceError(ErrorKind kind, std::size_t line, std::size_t column, std::string pointer, const std::string& what,
                std::optional<Violation> violation = std::nullopt);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  /// JSON pointer of the offending value ("" for syntax errors).
  const std::string& pointer() const { return pointer_; }
  const std::optional<Violation>& violation() const { return violation_; }

 private:
  std::size_t line_, column_;
  std::string pointer_;
  std::optional<Violation> violation_;
};

/// Strict parse: unknown fields are rejected and every table is shape- and
/// range-checked. With validate, axioms are checked too (ValidationError).
Instance parse_instance(const std::string& text, bool validate = true);
Instance load_instance(const std::string& path, bool validate = true);

/// Canonical text; parse_instance(serialize_instance(x)) reproduces x and
/// serializing again gives the same bytes.
std::string serialize_instance(const Instance& inst);

Json ring_json(const FiniteRing& r);
Json module_json(const ModuleRep& m);
Json hom_json(const RingHom& h);
/// Compact form for reports: group factors and images.
Json map_json(const ModuleMap& f);

/// Pretty printer used for instance files: objects one field per line,
/// arrays on a single line.
std::string canonical_dump(const Json& j);

/// SHA-256 of the text, lowercase hex.
std::string content_hash(const std::string& text);

}  // namespace descent_kit::cli
