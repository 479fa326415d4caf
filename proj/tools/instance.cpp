#include "instance.hpp"

#include <openssl/evp.h>

#include <cctype>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

namespace descent_kit::cli {

namespace {

struct Position {
  std::size_t line = 1, column = 1;
};

Position position_at(const std::string& text, std::size_t offset) {
  Position p;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++p.line;
      p.column = 1;
    } else {
      ++p.column;
    }
  }
  return p;
}

// Walks syntactically valid JSON text to find where the value at a pointer starts.
class Locator {
 public:
  explicit Locator(const std::string& text) : t_(text) {}

  std::size_t find(const std::vector<std::string>& path) {
    i_ = 0;
    std::size_t best = 0;
    ws();
    for (const auto& token : path) {
      best = i_;
      if (!descend(token)) return best;
      ws();
    }
    return i_;
  }

 private:
  const std::string& t_;
  std::size_t i_ = 0;

  void ws() {
    while (i_ < t_.size() && std::isspace(static_cast<unsigned char>(t_[i_]))) ++i_;
  }
  std::string string() {
    std::string s;
    ++i_;
    while (i_ < t_.size() && t_[i_] != '"') {
      if (t_[i_] == '\\') ++i_;
      if (i_ < t_.size()) s += t_[i_++];
    }
    ++i_;
    return s;
  }
  void skip() {
    ws();
    if (i_ >= t_.size()) return;
    char c = t_[i_];
    if (c == '"') {
      string();
    } else if (c == '{' || c == '[') {
      char close = c == '{' ? '}' : ']';
      ++i_;
      ws();
      while (i_ < t_.size() && t_[i_] != close) {
        if (c == '{') {
          string();
          ws();
          ++i_;
        }
        skip();
        ws();
        if (i_ < t_.size() && t_[i_] == ',') ++i_;
        ws();
      }
      ++i_;
    } else {
      while (i_ < t_.size() && !std::strchr(",]} \t\r\n", t_[i_])) ++i_;
    }
  }
  // Moves to the member or element named by token; false if absent.
  bool descend(const std::string& token) {
    if (i_ >= t_.size()) return false;
    if (t_[i_] == '{') {
      ++i_;
      ws();
      while (i_ < t_.size() && t_[i_] != '}') {
        std::string key = string();
        ws();
        ++i_;
        ws();
        if (key == token) return true;
        skip();
        ws();
        if (i_ < t_.size() && t_[i_] == ',') ++i_;
        ws();
      }
      return false;
    }
    if (t_[i_] == '[') {
      std::size_t want = std::stoul(token);
      ++i_;
      ws();
      for (std::size_t k = 0; i_ < t_.size() && t_[i_] != ']'; ++k) {
        if (k == want) return true;
        skip();
        ws();
        if (i_ < t_.size() && t_[i_] == ',') ++i_;
        ws();
      }
    }
    return false;
  }
};

// Schema error raised while reading; located against the text afterwards.
struct SchemaError {
  ErrorKind kind;
  std::vector<std::string> path;
  std::string message;
  std::optional<Violation> violation;
};

std::string pointer_of(const std::vector<std::string>& path) {
  std::string s;
  for (const auto& p : path) s += "/" + p;
  return s;
}

class Reader {
 public:
  Reader(const Json& j, std::vector<std::string> path) : j_(j), path_(std::move(path)) {}

  [[noreturn]] void fail(const std::string& msg) const { throw SchemaError{ErrorKind::ParseError, path_, msg, {}}; }

  Reader at(const std::string& key) const {
    if (!j_.is_object() || !j_.contains(key)) fail("missing field \"" + key + "\"");
    auto p = path_;
    p.push_back(key);
    return Reader(j_.at(key), p);
  }
  Reader at(std::size_t k) const {
    auto p = path_;
    p.push_back(std::to_string(k));
    return Reader(j_.at(k), p);
  }
  bool has(const std::string& key) const { return j_.is_object() && j_.contains(key); }

  void object(std::initializer_list<const char*> required, std::initializer_list<const char*> optional) const {
    if (!j_.is_object()) fail("expected an object");
    for (const char* k : required)
      if (!j_.contains(k)) fail(std::string("missing field \"") + k + "\"");
    for (auto it = j_.begin(); it != j_.end(); ++it) {
      bool known = false;
      for (const char* k : required) known = known || it.key() == k;
      for (const char* k : optional) known = known || it.key() == k;
      if (!known) at(it.key()).fail("unknown field \"" + it.key() + "\"");
    }
  }
  std::size_t array(std::optional<std::size_t> size = std::nullopt) const {
    if (!j_.is_array()) fail("expected an array");
    if (size && j_.size() != *size)
      fail("expected " + std::to_string(*size) + " entries, found " + std::to_string(j_.size()));
    return j_.size();
  }
  std::string str() const {
    if (!j_.is_string()) fail("expected a string");
    return j_.get<std::string>();
  }
  bool boolean() const {
    if (!j_.is_boolean()) fail("expected true or false");
    return j_.get<bool>();
  }
  std::int64_t integer() const {
    if (!j_.is_number_integer()) fail("expected an integer");
    return j_.get<std::int64_t>();
  }
  /// Coordinate vector in g, reduced into canonical range.
  Vec vec(const FiniteAbelianGroup& g) const {
    array(g.rank());
    Vec v;
    for (std::size_t k = 0; k < g.rank(); ++k) v.push_back(at(k).integer());
    return g.reduced(v);
  }
  const std::vector<std::string>& path() const { return path_; }

 private:
  const Json& j_;
  std::vector<std::string> path_;
};

FiniteAbelianGroup read_group(const Reader& r) {
  Vec factors;
  for (std::size_t k = 0, n = r.array(); k < n; ++k) {
    std::int64_t d = r.at(k).integer();
    if (d < 2) r.at(k).fail("invariant factors must be at least 2");
    if (k > 0 && d % factors.back() != 0) r.at(k).fail("each invariant factor must divide the next");
    factors.push_back(d);
  }
  return FiniteAbelianGroup(factors);
}

void check(const ValidationReport& rep, const Reader& r, const std::string& what) {
  if (rep.ok()) return;
  const Violation& v = rep.violations.front();
  throw SchemaError{ErrorKind::ValidationError, r.path(), what + " violates " + v.to_string(), v};
}

RingPtr read_ring(const Reader& r, bool validate, bool top_level) {
  if (top_level)
    r.object({"kind", "name", "additive", "mult", "one"}, {"base", "expect"});
  else
    r.object({"name", "additive", "mult", "one"}, {"base"});
  FiniteRing ring;
  ring.name = r.at("name").str();
  ring.add = read_group(r.at("additive"));
  const std::size_t k = ring.rank();
  Reader mult = r.at("mult");
  mult.array(k);
  ring.mult.assign(k, std::vector<Vec>(k));
  for (std::size_t i = 0; i < k; ++i) {
    mult.at(i).array(k);
    for (std::size_t j = 0; j < k; ++j) ring.mult[i][j] = mult.at(i).at(j).vec(ring.add);
  }
  ring.one = r.at("one").vec(ring.add);
  if (r.has("base")) {
    std::string b = r.at("base").str();
    std::int64_t n = 0;
    if (b.rfind("Z/", 0) == 0) {
      try {
        std::size_t used = 0;
        n = std::stoll(b.substr(2), &used);
        if (used != b.size() - 2) n = 0;
      } catch (const std::exception&) {
        n = 0;
      }
    }
    if (n < 2) r.at("base").fail("base must be written Z/n with n >= 2");
    ring.base = cyclic_ring(n);
    ring.base_map = {ring.one};
  }
  RingPtr out = make_ring(std::move(ring));
  if (validate) {
    check(validate_ring(*out), r, "ring");
    if (out->base && !out->add.is_zero(out->add.scale(out->base->characteristic(), out->one)))
      r.at("base").fail("characteristic of the base does not kill the ring");
  }
  return out;
}

std::optional<Action> read_action(const Reader& m, const char* side, const FiniteAbelianGroup& g, bool validate) {
  if (!m.has(side)) return std::nullopt;
  Reader a = m.at(side);
  a.object({"ring", "table"}, {});
  Action act;
  act.ring = read_ring(a.at("ring"), validate, false);
  Reader table = a.at("table");
  table.array(act.ring->rank());
  for (std::size_t r = 0; r < act.ring->rank(); ++r) {
    table.at(r).array(g.rank());
    std::vector<Vec> cols;
    for (std::size_t j = 0; j < g.rank(); ++j) cols.push_back(table.at(r).at(j).vec(g));
    act.cols.push_back(std::move(cols));
  }
  return act;
}

ModulePtr read_module(const Reader& r, bool bimodule, bool validate) {
  if (bimodule)
    r.object({"kind", "name", "additive", "left", "right"}, {"expect"});
  else
    r.object({"kind", "name", "additive"}, {"left", "right", "expect"});
  if (!bimodule && r.has("left") == r.has("right")) r.fail("a module has exactly one of \"left\" and \"right\"");
  ModuleRep m;
  m.name = r.at("name").str();
  m.group = read_group(r.at("additive"));
  m.left = read_action(r, "left", m.group, validate);
  m.right = read_action(r, "right", m.group, validate);
  ModulePtr out = make_module(std::move(m));
  if (validate) check(validate_module(*out), r, "module");
  return out;
}

RingHom read_hom(const Reader& r, bool validate) {
  r.object({"kind", "name", "source", "target", "images"}, {"expect"});
  RingHom h;
  h.source = read_ring(r.at("source"), validate, false);
  h.target = read_ring(r.at("target"), validate, false);
  Reader images = r.at("images");
  images.array(h.source->rank());
  for (std::size_t k = 0; k < h.source->rank(); ++k) h.images.push_back(images.at(k).vec(h.target->add));
  if (validate) check(validate_ring_hom(h), r, "ring hom");
  return h;
}

Json vec_json(const Vec& v) {
  Json a = Json::array();
  for (auto x : v) a.push_back(x);
  return a;
}

Json vecs_json(const std::vector<Vec>& vs) {
  Json a = Json::array();
  for (const auto& v : vs) a.push_back(vec_json(v));
  return a;
}

void dump(const Json& j, std::size_t indent, std::string& out) {
  if (!j.is_object()) {
    out += j.dump();
    return;
  }
  if (j.empty()) {
    out += "{}";
    return;
  }
  out += "{\n";
  std::size_t k = 0;
  for (auto it = j.begin(); it != j.end(); ++it, ++k) {
    out += std::string(indent + 2, ' ') + Json(it.key()).dump() + ": ";
    dump(it.value(), indent + 2, out);
    out += k + 1 < j.size() ? ",\n" : "\n";
  }
  out += std::string(indent, ' ') + "}";
}

}  // namespace

const char* to_string(InstanceKind k) {
  switch (k) {
    case InstanceKind::Ring: return "ring";
    case InstanceKind::Module: return "module";
    case InstanceKind::Bimodule: return "bimodule";
    case InstanceKind::Hom: return "hom";
  }
  return "?";
}

InstanceError::InstanceError(ErrorKind kind, std::size_t line, std::size_t column, std::string pointer,
                             const std::string& what, std::optional<Violation> violation)
    : Error(kind, std::to_string(line) + ":" + std::to_string(column) + (pointer.empty() ? "" : " " + pointer) +
                      ": " + what),
      line_(line),
      column_(column),
      pointer_(std::move(pointer)),
      violation_(std::move(violation)) {}

Instance parse_instance(const std::string& text, bool validate) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    // byte is one past the offending character.
    Position p = position_at(text, e.byte > 0 ? e.byte - 1 : 0);
    std::string msg = e.what();
    auto cut = msg.find("syntax error");
    throw InstanceError(ErrorKind::ParseError, p.line, p.column, "", cut == std::string::npos ? msg : msg.substr(cut));
  }
  Instance inst;
  try {
    Reader r(j, {});
    if (!j.is_object()) r.fail("expected an object");
    std::string kind = r.at("kind").str();
    inst.name = r.at("name").str();
    if (kind == "ring") {
      inst.kind = InstanceKind::Ring;
      inst.ring = read_ring(r, validate, true);
    } else if (kind == "module" || kind == "bimodule") {
      inst.kind = kind == "module" ? InstanceKind::Module : InstanceKind::Bimodule;
      inst.module = read_module(r, kind == "bimodule", validate);
    } else if (kind == "hom") {
      inst.kind = InstanceKind::Hom;
      inst.hom = read_hom(r, validate);
    } else {
      r.at("kind").fail("kind must be ring, module, bimodule or hom");
    }
    if (r.has("expect")) {
      Reader e = r.at("expect");
      if (!j.at("expect").is_object()) e.fail("expected an object");
      for (auto it = j.at("expect").begin(); it != j.at("expect").end(); ++it)
        inst.expect[it.key()] = e.at(it.key()).boolean();
    }
  } catch (const SchemaError& e) {
    Locator loc(text);
    Position p = position_at(text, loc.find(e.path));
    throw InstanceError(e.kind, p.line, p.column, pointer_of(e.path), e.message, e.violation);
  } catch (const InstanceError&) {
    throw;
  } catch (const Error& e) {
    throw InstanceError(ErrorKind::ParseError, 1, 1, "", e.what());
  }
  return inst;
}

Instance load_instance(const std::string& path, bool validate) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::InvalidArgument, "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_instance(ss.str(), validate);
  } catch (const InstanceError& e) {
    throw InstanceError(e.kind(), e.line(), e.column(), e.pointer(),
                        path + ": " + std::string(e.what()).substr(std::string(e.what()).find(": ") + 2),
                        e.violation());
  }
}

Json ring_json(const FiniteRing& r) {
  Json j;
  j["name"] = r.name;
  j["additive"] = vec_json(r.add.factors());
  Json mult = Json::array();
  for (const auto& row : r.mult) mult.push_back(vecs_json(row));
  j["mult"] = mult;
  j["one"] = vec_json(r.one);
  if (r.base) {
    if (!is_cyclic_ring(*r.base) || r.base_map != std::vector<Vec>{r.one})
      throw Error(ErrorKind::InvalidArgument, r.name + ": only a cyclic base Z/n can be written");
    j["base"] = "Z/" + std::to_string(r.base->characteristic());
  }
  return j;
}

Json module_json(const ModuleRep& m) {
  Json j;
  j["name"] = m.name;
  j["additive"] = vec_json(m.group.factors());
  for (auto [side, act] : {std::pair{"left", &m.left}, std::pair{"right", &m.right}}) {
    if (!*act) continue;
    Json a;
    a["ring"] = ring_json(*(*act)->ring);
    Json table = Json::array();
    for (const auto& cols : (*act)->cols) table.push_back(vecs_json(cols));
    a["table"] = table;
    j[side] = a;
  }
  return j;
}

Json hom_json(const RingHom& h) {
  Json j;
  j["source"] = ring_json(*h.source);
  j["target"] = ring_json(*h.target);
  j["images"] = vecs_json(h.images);
  return j;
}

Json map_json(const ModuleMap& f) {
  Json j;
  j["source"] = vec_json(f.source->group.factors());
  j["target"] = vec_json(f.target->group.factors());
  j["images"] = vecs_json(f.images);
  return j;
}

std::string serialize_instance(const Instance& inst) {
  Json body;
  switch (inst.kind) {
    case InstanceKind::Ring: body = ring_json(*inst.ring); break;
    case InstanceKind::Module:
    case InstanceKind::Bimodule: body = module_json(*inst.module); break;
    case InstanceKind::Hom: body = hom_json(*inst.hom); break;
  }
  Json j;
  j["kind"] = to_string(inst.kind);
  j["name"] = inst.name;
  for (auto it = body.begin(); it != body.end(); ++it)
    if (it.key() != "name") j[it.key()] = it.value();
  if (!inst.expect.empty()) {
    Json e = Json::object();
    for (const auto& [k, v] : inst.expect) e[k] = v;
    j["expect"] = e;
  }
  return canonical_dump(j) + "\n";
}

std::string canonical_dump(const Json& j) {
  std::string out;
  dump(j, 0, out);
  return out;
}

std::string content_hash(const std::string& text) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(text.data(), text.size(), md, &len, EVP_sha256(), nullptr);
  std::string hex;
  char buf[3];
  for (unsigned int k = 0; k < len; ++k) {
    std::snprintf(buf, sizeof buf, "%02x", md[k]);
    hex += buf;
  }
  return hex;
}

}  // namespace descent_kit::cli
