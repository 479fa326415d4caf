#include "commands.hpp"

#include <algorithm>
#include <atomic>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "descent_kit/endo.hpp"

namespace descent_kit::cli {

namespace {

namespace fs = std::filesystem;

Json vec_json(const Vec& v) {
  Json a = Json::array();
  for (auto x : v) a.push_back(x);
  return a;
}

Json witness_json(const CriterionVerdict& v) {
  Json w = Json::object();
  if (v.map) w["map"] = map_json(*v.map);
  if (v.module) w["module"] = module_json(*v.module);
  if (v.element) w["element"] = vec_json(*v.element);
  return w;
}

// Records v under key in the outcome and returns its report entry.
Json record(Outcome& o, const std::string& key, const CriterionVerdict& v) {
  o.verdicts[key] = to_string(v.verdict);
  Json w = witness_json(v);
  if (!w.empty()) o.witnesses[key] = w;
  Json r;
  r["verdict"] = to_string(v.verdict);
  if (v.bound > 0) r["bound"] = v.bound;
  if (!v.notes.empty()) r["notes"] = v.notes;
  return r;
}

Json record_comonadic(Outcome& o, const std::string& key, const ComonadicityReport& c) {
  Json r;
  r["overall"] = record(o, key, c.overall);
  r["unit"] = record(o, key + "_unit", c.unit);
  r["data"] = record(o, key + "_data", c.data);
  r["conservative"] = record(o, key + "_conservative", c.conservative);
  r["modules_checked"] = c.modules_checked;
  r["data_checked"] = c.data_checked;
  r["maps_checked"] = c.maps_checked;
  return r;
}

Outcome start(const Instance& inst, const std::string& command) {
  Outcome o;
  o.instance = inst.name;
  o.hash = content_hash(serialize_instance(inst));
  o.command = command;
  o.report["instance"] = inst.name;
  o.report["command"] = command;
  return o;
}

const RingHom& need_hom(const Instance& inst, const std::string& command) {
  if (inst.kind != InstanceKind::Hom)
    throw Error(ErrorKind::InvalidArgument, command + " needs a hom instance, got " + to_string(inst.kind));
  return *inst.hom;
}

void finish(Outcome& o) {
  o.report["bounds"] = o.bounds;
  o.report["exit"] = o.code;
}

Json theorem_3_4_json(Outcome& o, const Theorem34Report& rep) {
  Json c;
  c["separable"] = record(o, "separable", rep.separable);
  c["left_pure"] = record(o, "left_pure", rep.left_pure);
  c["right_pure"] = record(o, "right_pure", rep.right_pure);
  c["split_dual"] = record(o, "split_dual", rep.split_dual);
  c["left_pure_oracle"] = record(o, "left_pure_oracle", rep.left_pure_oracle);
  c["right_pure_oracle"] = record(o, "right_pure_oracle", rep.right_pure_oracle);
  c["right_comonadic"] = record_comonadic(o, "right_comonadic", rep.right_comonadic);
  c["left_comonadic"] = record_comonadic(o, "left_comonadic", rep.left_comonadic);
  return c;
}

// 0 when the exact criteria and both oracles are positive.
int descent_code(const Theorem34Report& rep) {
  if (rep.inconsistent) return kInconsistent;
  bool yes = rep.positive() && rep.right_comonadic.overall.holds() && rep.left_comonadic.overall.holds();
  return yes ? kOk : kNegative;
}

std::uint64_t effective_purity_bound(const RingHom& i, std::uint64_t bound, std::uint64_t purity_bound) {
  std::uint64_t pb = purity_bound ? purity_bound : bound;
  return std::min<std::uint64_t>(pb, i.source->order() * i.target->order());
}

}  // namespace

int combine_codes(int a, int b) {
  auto rank = [](int c) { return c == kInconsistent ? 3 : c == kInputError ? 2 : c == kNegative ? 1 : 0; };
  return rank(a) >= rank(b) ? a : b;
}

Outcome run_validate(const Instance& inst) {
  Outcome o = start(inst, "validate");
  o.report["kind"] = to_string(inst.kind);
  switch (inst.kind) {
    case InstanceKind::Ring: o.report["order"] = inst.ring->order(); break;
    case InstanceKind::Module:
    case InstanceKind::Bimodule: o.report["order"] = inst.module->order(); break;
    case InstanceKind::Hom:
      o.report["source_order"] = inst.hom->source->order();
      o.report["target_order"] = inst.hom->target->order();
      break;
  }
  o.verdicts["valid"] = "Yes";
  finish(o);
  return o;
}

Outcome run_separability(const Instance& inst) {
  Outcome o = start(inst, "separability");
  RingPtr a;
  if (inst.kind == InstanceKind::Ring) a = inst.ring;
  else if (inst.kind == InstanceKind::Hom) a = inst.hom->source;
  else throw Error(ErrorKind::InvalidArgument, "separability needs a ring or hom instance");
  auto res = separability_idempotent(a);
  o.report["ring"] = a->name;
  o.report["separable"] = record(o, "separable", res.verdict);
  if (res.verdict.element) o.report["idempotent"] = vec_json(*res.verdict.element);
  o.code = res.verdict.holds() ? kOk : kNegative;
  finish(o);
  return o;
}

Outcome run_purity(const Instance& inst, const std::string& sides, std::uint64_t bound, bool oracle) {
  const RingHom& i = need_hom(inst, "purity");
  Outcome o = start(inst, "purity");
  std::uint64_t pb = effective_purity_bound(i, bound, 0);
  o.bounds["bound"] = bound;
  if (oracle) o.bounds["purity_bound"] = pb;
  bool all_pure = true, agree = true, contradiction = false;
  for (auto [name, side, code] : {std::tuple{"left", PuritySide::Left, 'l'}, std::tuple{"right", PuritySide::Right, 'r'}}) {
    if (sides != "both" && sides != name) continue;
    ModuleMap f = ring_hom_as_module_map(i, code);
    CriterionVerdict exact = is_pure(f, side);
    all_pure = all_pure && exact.holds();
    Json side_report;
    side_report["exact"] = record(o, std::string(name) + "_pure", exact);
    if (oracle) {
      CriterionVerdict orc = purity_oracle(f, side, pb);
      side_report["oracle"] = record(o, std::string(name) + "_pure_oracle", orc);
      side_report["agree"] = exact.holds() == orc.holds();
      agree = agree && exact.holds() == orc.holds();
      contradiction = contradiction || (exact.holds() && orc.verdict == Verdict::No);
    }
    o.report[name] = side_report;
  }
  if (oracle) o.code = contradiction ? kInconsistent : agree ? kOk : kNegative;
  else o.code = all_pure ? kOk : kNegative;
  finish(o);
  return o;
}

Outcome run_check_descent(const Instance& inst, const DescentOptions& opt) {
  const RingHom& i = need_hom(inst, "check-descent");
  if (opt.joyal_tierney && (!i.source->is_commutative() || !i.target->is_commutative()))
    throw Error(ErrorKind::InvalidArgument, "--jt needs a map of commutative rings");
  Outcome o = start(inst, "check-descent");
  Theorem34Options t;
  t.bound = opt.bound;
  t.purity_bound = effective_purity_bound(i, opt.bound, opt.purity_bound);
  o.bounds["bound"] = t.bound;
  o.bounds["purity_bound"] = t.purity_bound;
  Theorem34Report rep = theorem_3_4_report(i, t);
  o.report["source"] = i.source->name;
  o.report["target"] = i.target->name;
  if (opt.joyal_tierney) o.report["joyal_tierney"] = true;
  o.report["criteria"] = theorem_3_4_json(o, rep);
  o.report["positive"] = rep.positive();
  o.report["equivalence"] = to_string(rep.equivalence);
  o.report["inconsistent"] = rep.inconsistent;
  if (!rep.notes.empty()) o.report["notes"] = rep.notes;
  o.verdicts["equivalence"] = to_string(rep.equivalence);
  o.code = descent_code(rep);
  finish(o);
  return o;
}

Outcome run_endo_check(const Instance& inst, std::uint64_t bound) {
  if (inst.kind != InstanceKind::Bimodule) throw Error(ErrorKind::InvalidArgument, "endo-check needs a bimodule instance");
  Outcome o = start(inst, "endo-check");
  Theorem34Options t;
  t.bound = bound;
  o.bounds["bound"] = bound;
  Theorem41Report rep = theorem_4_1_report(inst.module, t);
  Json c;
  c["projective"] = record(o, "projective", rep.projective);
  c["separable"] = record(o, "separable", rep.separable);
  c["faithful_left"] = record(o, "faithful_left", rep.faithful_left);
  c["faithful_right"] = record(o, "faithful_right", rep.faithful_right);
  o.report["criteria"] = c;
  o.report["endomorphism_ring"] = ring_json(*rep.endo.ring);
  o.report["i_m"] = Json::array();
  for (const auto& v : rep.endo.i_m.images) o.report["i_m"].push_back(vec_json(v));
  o.report["double_dual_iso"] = rep.double_dual_iso;
  o.report["base_case"] = rep.base_case;
  o.report["ring_map"] = theorem_3_4_json(o, rep.ring_map);
  o.report["equivalence"] = to_string(rep.equivalence);
  o.report["inconsistent"] = rep.inconsistent;
  if (!rep.notes.empty()) o.report["notes"] = rep.notes;
  o.verdicts["equivalence"] = to_string(rep.equivalence);
  bool yes = rep.projective.holds() && rep.faithful_left.holds() && rep.faithful_right.holds() &&
             rep.ring_map.positive();
  o.code = rep.inconsistent ? kInconsistent : yes ? kOk : kNegative;
  finish(o);
  return o;
}

Outcome run_matrix_check(const Instance& inst, std::uint64_t bound) {
  const RingHom& i = need_hom(inst, "matrix-check");
  Outcome o = start(inst, "matrix-check");
  Theorem34Options t;
  t.bound = bound;
  o.bounds["bound"] = bound;
  o.bounds["purity_bound"] = effective_purity_bound(i, bound, 0);
  Theorem44Report rep = theorem_4_4_report(i, t);
  o.report["n"] = rep.n;
  o.report["criteria"] = theorem_3_4_json(o, rep.ring_map);
  o.report["positive"] = rep.ring_map.positive();
  o.report["inconsistent"] = rep.inconsistent;
  if (!rep.ring_map.notes.empty()) o.report["notes"] = rep.ring_map.notes;
  o.code = rep.inconsistent ? kInconsistent : descent_code(rep.ring_map);
  finish(o);
  return o;
}

Outcome run_report_entry(const Instance& inst, std::uint64_t bound) {
  Outcome o;
  if (inst.kind == InstanceKind::Hom) {
    DescentOptions opt;
    opt.bound = bound;
    o = run_check_descent(inst, opt);
  } else if (inst.kind == InstanceKind::Bimodule) {
    o = run_endo_check(inst, bound);
  } else {
    o = run_validate(inst);
  }
  auto it = inst.expect.find("descends");
  if (it != inst.expect.end() && o.code != kInconsistent) {
    bool got = o.code == kOk;
    o.report["expected"] = it->second;
    o.report["as_expected"] = got == it->second;
    o.verdicts["as_expected"] = got == it->second ? "Yes" : "No";
    o.code = got == it->second ? kOk : kNegative;
    o.report["exit"] = o.code;
  }
  return o;
}

std::vector<Outcome> run_all(const std::vector<Instance>& insts, const std::function<Outcome(const Instance&)>& f,
                             std::size_t jobs) {
  std::vector<Outcome> out(insts.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k; (k = next++) < insts.size();) {
      try {
        out[k] = f(insts[k]);
      } catch (const std::exception& e) {
        out[k] = Outcome{};
        out[k].instance = insts[k].name;
        out[k].code = kInputError;
        out[k].error = e.what();
        out[k].report["instance"] = insts[k].name;
        out[k].report["error"] = e.what();
        out[k].report["exit"] = kInputError;
      }
    }
  };
  jobs = std::max<std::size_t>(1, std::min(jobs, insts.size()));
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < jobs; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  return out;
}

Json Ledger::record(const Outcome& o) {
  Json r;
  r["hash"] = o.hash;
  r["instance"] = o.instance;
  r["command"] = o.command;
  r["bounds"] = o.bounds;
  r["verdicts"] = o.verdicts;
  r["witnesses"] = o.witnesses;
  r["exit"] = o.code;
  r["timestamp"] = timestamp();
  r["version"] = DESCENT_KIT_VERSION;
  return r;
}

std::string Ledger::timestamp() {
  std::time_t t = std::time(nullptr);
  if (const char* env = std::getenv("SOURCE_DATE_EPOCH")) {
    char* end = nullptr;
    long long v = std::strtoll(env, &end, 10);
    if (end != env && *end == '\0') t = static_cast<std::time_t>(v);
  }
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void Ledger::append(const std::vector<Outcome>& outcomes) {
  std::lock_guard lock(mu_);
  std::ofstream f(path_, std::ios::app | std::ios::binary);
  if (!f) throw Error(ErrorKind::InvalidArgument, "cannot append to " + path_);
  for (const auto& o : outcomes) {
    if (!o.error.empty()) continue;
    f << record(o).dump() + "\n";
    f.flush();
  }
}

std::string text_table(const std::vector<Outcome>& outcomes) {
  std::size_t name_w = 8, key_w = 8, cmd_w = 7;
  for (const auto& o : outcomes) {
    name_w = std::max(name_w, o.instance.size());
    cmd_w = std::max(cmd_w, o.command.size());
    for (auto it = o.verdicts.begin(); it != o.verdicts.end(); ++it) key_w = std::max(key_w, it.key().size() + 2);
  }
  auto pad = [](const std::string& s, std::size_t w) { return s + std::string(w > s.size() ? w - s.size() : 0, ' '); };
  std::ostringstream os;
  os << pad("instance", name_w) << "  " << pad("command", cmd_w) << "  exit\n";
  for (const auto& o : outcomes) {
    os << pad(o.instance, name_w) << "  " << pad(o.command, cmd_w) << "  " << o.code << "\n";
    if (!o.error.empty()) os << "  error: " << o.error << "\n";
    for (auto it = o.verdicts.begin(); it != o.verdicts.end(); ++it)
      os << "  " << pad(it.key(), key_w) << "  " << it.value().get<std::string>() << "\n";
    if (!o.bounds.empty()) {
      os << "  " << pad("bounds", key_w) << " ";
      for (auto it = o.bounds.begin(); it != o.bounds.end(); ++it) os << " " << it.key() << "=" << it.value();
      os << "\n";
    }
  }
  return os.str();
}

namespace {

// Files with a flag telling whether they came from a directory listing.
std::vector<std::pair<std::string, bool>> expand_paths(const std::vector<std::string>& paths) {
  std::vector<std::pair<std::string, bool>> out;
  for (const auto& p : paths) {
    if (fs::is_directory(p)) {
      std::vector<std::string> files;
      for (const auto& e : fs::directory_iterator(p))
        if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path().string());
      std::sort(files.begin(), files.end());
      for (const auto& f : files) out.emplace_back(f, true);
    } else {
      out.emplace_back(p, false);
    }
  }
  return out;
}

// Instances round-tripped through their canonical text, as a file run would see them.
std::vector<Instance> reparsed(const std::vector<Instance>& insts) {
  std::vector<Instance> out;
  for (const auto& inst : insts) out.push_back(parse_instance(serialize_instance(inst)));
  return out;
}

struct Globals {
  std::string format = "json";
  std::string ledger;
  std::size_t jobs = std::max(1u, std::thread::hardware_concurrency());
};

int emit(const Globals& g, const std::vector<Outcome>& outs, std::ostream& out, int code) {
  if (g.format == "text") {
    out << text_table(outs);
  } else if (outs.size() == 1) {
    out << outs.front().report.dump(2) << "\n";
  } else {
    Json j;
    j["results"] = Json::array();
    for (const auto& o : outs) j["results"].push_back(o.report);
    j["exit"] = code;
    out << j.dump(2) << "\n";
  }
  if (!g.ledger.empty()) {
    Ledger l(g.ledger);
    l.append(outs);
  }
  return code;
}

}  // namespace

int run_command(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Descent and purity checks for homomorphisms of finite rings", "descent-kit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", DESCENT_KIT_VERSION);
  Globals g;
  app.add_option("--format", g.format, "Report format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--ledger", g.ledger, "Append one JSON-lines record per instance to this file");
  app.add_option("--jobs", g.jobs, "Worker threads for multi-instance runs")->check(CLI::PositiveNumber);

  std::vector<std::string> paths;
  std::uint64_t bound = 16, purity_bound = 0;
  std::string side = "both", out_dir, spec_file;
  bool oracle = false, jt = false;

  auto add_paths = [&](CLI::App* s, bool required) {
    auto* o = s->add_option("paths", paths, "Instance files or directories of *.json files");
    if (required) o->required();
  };
  auto add_bound = [&](CLI::App* s) { s->add_option("--bound", bound, "Module order bound for oracles")->capture_default_str(); };

  auto* validate = app.add_subcommand("validate", "Parse and validate instance files");
  add_paths(validate, true);
  auto* separability = app.add_subcommand("separability", "Separability idempotent of a ring (or a hom's source)");
  add_paths(separability, true);
  auto* purity = app.add_subcommand("purity", "Purity of a ring hom as a map of one-sided modules");
  add_paths(purity, true);
  purity->add_option("--side", side, "left, right or both")->check(CLI::IsMember({"left", "right", "both"}));
  add_bound(purity);
  purity->add_flag("--oracle", oracle, "Cross-check against the bounded tensor oracle");
  auto* descent = app.add_subcommand("check-descent", "All criteria and the descent oracle for a ring hom");
  add_paths(descent, true);
  add_bound(descent);
  descent->add_option("--purity-bound", purity_bound, "Bound for the purity oracles (default min(bound, |A||B|))");
  descent->add_flag("--jt", jt, "Commutative case: require commutative source and target");
  auto* endo = app.add_subcommand("endo-check", "Endomorphism ring criteria for an f.g. projective bimodule");
  add_paths(endo, true);
  add_bound(endo);
  auto* matrix = app.add_subcommand("matrix-check", "Criteria for a hom out of a full matrix ring");
  add_paths(matrix, true);
  add_bound(matrix);
  auto* corpus = app.add_subcommand("corpus", "Generate the instance corpus");
  corpus->add_option("--out", out_dir, "Write one file per instance into this directory");
  corpus->add_option("--spec", spec_file, "JSON corpus spec (defaults apply to absent fields)");
  auto* report = app.add_subcommand("report", "Run every check on a corpus (default: the generated corpus)");
  add_paths(report, false);
  add_bound(report);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e, out, err);
    return rc == 0 ? kOk : kInputError;
  }

  try {
    if (corpus->parsed()) {
      CorpusSpec spec;
      if (!spec_file.empty()) {
        std::ifstream in(spec_file);
        if (!in) throw Error(ErrorKind::InvalidArgument, "cannot read " + spec_file);
        std::stringstream ss;
        ss << in.rdbuf();
        spec = corpus_spec_from_json(ss.str());
      }
      auto insts = corpus_generate(spec);
      Json j;
      j["count"] = insts.size();
      j["instances"] = Json::array();
      if (!out_dir.empty()) fs::create_directories(out_dir);
      for (const auto& inst : insts) {
        Json e;
        e["name"] = inst.name;
        e["kind"] = to_string(inst.kind);
        for (const auto& [k, v] : inst.expect) e["expect"][k] = v;
        j["instances"].push_back(e);
        if (!out_dir.empty()) {
          std::ofstream f(fs::path(out_dir) / (inst.name + ".json"), std::ios::binary | std::ios::trunc);
          f << serialize_instance(inst);
          if (!f) throw Error(ErrorKind::InvalidArgument, "cannot write into " + out_dir);
        }
      }
      if (g.format == "text") {
        for (const auto& inst : insts) out << inst.name << "\n";
      } else {
        out << j.dump(2) << "\n";
      }
      return kOk;
    }

    // Load every instance; an unreadable file is an input error but the rest still run.
    // Kinds each command accepts; other instances found in directories are skipped.
    auto applies = [&](const Instance& i) {
      if (purity->parsed() || descent->parsed()) return i.kind == InstanceKind::Hom;
      if (matrix->parsed()) return i.kind == InstanceKind::Hom && matrix_degree(i.hom->source) > 0;
      if (endo->parsed()) return i.kind == InstanceKind::Bimodule;
      if (separability->parsed()) return i.kind == InstanceKind::Hom || i.kind == InstanceKind::Ring;
      return true;
    };
    std::vector<Instance> insts;
    std::vector<Outcome> failed;
    std::size_t skipped = 0;
    if (report->parsed() && paths.empty()) {
      insts = reparsed(corpus_generate());
    } else {
      for (const auto& [p, listed] : expand_paths(paths)) {
        try {
          Instance inst = load_instance(p);
          if (listed && !applies(inst)) {
            ++skipped;
            continue;
          }
          insts.push_back(std::move(inst));
        } catch (const Error& e) {
          err << e.what() << "\n";
          Outcome o;
          o.instance = p;
          o.code = kInputError;
          o.error = e.what();
          o.report["instance"] = p;
          o.report["error"] = e.what();
          o.report["exit"] = kInputError;
          failed.push_back(o);
        }
      }
    }
    std::sort(insts.begin(), insts.end(), [](const Instance& a, const Instance& b) { return a.name < b.name; });
    if (skipped) err << "skipped " << skipped << " instance(s) of another kind\n";

    std::function<Outcome(const Instance&)> f;
    if (validate->parsed()) f = run_validate;
    else if (separability->parsed()) f = run_separability;
    else if (purity->parsed()) f = [&](const Instance& i) { return run_purity(i, side, bound, oracle); };
    else if (descent->parsed())
      f = [&](const Instance& i) { return run_check_descent(i, DescentOptions{bound, purity_bound, jt}); };
    else if (endo->parsed()) f = [&](const Instance& i) { return run_endo_check(i, bound); };
    else if (matrix->parsed()) f = [&](const Instance& i) { return run_matrix_check(i, bound); };
    else f = [&](const Instance& i) { return run_report_entry(i, bound); };

    std::vector<Outcome> outs = run_all(insts, f, g.jobs);
    for (const auto& o : outs)
      if (!o.error.empty()) err << o.instance << ": " << o.error << "\n";
    outs.insert(outs.end(), failed.begin(), failed.end());
    int code = kOk;
    for (const auto& o : outs) code = combine_codes(code, o.code);
    return emit(g, outs, out, code);
  } catch (const std::exception& e) {
    err << e.what() << "\n";
    return kInputError;
  }
}

}  // namespace descent_kit::cli
