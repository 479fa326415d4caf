#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "commands.hpp"
#include "descent_kit/criteria.hpp"

using namespace descent_kit;
using namespace descent_kit::cli;

namespace {

namespace fs = std::filesystem;

const char* kZ2 = R"({
  "kind": "ring",
  "name": "Z/2",
  "additive": [2],
  "mult": [[[1]]],
  "one": [1]
}
)";

// 1, x, y over Z/2 with x x = y, x y = 0, y x = 1: (x x) x = 1 but x (x x) = 0.
const char* kNonAssociative = R"({
  "kind": "ring",
  "name": "broken",
  "additive": [2, 2, 2],
  "mult": [[[1, 0, 0], [0, 1, 0], [0, 0, 1]],
           [[0, 1, 0], [0, 0, 1], [0, 0, 0]],
           [[0, 0, 1], [1, 0, 0], [0, 0, 0]]],
  "one": [1, 0, 0]
}
)";

// Z/2 -> Z/4 is not additive: 2 * image(1) = 2 != 0.
const char* kNonAdditiveHom = R"({
  "kind": "hom",
  "name": "bad",
  "source": {"name": "Z/2", "additive": [2], "mult": [[[1]]], "one": [1]},
  "target": {"name": "Z/4", "additive": [4], "mult": [[[1]]], "one": [1]},
  "images": [[1]]
}
)";

fs::path temp_dir(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("descent_kit_" + name + "_" + std::to_string(::getpid()));
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p, std::ios::binary) << text; }

struct CliRun {
  int code;
  std::string out, err;
};

CliRun run(std::vector<std::string> args) {
  args.insert(args.begin(), "descent-kit");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = run_command(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

Instance find(const std::vector<Instance>& insts, const std::string& name) {
  for (const auto& i : insts)
    if (i.name == name) return i;
  throw std::runtime_error("missing " + name);
}

}  // namespace

TEST(Parse, MinimalRing) {
  Instance inst = parse_instance(kZ2);
  EXPECT_EQ(inst.kind, InstanceKind::Ring);
  EXPECT_TRUE(same_ring(inst.ring, cyclic_ring(2)));
  EXPECT_EQ(serialize_instance(inst), kZ2);
}

TEST(Parse, NonAssociativeRingNamesTheTriple) {
  try {
    parse_instance(kNonAssociative);
    FAIL() << "expected a validation error";
  } catch (const InstanceError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ValidationError);
    ASSERT_TRUE(e.violation().has_value());
    EXPECT_EQ(e.violation()->axiom, "associativity");
    EXPECT_EQ(e.violation()->witness.size(), 3u);
  }
  // Without validation the table is accepted as data.
  EXPECT_NO_THROW(parse_instance(kNonAssociative, false));
}

TEST(Parse, NonAdditiveHomIsRejected) {
  try {
    parse_instance(kNonAdditiveHom);
    FAIL() << "expected a validation error";
  } catch (const InstanceError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ValidationError);
    ASSERT_TRUE(e.violation().has_value());
    EXPECT_EQ(e.violation()->axiom, "additive");
  }
}

TEST(Parse, ErrorsCarryPositions) {
  std::string extra = std::string(kZ2).replace(std::string(kZ2).find("\"one\""), 5, "\"uno\": 1,\n  \"one\"");
  try {
    parse_instance(extra);
    FAIL();
  } catch (const InstanceError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ParseError);
    EXPECT_EQ(e.pointer(), "/uno");
    EXPECT_EQ(e.line(), 6u);
    EXPECT_EQ(e.column(), 10u);
  }

  try {
    parse_instance("{\n  \"kind\": \"ring\",\n  \"name\": ]\n}");
    FAIL();
  } catch (const InstanceError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ParseError);
    EXPECT_EQ(e.line(), 3u);
    EXPECT_EQ(e.column(), 11u);
  }

  // A structure constant with the wrong length is located at that entry.
  std::string short_vec = R"({"kind": "ring", "name": "x", "additive": [2, 2],
 "mult": [[[1, 0], [0, 1]], [[0, 1], [0]]], "one": [1, 0]})";
  try {
    parse_instance(short_vec);
    FAIL();
  } catch (const InstanceError& e) {
    EXPECT_EQ(e.pointer(), "/mult/1/1");
    EXPECT_EQ(e.line(), 2u);
    EXPECT_EQ(e.column(), 38u);
  }
}

TEST(Parse, RejectsMalformedFields) {
  auto kind_of = [](const std::string& text) {
    try {
      parse_instance(text);
    } catch (const InstanceError& e) {
      return e.kind();
    }
    return ErrorKind::InvalidArgument;
  };
  EXPECT_EQ(kind_of(R"({"kind": "ring", "name": "x", "additive": [4, 2], "mult": [], "one": []})"), ErrorKind::ParseError);
  EXPECT_EQ(kind_of(R"({"kind": "ring", "name": "x", "additive": [1], "mult": [[[0]]], "one": [0]})"), ErrorKind::ParseError);
  EXPECT_EQ(kind_of(R"({"kind": "field", "name": "x"})"), ErrorKind::ParseError);
  EXPECT_EQ(kind_of(R"({"kind": "ring", "name": "x", "additive": [2], "mult": [[[1]]], "one": [1], "base": "Q"})"),
            ErrorKind::ParseError);
  EXPECT_EQ(kind_of(R"({"kind": "ring", "name": "x", "additive": [2], "mult": [[["1"]]], "one": [1]})"),
            ErrorKind::ParseError);
  // A one-sided module must name exactly one side.
  EXPECT_EQ(kind_of(R"({"kind": "module", "name": "x", "additive": [2]})"), ErrorKind::ParseError);
}

TEST(Serialize, RoundTripsEveryCorpusInstance) {
  for (const auto& inst : corpus_generate()) {
    std::string text = serialize_instance(inst);
    Instance back = parse_instance(text);
    EXPECT_EQ(serialize_instance(back), text) << inst.name;
    EXPECT_EQ(back.expect, inst.expect);
    if (inst.hom) {
      EXPECT_TRUE(same_ring(back.hom->source, inst.hom->source));
      EXPECT_TRUE(same_ring(back.hom->target, inst.hom->target));
      EXPECT_EQ(back.hom->images, inst.hom->images);
    }
    if (inst.module) EXPECT_TRUE(same_module(*back.module, *inst.module)) << inst.name;
  }
}

TEST(Serialize, MatrixRingKeepsItsBase) {
  Instance inst;
  inst.kind = InstanceKind::Ring;
  inst.name = "M2(Z/3)";
  inst.ring = matrix_ring(cyclic_ring(3), 2);
  Instance back = parse_instance(serialize_instance(inst));
  EXPECT_TRUE(same_ring(back.ring, inst.ring));
  EXPECT_TRUE(same_ring(base_of(back.ring), cyclic_ring(3)));
}

TEST(Corpus, SmallSpecs) {
  auto cyclic = corpus_spec_from_json(
      R"({"cyclic_max": 4, "products": [], "matrix_primes": [], "dual_numbers": [], "upper_triangular": [],
          "diagonals": [], "bimodules": false})");
  auto insts = corpus_generate(cyclic);
  for (std::int64_t n : {2, 3, 4}) {
    Instance id = find(insts, "id_Z" + std::to_string(n));
    EXPECT_TRUE(same_ring(id.hom->source, cyclic_ring(n)));
    EXPECT_TRUE(id.expect.at("descends"));
  }
  EXPECT_FALSE(find(insts, "red_Z4_Z2").expect.at("descends"));

  auto matrix = corpus_spec_from_json(R"({"cyclic_max": 2, "products": [], "matrix_primes": [2], "matrix_max_n": 2,
      "dual_numbers": [], "upper_triangular": [], "diagonals": ["M2Z2"], "bimodules": false})");
  Instance d = find(corpus_generate(matrix), "diag_M2Z2");
  RingPtr m2 = matrix_ring(cyclic_ring(2), 2);
  EXPECT_TRUE(same_ring(d.hom->source, m2));
  EXPECT_TRUE(same_ring(d.hom->target, product_ring(m2, m2)));

  EXPECT_THROW(corpus_spec_from_json(R"({"cyclic": 4})"), Error);
  CorpusSpec huge;
  huge.matrix_primes = {3};
  huge.matrix_max_n = 5;
  try {
    corpus_generate(huge);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::CapExceeded);
  }
}

TEST(Corpus, DefaultIsDeterministicAndLargeEnough) {
  auto a = corpus_generate(), b = corpus_generate();
  ASSERT_EQ(a.size(), b.size());
  std::size_t separable_homs = 0;
  std::set<std::string> names;
  for (std::size_t k = 0; k < a.size(); ++k) {
    EXPECT_EQ(serialize_instance(a[k]), serialize_instance(b[k]));
    EXPECT_TRUE(names.insert(a[k].name).second);
    if (k) EXPECT_LT(a[k - 1].name, a[k].name);
    if (a[k].hom && separability_idempotent(a[k].hom->source).verdict.holds()) ++separable_homs;
  }
  EXPECT_GE(separable_homs, 30u);
  for (const char* n : {"id_Z2", "id_Z3", "id_Z5", "id_Z2xZ3", "id_M2Z2", "id_M2Z3", "diag_M2Z2"})
    EXPECT_TRUE(names.count(n)) << n;
}

TEST(Command, CheckDescentExitCodes) {
  fs::path dir = temp_dir("check");
  ASSERT_EQ(run({"corpus", "--out", dir.string()}).code, kOk);

  CliRun id = run({"check-descent", "--bound", "8", (dir / "id_Z2.json").string()});
  EXPECT_EQ(id.code, kOk);
  auto j = Json::parse(id.out);
  for (auto it = j["criteria"].begin(); it != j["criteria"].end(); ++it) {
    std::string v = it.value().contains("overall") ? it.value()["overall"]["verdict"] : it.value()["verdict"];
    EXPECT_TRUE(v == "Yes" || v == "YesUpToBound") << it.key();
  }
  EXPECT_EQ(j["bounds"]["bound"], 8);

  fs::path ledger = dir / "ledger.jsonl";
  CliRun red = run({"--ledger", ledger.string(), "check-descent", (dir / "red_Z4_Z2.json").string()});
  EXPECT_EQ(red.code, kNegative);
  auto rec = Json::parse(slurp(ledger));
  EXPECT_EQ(rec["instance"], "red_Z4_Z2");
  EXPECT_EQ(rec["bounds"]["bound"], 16);
  EXPECT_EQ(rec["verdicts"]["left_pure"], "No");
  EXPECT_TRUE(rec["witnesses"].contains("right_comonadic"));
  EXPECT_TRUE(rec["witnesses"]["left_pure_oracle"].contains("module"));
  EXPECT_EQ(rec["hash"].get<std::string>().size(), 64u);

  EXPECT_EQ(run({"check-descent", "--jt", (dir / "id_M2Z2.json").string()}).code, kInputError);
  EXPECT_EQ(run({"check-descent", "--jt", "--bound", "4", (dir / "diag_Z2.json").string()}).code, kOk);
  EXPECT_EQ(run({"check-descent", (dir / "bimod_Z2_free2.json").string()}).code, kInputError);
  EXPECT_EQ(run({"check-descent", (dir / "missing.json").string()}).code, kInputError);
  EXPECT_EQ(run({"frobnicate"}).code, kInputError);
  fs::remove_all(dir);
}

TEST(Command, ValidateReportsLocatedErrors) {
  fs::path dir = temp_dir("validate");
  write(dir / "good.json", kZ2);
  write(dir / "bad.json", kNonAssociative);
  EXPECT_EQ(run({"validate", (dir / "good.json").string()}).code, kOk);
  CliRun bad = run({"validate", (dir / "bad.json").string()});
  EXPECT_EQ(bad.code, kInputError);
  EXPECT_NE(bad.err.find("ValidationError"), std::string::npos);
  EXPECT_NE(bad.err.find("associativity"), std::string::npos);
  fs::remove_all(dir);
}

TEST(Command, PurityOracleAgreesOnCorpus) {
  fs::path dir = temp_dir("purity");
  ASSERT_EQ(run({"corpus", "--out", dir.string()}).code, kOk);
  CliRun r = run({"purity", "--oracle", "--bound", "8", dir.string()});
  EXPECT_EQ(r.code, kOk) << r.out;
  EXPECT_EQ(run({"purity", (dir / "id_Z3.json").string()}).code, kOk);
  EXPECT_EQ(run({"purity", "--side", "left", (dir / "proj1_Z2xZ3.json").string()}).code, kNegative);
  fs::remove_all(dir);
}

TEST(Command, OtherSubcommands) {
  fs::path dir = temp_dir("other");
  ASSERT_EQ(run({"corpus", "--out", dir.string()}).code, kOk);
  EXPECT_EQ(run({"separability", (dir / "id_M2Z3.json").string()}).code, kOk);
  EXPECT_EQ(run({"separability", (dir / "id_D2.json").string()}).code, kNegative);
  EXPECT_EQ(run({"matrix-check", "--bound", "8", (dir / "diag_M2Z2.json").string()}).code, kOk);
  EXPECT_EQ(run({"matrix-check", (dir / "id_T2Z2.json").string()}).code, kInputError);
  EXPECT_EQ(run({"endo-check", "--bound", "8", (dir / "bimod_Z2_free2.json").string()}).code, kOk);
  EXPECT_EQ(run({"endo-check", "--bound", "4", (dir / "bimod_Z4_torsion.json").string()}).code, kNegative);
  CliRun text = run({"--format", "text", "check-descent", "--bound", "4", (dir / "id_Z2.json").string()});
  EXPECT_NE(text.out.find("left_pure"), std::string::npos);
  fs::remove_all(dir);
}

TEST(Command, ReportLedgerIsReproducible) {
  fs::path dir = temp_dir("ledger");
  ::setenv("SOURCE_DATE_EPOCH", "1700000000", 1);
  CliRun a = run({"--ledger", (dir / "a.jsonl").string(), "--jobs", "1", "report", "--bound", "4"});
  CliRun b = run({"--ledger", (dir / "b.jsonl").string(), "--jobs", "4", "report", "--bound", "4"});
  ::unsetenv("SOURCE_DATE_EPOCH");
  EXPECT_EQ(a.code, kOk) << a.out;
  EXPECT_EQ(b.code, kOk);
  std::string la = slurp(dir / "a.jsonl");
  EXPECT_EQ(la, slurp(dir / "b.jsonl"));
  // One record per instance, ordered by name, stamped from SOURCE_DATE_EPOCH.
  std::istringstream lines(la);
  std::string line, prev;
  std::size_t n = 0;
  while (std::getline(lines, line)) {
    auto rec = Json::parse(line);
    EXPECT_EQ(rec["timestamp"], "2023-11-14T22:13:20Z");
    EXPECT_LT(prev, rec["instance"].get<std::string>());
    prev = rec["instance"];
    ++n;
  }
  EXPECT_EQ(n, corpus_generate().size());
  fs::remove_all(dir);
}
