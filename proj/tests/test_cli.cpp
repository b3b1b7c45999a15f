#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "frobenius/cli.hpp"
#include "frobenius/errors.hpp"

using namespace frob;

namespace {

const std::string kFixtures = FROB_FIXTURES;
const std::string kBin = FROB_BIN;

std::string fixture(const std::string& name) { return kFixtures + "/" + name; }

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args) {
  std::string cmd = kBin + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p);
  std::string out;
  std::array<char, 4096> buf;
  size_t k;
  while ((k = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), k);
  int st = pclose(p);
  return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

json minimal_elliptic() {
  return json::parse(R"({
    "mode": "elliptic", "n": 3, "degrees": ["1", "1/2", "0"], "charge": "1",
    "eta": [["0","0","1"],["0","1","0"],["1","0","0"]],
    "coefficients": {"kind": "series", "truncation": 2},
    "metric": [[[], [], [{"coeff": ["1","0"], "exp": [1,0]}]],
               [[], [{"coeff": ["1","0"], "exp": [1,0]}], [{"coeff": ["1/2","0"], "exp": [0,1]}]],
               [[{"coeff": ["1","0"], "exp": [1,0]}], [{"coeff": ["1/2","0"], "exp": [0,1]}], []]]
  })");
}

std::string parse_error(const json& j) {
  try {
    parse_instance(j);
  } catch (const ParseError& e) {
    return e.what();
  }
  return "";
}

const StageResult* stage(const VerificationReport& r, const std::string& name) {
  for (const auto& s : r.stages)
    if (s.name == name) return &s;
  return nullptr;
}

}  // namespace

TEST_CASE("instance parsing") {
  auto spec = parse_instance(minimal_elliptic());
  CHECK(spec.source == Source::Metric);
  CHECK(spec.deg.mode == Mode::Elliptic);
  // elliptic exponent vectors may omit t^n
  CHECK(spec.metric->at(0, 2) == GradedPoly::variable(spec.metric->ring, 0));

  json bad = minimal_elliptic();
  bad["degrees"] = {"1", "1/2", "1/4"};
  CHECK(parse_error(bad).find("d^n must be 0") != std::string::npos);

  json unk = minimal_elliptic();
  unk["colour"] = "red";
  CHECK(parse_error(unk) == "$: unknown field \"colour\"");
  unk = minimal_elliptic();
  unk["options"] = {{"pionts", 3}};
  CHECK(parse_error(unk) == "$.options: unknown field \"pionts\"");
  unk = minimal_elliptic();
  unk["metric"][1][2][0]["exps"] = json::array({0, 1});
  CHECK(parse_error(unk) == "$.metric[1][2][0]: unknown field \"exps\"");

  json two = minimal_elliptic();
  two["coxeter"] = {{"type", "A"}, {"rank", 3}};
  CHECK(parse_error(two).find("exactly one of") != std::string::npos);

  json trunc = minimal_elliptic();
  trunc["metric"][0][2][0]["coeff"] = json::array({"1"});
  CHECK(parse_error(trunc).find("does not equal truncation") != std::string::npos);

  CHECK_THROWS_AS(parse_instance_text("{\"mode\": "), ParseError);
  CHECK_THROWS_AS(parse_instance_file(fixture("missing.json")), ParseError);
}

TEST_CASE("generic trivial instance") {
  auto spec = parse_instance_file(fixture("generic_trivial.json"));
  auto rep = run_pipeline(spec, all_stages());
  CHECK(rep.passed());
  CHECK(rep.exit_code() == 0);
  Ring r = spec.metric->ring;
  auto t1 = GradedPoly::variable(r, 0), t2 = GradedPoly::variable(r, 1);
  CHECK(stage(rep, "build")->data["potential"] == poly_to_json((t1 * t1 * t2).scaled(Fraction(1, 2))));
}

TEST_CASE("failing pencil skips dependent stages") {
  auto spec = parse_instance_file(fixture("broken_a2.json"));
  auto rep = run_pipeline(spec, {Stage::Pencil, Stage::Build});
  CHECK(stage(rep, "pencil")->status == Status::Fail);
  CHECK(stage(rep, "build")->status == Status::Skipped);
  CHECK(stage(rep, "verify") == nullptr);
  CHECK(rep.exit_code() == 1);
  bool located = false;
  for (const auto& c : stage(rep, "pencil")->checks)
    if (c.name == "a_second_derivative") located = c.failed() && c.witnesses[0].index == std::vector<int>{2, 2};
  CHECK(located);
}

TEST_CASE("overrides") {
  auto spec = parse_instance_file(fixture("generic_trivial.json"));
  setenv("FROBENIUS_SEED", "77", 1);
  apply_overrides(spec, {});
  CHECK(spec.options.seed == 77);
  Overrides ov;
  ov.seed = 5;
  apply_overrides(spec, ov);
  CHECK(spec.options.seed == 5);
  setenv("FROBENIUS_SEED", "x1", 1);
  auto again = parse_instance_file(fixture("generic_trivial.json"));
  CHECK_THROWS_AS(apply_overrides(again, {}), ParseError);
  unsetenv("FROBENIUS_SEED");

  Overrides tr;
  tr.truncation = 3;
  CHECK_THROWS_AS(apply_overrides(spec, tr), ParseError);
  auto ell = parse_instance_file(fixture("elliptic_n3_N4.json"));
  apply_overrides(ell, tr);
  CHECK(ell.metric->ring.trunc == 3);
  CHECK(run_pipeline(ell, {Stage::Pencil}).passed());
  tr.truncation = 9;
  CHECK_THROWS_AS(apply_overrides(ell, tr), ParseError);
}

TEST_CASE("digest ignores formatting") {
  json a = json::parse(slurp(fixture("generic_trivial.json")));
  CHECK(input_digest(a) == input_digest(json::parse(a.dump())));
  CHECK(input_digest(a).rfind("sha256:", 0) == 0);
  a["name"] = "other";
  CHECK(input_digest(a) != input_digest(json::parse(slurp(fixture("generic_trivial.json")))));
}

TEST_CASE("exit codes") {
  CHECK(run("run " + fixture("coxeter_a2.json")).code == 0);
  CHECK(run("check-pencil " + fixture("broken_a2.json")).code == 1);
  Run w = run("verify " + fixture("broken_wdvv.json"));
  CHECK(w.code == 1);
  json rep = json::parse(w.out);
  json wd;
  for (const auto& st : rep["stages"])
    for (const auto& c : st["checks"])
      if (c["name"] == "wdvv") wd = c;
  REQUIRE(wd.is_object());
  CHECK(wd["status"] == "fail");
  CHECK(wd["witnesses"][0]["index"].size() == 4);
  CHECK(wd["witnesses"][0].contains("residual"));

  CHECK(run("run " + fixture("missing.json")).code == 2);
  CHECK(run("run").code == 2);
  CHECK(run("frobnicate").code == 2);
  CHECK(run("run --lambda 1/0 " + fixture("coxeter_a2.json")).code == 2);
  CHECK(run("run --stages pencil,nope " + fixture("coxeter_a2.json")).code == 2);
  CHECK(run("run --truncation 4 " + fixture("coxeter_a2.json")).code == 2);
}

TEST_CASE("reports are byte stable") {
  for (const char* f : {"coxeter_a2", "generic_trivial", "chart_b2"}) {
    CAPTURE(f);
    Run a = run("run " + fixture(std::string(f) + ".json"));
    Run b = run("run " + fixture(std::string(f) + ".json"));
    CHECK(a.out == b.out);
    CHECK(a.out == slurp(fixture(std::string("golden/") + f + ".json")));
  }
  Run t = run("run --format text " + fixture("coxeter_a2.json"));
  CHECK(t.code == 0);
  CHECK(t.out.find("overall: pass") != std::string::npos);
}

TEST_CASE("match subcommand") {
  Run m = run("match " + fixture("coxeter_a2.json") + " " + fixture("chart_a2.json"));
  CHECK(m.code == 0);
  CHECK(json::parse(m.out)["stages"][0]["data"]["c"] == "1");
  CHECK(run("match " + fixture("coxeter_a2.json") + " " + fixture("chart_b2.json")).code == 1);
}

TEST_CASE("fixture generators") {
  CHECK(run("coxeter --type A --rank 2").out == slurp(fixture("chart_a2.json")));
  CHECK(run("coxeter --type C --rank 2").code == 2);
  CHECK(run("fixture-series --truncation 4 " + fixture("elliptic_seed_n3.json")).out == slurp(fixture("elliptic_n3_N4.json")));
}
