#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "frobenius/cli.hpp"
#include "frobenius/errors.hpp"

using namespace frob;

namespace {

struct Common {
  std::optional<uint64_t> seed;
  std::optional<int> points;
  std::vector<std::string> lambdas;
  std::optional<int> truncation;
  bool symbolic = false;
  std::string format = "json";
  std::string output;

  void attach(CLI::App* app, bool report) {
    app->add_option("--seed", seed, "random seed (default: file, then FROBENIUS_SEED)");
    app->add_option("--truncation", truncation, "q-series truncation order N");
    if (report) {
      app->add_option("--points", points, "random points per pencil value");
      app->add_option("--lambda", lambdas, "pencil values, e.g. 0,1,-1,2,1/3")->delimiter(',');
      app->add_flag("--symbolic-curvature", symbolic, "also expand the curvature symbolically (n <= 3)");
      app->add_option("--format", format, "report format")->check(CLI::IsMember({"json", "text"}));
    }
    app->add_option("-o,--output", output, "write to a file instead of stdout");
  }

  Overrides overrides() const {
    Overrides ov;
    ov.seed = seed;
    ov.points = points;
    ov.truncation = truncation;
    ov.symbolic_curvature = symbolic;
    if (!lambdas.empty()) {
      std::vector<Fraction> l;
      for (const auto& s : lambdas) l.push_back(Fraction::parse(s));
      ov.lambdas = l;
    }
    return ov;
  }
};

void write_out(const std::string& path, const std::string& bytes) {
  if (path.empty()) {
    std::cout << bytes;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError(path + ": cannot write");
  out << bytes;
}

InstanceSpec load(const std::string& path, const Common& c) {
  InstanceSpec s = parse_instance_file(path);
  apply_overrides(s, c.overrides());
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Frobenius structures from flat pencils of metrics"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);

  Common common;
  std::string file, file2, stages_arg;
  char type = 'A';
  int rank = 0;

  struct Sub {
    CLI::App* app;
    std::set<Stage> stages;
  };
  std::vector<Sub> report_cmds;
  auto add_report = [&](const char* name, const char* help, std::set<Stage> st) {
    CLI::App* s = app.add_subcommand(name, help);
    s->add_option("file", file, "instance file")->required();
    common.attach(s, true);
    report_cmds.push_back({s, st});
    return s;
  };
  add_report("check-pencil", "flat pencil checks", {Stage::Pencil});
  add_report("build", "Christoffel symbols, structure constants and potential", {Stage::Build});
  add_report("verify", "Frobenius axioms of the built structure", {Stage::Verify});
  add_report("roundtrip", "intersection form and potential round trips", {Stage::Roundtrip});
  CLI::App* run = add_report("run", "all stages", all_stages());
  run->add_option("--stages", stages_arg, "comma separated subset of pencil,build,verify,roundtrip,uniqueness");

  CLI::App* match = app.add_subcommand("match", "compare two instances up to scaling of eta");
  match->add_option("file", file, "first instance")->required();
  match->add_option("other", file2, "second instance")->required();
  common.attach(match, true);

  CLI::App* cox = app.add_subcommand("coxeter", "generate an orbit-space fixture");
  cox->add_option("--type", type, "A or B")->required()->check(CLI::IsMember({'A', 'B'}));
  cox->add_option("--rank", rank, "rank 1..3")->required()->check(CLI::Range(1, 3));
  common.attach(cox, false);

  CLI::App* ser = app.add_subcommand("fixture-series", "solve WDVV order by order from a series seed");
  ser->add_option("file", file, "seed instance with a series block")->required();
  common.attach(ser, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    Format fmt = common.format == "text" ? Format::Text : Format::Json;
    for (const auto& rc : report_cmds) {
      if (!rc.app->parsed()) continue;
      std::set<Stage> st = rc.stages;
      if (!stages_arg.empty()) {
        st.clear();
        std::stringstream ss(stages_arg);
        for (std::string x; std::getline(ss, x, ',');) st.insert(parse_stage(x));
      }
      InstanceSpec spec = load(file, common);
      VerificationReport rep = run_pipeline(spec, st);
      write_out(common.output, emit_report(rep, fmt));
      return rep.exit_code();
    }
    if (match->parsed()) {
      VerificationReport rep = run_match(load(file, common), load(file2, common));
      write_out(common.output, emit_report(rep, fmt));
      return rep.exit_code();
    }
    if (cox->parsed()) {
      // same seed precedence as instance files, minus the file
      InstanceSpec probe;
      probe.options.seed = kDefaultSeed;
      Overrides ov;
      ov.seed = common.seed;
      apply_overrides(probe, ov);
      write_out(common.output, coxeter_fixture(type, rank, probe.options.seed).dump(2) + "\n");
      return 0;
    }
    if (ser->parsed()) {
      write_out(common.output, series_fixture(load(file, common)).dump(2) + "\n");
      return 0;
    }
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "failed: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
