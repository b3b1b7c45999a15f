#include "frobenius/cli.hpp"

#include <openssl/evp.h>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "frobenius/errors.hpp"

namespace frob {

namespace {

std::string idx(const std::string& path, size_t i) { return path + "[" + std::to_string(i) + "]"; }

template <class Fn>
auto at_path(const std::string& path, Fn fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void allow_fields(const json& j, const std::string& path, std::initializer_list<const char*> names) {
  if (!j.is_object()) throw ParseError(path + ": expected an object");
  for (const auto& [k, v] : j.items()) {
    bool ok = false;
    for (const char* n : names) ok = ok || k == n;
    if (!ok) throw ParseError(path + ": unknown field \"" + k + "\"");
  }
}

const json& require(const json& j, const std::string& path, const char* key) {
  if (!j.contains(key)) throw ParseError(path + ": missing field \"" + key + "\"");
  return j[key];
}

int get_int(const json& j, const std::string& path, int min) {
  if (!j.is_number_integer()) throw ParseError(path + ": expected an integer");
  long v = j.get<long>();
  if (v < min) throw ParseError(path + ": must be at least " + std::to_string(min));
  return static_cast<int>(v);
}

FracMatrix fraction_matrix(const json& j, const std::string& path, int n) {
  if (!j.is_array() || static_cast<int>(j.size()) != n) throw ParseError(path + ": expected " + std::to_string(n) + " rows");
  FracMatrix m;
  for (size_t a = 0; a < j.size(); ++a) {
    const json& row = j[a];
    if (!row.is_array() || static_cast<int>(row.size()) != n)
      throw ParseError(idx(path, a) + ": expected " + std::to_string(n) + " entries");
    std::vector<Fraction> r;
    for (size_t b = 0; b < row.size(); ++b) r.push_back(fraction_from_json(row[b], idx(idx(path, a), b)));
    m.push_back(std::move(r));
  }
  return m;
}

uint64_t parse_seed(const std::string& s, const std::string& where) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
    throw ParseError(where + ": seed must be a non-negative integer");
  try {
    return std::stoull(s);
  } catch (const std::exception&) {
    throw ParseError(where + ": seed out of range");
  }
}

json fraction_list(const std::vector<Fraction>& v) {
  json a = json::array();
  for (const auto& f : v) a.push_back(f.str());
  return a;
}

json matrix_json(const FracMatrix& m) {
  json a = json::array();
  for (const auto& row : m) a.push_back(fraction_list(row));
  return a;
}

json witness_json(const Witness& w) {
  json o = json::object();
  o["index"] = w.index;
  if (w.residual) o["residual"] = poly_to_json(*w.residual);
  if (!w.note.empty()) o["note"] = w.note;
  return o;
}

struct Prepared {
  bool ok = false;
  DegreeVector deg;
  ConstMetric eta;
  IntersectionForm g;
  std::optional<GradedPoly> reference;
};

Prepared prepare(const InstanceSpec& spec, StageResult& st) {
  Prepared p;
  p.deg = spec.deg;
  p.eta = spec.eta;
  p.reference = spec.potential;
  CheckResult c("materialize");
  try {
    switch (spec.source) {
      case Source::Metric:
        p.g = *spec.metric;
        c.detail = "metric given";
        break;
      case Source::Coxeter: {
        auto ch = coxeter_chart(spec.coxeter_type, spec.coxeter_rank, spec.options.seed);
        if (!(ch.inv.deg == spec.deg)) c.fail({{}, std::nullopt, "declared degrees differ from the invariant degrees"});
        if (!(ch.flat.eta == spec.eta)) c.fail({{}, std::nullopt, "declared eta differs from the flat coordinate chart"});
        p.g = ch.g_t;
        json ts = json::array();
        for (const auto& t : ch.flat.t_of_s) ts.push_back(poly_to_json(t));
        st.data["flat_coordinates"] = ts;
        st.data["invariant_degrees"] = ch.inv.c;
        st.data["metric"] = json::array();
        for (const auto& row : p.g.g) {
          json r = json::array();
          for (const auto& e : row) r.push_back(poly_to_json(e));
          st.data["metric"].push_back(r);
        }
        c.detail = std::string("orbit chart ") + spec.coxeter_type + std::to_string(spec.coxeter_rank);
        break;
      }
      case Source::Potential:
        p.g = recover_intersection_form(*spec.potential, spec.eta, spec.deg);
        c.detail = "metric recovered from the potential";
        break;
      case Source::Series: {
        SeriesSeed seed{spec.deg, spec.eta, spec.truncation, spec.layer0, spec.pins};
        Potential P = elliptic_series_fixture(seed);
        p.g = recover_intersection_form(P.F, spec.eta, spec.deg);
        if (!p.reference) p.reference = P.F;
        st.data["potential"] = poly_to_json(P.F);
        c.detail = P.note;
        break;
      }
    }
  } catch (const Error& e) {
    c.fail({{}, std::nullopt, e.what()});
  }
  st.checks.push_back(c);
  st.status = c.failed() ? Status::Fail : Status::Pass;
  p.ok = !c.failed();
  return p;
}

void finish(StageResult& st) {
  for (const auto& c : st.checks)
    if (c.failed()) st.status = Status::Fail;
}

json christoffel_json(const Christoffel& G) {
  json a = json::array();
  int n = G.deg.n;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z) {
        const GradedPoly& v = G.at(x, y, z);
        if (v.is_zero()) continue;
        a.push_back({{"index", one_based({x, y, z})}, {"value", poly_to_json(v)}});
      }
  return a;
}

CheckResult compare_forms(const std::string& name, const IntersectionForm& got, const IntersectionForm& want) {
  CheckResult c(name);
  for (int a = 0; a < want.n(); ++a)
    for (int b = a; b < want.n(); ++b) {
      GradedPoly r = got.at(a, b) - want.at(a, b);
      if (!r.is_zero()) c.fail({one_based({a, b}), r, ""});
    }
  return c;
}

std::string seconds_str(double s) {
  std::ostringstream o;
  o << std::fixed << std::setprecision(3) << s;
  return o.str();
}

}  // namespace

InstanceSpec parse_instance(const json& j) {
  InstanceSpec s;
  s.raw = j;
  allow_fields(j, "$", {"name", "mode", "n", "degrees", "charge", "eta", "coefficients", "metric", "coxeter", "series",
                        "potential", "options"});
  if (j.contains("name")) {
    if (!j["name"].is_string()) throw ParseError("$.name: expected a string");
    s.name = j["name"].get<std::string>();
  }
  const json& mj = require(j, "$", "mode");
  if (!mj.is_string()) throw ParseError("$.mode: expected a string");
  s.mode = at_path("$.mode", [&] { return parse_mode(mj.get<std::string>()); });
  s.n = get_int(require(j, "$", "n"), "$.n", 1);

  const json& dj = require(j, "$", "degrees");
  if (!dj.is_array() || static_cast<int>(dj.size()) != s.n) throw ParseError("$.degrees: expected " + std::to_string(s.n) + " entries");
  std::vector<Fraction> d;
  for (size_t i = 0; i < dj.size(); ++i) d.push_back(fraction_from_json(dj[i], idx("$.degrees", i)));
  Fraction charge = fraction_from_json(require(j, "$", "charge"), "$.charge");
  s.deg = at_path("$.degrees", [&] { return DegreeVector::make(s.mode, d, charge); });
  FracMatrix eu = fraction_matrix(require(j, "$", "eta"), "$.eta", s.n);
  s.eta = at_path("$.eta", [&] { return ConstMetric::from_upper(eu); });
  for (int a = 0; a < s.n; ++a)
    for (int b = 0; b < s.n; ++b)
      if (!eu[static_cast<size_t>(a)][static_cast<size_t>(b)].is_zero() &&
          s.deg.d[static_cast<size_t>(a)] + s.deg.d[static_cast<size_t>(b)] != s.deg.charge)
        throw ParseError(idx(idx("$.eta", static_cast<size_t>(a)), static_cast<size_t>(b)) +
                         ": eta pairs degrees that do not add up to the charge");

  if (j.contains("coefficients")) {
    const json& cj = j["coefficients"];
    allow_fields(cj, "$.coefficients", {"kind", "truncation"});
    const json& kj = require(cj, "$.coefficients", "kind");
    std::string kind = kj.is_string() ? kj.get<std::string>() : "";
    if (kind == "rational") {
      if (cj.contains("truncation")) throw ParseError("$.coefficients.truncation: only valid for series coefficients");
    } else if (kind == "series") {
      s.kind = CoeffKind::Series;
      s.truncation = get_int(require(cj, "$.coefficients", "truncation"), "$.coefficients.truncation", 1);
    } else {
      throw ParseError("$.coefficients.kind: expected \"rational\" or \"series\"");
    }
  }
  if (s.kind == CoeffKind::Series && s.mode != Mode::Elliptic)
    throw ParseError("$.coefficients.kind: series coefficients require elliptic mode");
  Ring ring = ring_for(s.deg, s.kind, s.truncation);

  int blocks = static_cast<int>(j.contains("metric")) + static_cast<int>(j.contains("coxeter")) +
               static_cast<int>(j.contains("series"));
  if (blocks > 1 || (blocks == 0 && !j.contains("potential")))
    throw ParseError("$: exactly one of \"metric\", \"coxeter\", \"series\" is required, or a bare \"potential\"");
  if (blocks == 0) {
    s.source = Source::Potential;
  } else if (j.contains("metric")) {
    s.source = Source::Metric;
    const json& gj = j["metric"];
    if (!gj.is_array() || static_cast<int>(gj.size()) != s.n) throw ParseError("$.metric: expected " + std::to_string(s.n) + " rows");
    PolyMatrix g;
    for (size_t a = 0; a < gj.size(); ++a) {
      if (!gj[a].is_array() || static_cast<int>(gj[a].size()) != s.n)
        throw ParseError(idx("$.metric", a) + ": expected " + std::to_string(s.n) + " entries");
      std::vector<GradedPoly> row;
      for (size_t b = 0; b < gj[a].size(); ++b) row.push_back(poly_from_json(gj[a][b], ring, idx(idx("$.metric", a), b)));
      g.push_back(std::move(row));
    }
    s.metric = at_path("$.metric", [&] { return IntersectionForm(s.deg, ring, g); });
  } else if (j.contains("coxeter")) {
    s.source = Source::Coxeter;
    const json& cj = j["coxeter"];
    allow_fields(cj, "$.coxeter", {"type", "rank"});
    const json& tj = require(cj, "$.coxeter", "type");
    if (!tj.is_string() || (tj.get<std::string>() != "A" && tj.get<std::string>() != "B"))
      throw ParseError("$.coxeter.type: expected \"A\" or \"B\"");
    s.coxeter_type = tj.get<std::string>()[0];
    s.coxeter_rank = get_int(require(cj, "$.coxeter", "rank"), "$.coxeter.rank", 1);
    if (s.mode != Mode::Coxeter) throw ParseError("$.coxeter: requires mode \"coxeter\"");
    if (s.coxeter_rank != s.n) throw ParseError("$.coxeter.rank: must equal n");
    if (s.coxeter_rank > 3) throw ParseError("$.coxeter.rank: ranks above 3 are not supported");
  } else {
    s.source = Source::Series;
    const json& sj = j["series"];
    allow_fields(sj, "$.series", {"layer0", "pins"});
    if (s.mode != Mode::Elliptic || s.kind != CoeffKind::Series)
      throw ParseError("$.series: requires elliptic mode with series coefficients");
    Ring rr = ring_for(s.deg, CoeffKind::Rational, 0);
    if (sj.contains("layer0")) {
      GradedPoly l0 = poly_from_json(sj["layer0"], rr, "$.series.layer0");
      for (const auto& [e, c] : l0.terms()) s.layer0.emplace_back(e, c.constant_term());
    }
    if (sj.contains("pins")) {
      const json& pj = sj["pins"];
      if (!pj.is_array()) throw ParseError("$.series.pins: expected a list");
      for (size_t i = 0; i < pj.size(); ++i) {
        std::string pp = idx("$.series.pins", i);
        allow_fields(pj[i], pp, {"order", "exp", "value"});
        GaugePin pin;
        pin.order = get_int(require(pj[i], pp, "order"), pp + ".order", 1);
        json term = json::array({{{"coeff", "1"}, {"exp", require(pj[i], pp, "exp")}}});
        pin.exp = poly_from_json(term, rr, pp).terms().begin()->first;
        pin.value = fraction_from_json(require(pj[i], pp, "value"), pp + ".value");
        s.pins.push_back(std::move(pin));
      }
    }
  }
  if (j.contains("potential")) s.potential = poly_from_json(j["potential"], ring, "$.potential");

  if (j.contains("options")) {
    const json& oj = j["options"];
    allow_fields(oj, "$.options", {"lambda", "points", "seed", "symbolic_curvature"});
    if (oj.contains("lambda")) {
      const json& lj = oj["lambda"];
      if (!lj.is_array() || lj.empty()) throw ParseError("$.options.lambda: expected a non-empty list");
      s.options.lambdas.clear();
      for (size_t i = 0; i < lj.size(); ++i) s.options.lambdas.push_back(fraction_from_json(lj[i], idx("$.options.lambda", i)));
    }
    if (oj.contains("points")) s.options.points = get_int(oj["points"], "$.options.points", 1);
    if (oj.contains("seed")) {
      if (!oj["seed"].is_number_unsigned()) throw ParseError("$.options.seed: expected a non-negative integer");
      s.options.seed = oj["seed"].get<uint64_t>();
      s.seed_given = true;
    }
    if (oj.contains("symbolic_curvature")) {
      if (!oj["symbolic_curvature"].is_boolean()) throw ParseError("$.options.symbolic_curvature: expected true or false");
      s.options.symbolic_curvature = oj["symbolic_curvature"].get<bool>();
    }
  }
  return s;
}

InstanceSpec parse_instance_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  return parse_instance(j);
}

InstanceSpec parse_instance_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path + ": cannot open file");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_instance_text(ss.str());
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

json instance_to_json(const DegreeVector& deg, const ConstMetric& eta, const IntersectionForm& g,
                      const std::optional<GradedPoly>& potential, const std::string& name) {
  json j = json::object();
  if (!name.empty()) j["name"] = name;
  j["mode"] = mode_name(deg.mode);
  j["n"] = deg.n;
  j["degrees"] = fraction_list(deg.d);
  j["charge"] = deg.charge.str();
  j["eta"] = matrix_json(eta.upper);
  if (g.ring.kind == CoeffKind::Series)
    j["coefficients"] = {{"kind", "series"}, {"truncation", g.ring.trunc}};
  else
    j["coefficients"] = {{"kind", "rational"}};
  json m = json::array();
  for (const auto& row : g.g) {
    json r = json::array();
    for (const auto& e : row) r.push_back(poly_to_json(e));
    m.push_back(r);
  }
  j["metric"] = m;
  if (potential) j["potential"] = poly_to_json(*potential);
  return j;
}

void apply_overrides(InstanceSpec& spec, const Overrides& ov) {
  if (ov.seed) {
    spec.options.seed = *ov.seed;
  } else if (!spec.seed_given) {
    if (const char* env = std::getenv("FROBENIUS_SEED"); env && *env) spec.options.seed = parse_seed(env, "FROBENIUS_SEED");
  }
  if (ov.points) {
    if (*ov.points < 1) throw ParseError("--points: must be at least 1");
    spec.options.points = *ov.points;
  }
  if (ov.lambdas) {
    if (ov.lambdas->empty()) throw ParseError("--lambda: expected at least one value");
    spec.options.lambdas = *ov.lambdas;
  }
  if (ov.symbolic_curvature) spec.options.symbolic_curvature = true;
  if (ov.truncation) {
    int N = *ov.truncation;
    if (spec.kind != CoeffKind::Series) throw ParseError("--truncation: instance has rational coefficients");
    if (N < 1) throw ParseError("--truncation: must be at least 1");
    if (spec.source == Source::Series) {
      spec.truncation = N;
    } else {
      if (N > spec.truncation)
        throw ParseError("--truncation: cannot raise the truncation of a given series above " + std::to_string(spec.truncation));
      if (spec.metric) {
        PolyMatrix g = spec.metric->g;
        for (auto& row : g)
          for (auto& e : row) e = truncate(e, N);
        spec.metric = IntersectionForm(spec.deg, spec.metric->ring.truncated(N), g);
      }
      if (spec.potential) spec.potential = truncate(*spec.potential, N);
      spec.truncation = N;
    }
  }
}

std::string stage_name(Stage s) {
  switch (s) {
    case Stage::Pencil: return "pencil";
    case Stage::Build: return "build";
    case Stage::Verify: return "verify";
    case Stage::Roundtrip: return "roundtrip";
    case Stage::Uniqueness: return "uniqueness";
  }
  return "";
}

Stage parse_stage(const std::string& s) {
  for (Stage st : all_stages())
    if (stage_name(st) == s) return st;
  throw ParseError("unknown stage \"" + s + "\"");
}

std::set<Stage> all_stages() { return {Stage::Pencil, Stage::Build, Stage::Verify, Stage::Roundtrip, Stage::Uniqueness}; }

bool VerificationReport::passed() const {
  for (const auto& s : stages)
    if (s.status != Status::Pass) return false;
  return true;
}

std::string input_digest(const json& doc) {
  std::string bytes = doc.dump();
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr);
  std::ostringstream o;
  o << "sha256:";
  for (unsigned int i = 0; i < len; ++i) o << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
  return o.str();
}

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

json options_json(const InstanceSpec& spec) {
  json o = json::object();
  o["lambda"] = fraction_list(spec.options.lambdas);
  o["points"] = spec.options.points;
  o["seed"] = spec.options.seed;
  o["symbolic_curvature"] = spec.options.symbolic_curvature;
  if (spec.kind == CoeffKind::Series) o["truncation"] = spec.truncation;
  return o;
}

}  // namespace

VerificationReport run_pipeline(const InstanceSpec& spec, const std::set<Stage>& requested) {
  std::set<Stage> stages = requested;
  if (stages.count(Stage::Verify) || stages.count(Stage::Roundtrip) || stages.count(Stage::Uniqueness)) stages.insert(Stage::Build);
  if (stages.count(Stage::Build)) stages.insert(Stage::Pencil);

  VerificationReport rep;
  rep.name = spec.name;
  rep.input_digest = input_digest(spec.raw);
  rep.options = options_json(spec);
  json names = json::array();
  for (Stage s : stages) names.push_back(stage_name(s));
  rep.options["stages"] = names;

  auto t0 = Clock::now();
  StageResult prep;
  prep.name = "prepare";
  Prepared P = prepare(spec, prep);
  prep.seconds = since(t0);
  rep.stages.push_back(prep);

  std::optional<Build> built;
  bool pencil_ok = false;
  auto skipped = [&](Stage s, const std::string& why) {
    StageResult st;
    st.name = stage_name(s);
    st.status = Status::Skipped;
    st.detail = why;
    rep.stages.push_back(st);
  };

  if (stages.count(Stage::Pencil)) {
    if (!P.ok) {
      skipped(Stage::Pencil, "prepare failed");
    } else {
      t0 = Clock::now();
      StageResult st;
      st.name = "pencil";
      try {
        Christoffel G = christoffel_solve(P.g, P.eta);
        CheckResult solved("christoffel_solve");
        st.checks.push_back(solved);
        PencilReport pr = check_pencil(P.g, P.eta, G, spec.options);
        for (auto& c : pr.checks) st.checks.push_back(std::move(c));
        st.data["points_used"] = pr.points_used;
        st.data["christoffel"] = christoffel_json(G);
      } catch (const Error& e) {
        CheckResult solved("christoffel_solve");
        solved.fail({{}, std::nullopt, e.what()});
        st.checks.push_back(solved);
        // checks on g alone still locate the defect
        Christoffel zero{P.deg, Tensor3(P.deg.n, P.g.ring)};
        for (auto& c : check_pencil(P.g, P.eta, zero, spec.options).checks) {
          if (c.name != "a_second_derivative" && c.name != "b_unit_derivative" && c.name != "b_determinant_unit") {
            c = CheckResult(c.name);
            c.skip("no Christoffel symbols");
          }
          st.checks.push_back(std::move(c));
        }
      }
      finish(st);
      pencil_ok = st.status == Status::Pass;
      st.seconds = since(t0);
      rep.stages.push_back(std::move(st));
    }
  }

  if (stages.count(Stage::Build)) {
    if (spec.source == Source::Potential && P.ok) {
      // the structure comes from F directly, independent of the pencil
      StageResult st;
      st.name = "build";
      CheckResult c("potential");
      try {
        FrobeniusStructure S = structure_from_potential(*spec.potential, P.eta, P.deg);
        built = Build{Christoffel{P.deg, Tensor3(P.deg.n, P.g.ring)}, {}, S};
        st.data["potential"] = poly_to_json(S.F.F);
        st.text.push_back("F = " + S.F.F.str());
        c.detail = "structure constants from the given potential";
      } catch (const Error& e) {
        c.fail({{}, std::nullopt, e.what()});
      }
      st.checks.push_back(c);
      finish(st);
      rep.stages.push_back(std::move(st));
    } else if (!pencil_ok) {
      skipped(Stage::Build, "pencil did not pass");
    } else {
      t0 = Clock::now();
      StageResult st;
      st.name = "build";
      CheckResult c("potential");
      try {
        built = build_structure(P.g, P.eta);
        st.data["potential"] = poly_to_json(built->S.F.F);
        st.text.push_back("F = " + built->S.F.F.str());
        c.detail = built->S.F.note;
      } catch (const Error& e) {
        c.fail({{}, std::nullopt, e.what()});
      }
      st.checks.push_back(c);
      finish(st);
      st.seconds = since(t0);
      rep.stages.push_back(std::move(st));
    }
  }

  auto gated = [&](Stage s, auto body) {
    if (!stages.count(s)) return;
    if (!built) {
      skipped(s, "build did not pass");
      return;
    }
    auto t = Clock::now();
    StageResult st;
    st.name = stage_name(s);
    try {
      body(st);
    } catch (const Error& e) {
      CheckResult c("error");
      c.fail({{}, std::nullopt, e.what()});
      st.checks.push_back(c);
    }
    finish(st);
    st.seconds = since(t);
    rep.stages.push_back(std::move(st));
  };

  gated(Stage::Verify, [&](StageResult& st) {
    for (auto& c : verify_frobenius(built->S).checks) st.checks.push_back(std::move(c));
  });

  gated(Stage::Roundtrip, [&](StageResult& st) {
    const FrobeniusStructure& S = built->S;
    st.checks.push_back(compare_forms("intersection_form", recover_intersection_form(S.F, P.eta, P.deg), P.g));

    CheckResult routes("potential_routes");
    GradedPoly F1 = S.F.F;
    GradedPoly F2 = potential_from_structure_constants(S.C, P.eta, P.deg, Fraction(1));
    GradedPoly diff = F2 - F1;
    Exp sq(static_cast<size_t>(P.deg.n), 0);
    sq[0] = 2;
    bool shape = diff.is_zero() || (diff.size() == 1 && diff.terms().begin()->first == sq && diff.coeff(sq).is_constant());
    if (!shape) routes.fail({{}, diff, "routes differ by more than a constant times (t1)^2"});
    Fraction k = diff.is_zero() ? Fraction(0) : diff.coeff(sq).constant_term();
    normalize_potential(F1);
    normalize_potential(F2);
    if (poly_to_json(F1).dump() != poly_to_json(F2).dump()) routes.fail({{}, F2 - F1, "normalized potentials differ"});
    routes.detail = "difference " + k.str() + " (t1)^2";
    st.checks.push_back(routes);
    st.data["normalized_potential"] = poly_to_json(F1);

    if (P.reference) {
      CheckResult rc("reference_potential");
      GradedPoly R = *P.reference;
      normalize_potential(R);
      GradedPoly r = F1 - R;
      if (!r.is_zero()) rc.fail({{}, r, "built potential differs from the reference"});
      st.checks.push_back(rc);
    }
  });

  gated(Stage::Uniqueness, [&](StageResult& st) {
    const FrobeniusStructure& S = built->S;
    for (Fraction c : {Fraction(1), Fraction(-1), Fraction(2), Fraction(1, 3)}) {
      CheckResult cr("scale " + c.str());
      FrobeniusStructure T = scale_structure(S, c);
      for (const auto& v : verify_frobenius(T).checks)
        if (v.failed()) cr.fail({{}, std::nullopt, "axiom check " + v.name + " fails after scaling"});
      CheckResult rt = compare_forms("rt", recover_intersection_form(T.F, T.eta, T.deg), P.g);
      if (rt.failed()) cr.fail({{}, std::nullopt, "recovered intersection form changes under scaling"});
      MatchResult m = match_up_to_scaling(S, T);
      if (!m.matched) cr.fail({{}, std::nullopt, "match failed: " + m.mismatch});
      else if (m.c != c) cr.fail({{}, std::nullopt, "match recovered c = " + m.c.str()});
      cr.detail = "recovered c = " + m.c.str();
      st.checks.push_back(cr);
    }
  });

  return rep;
}

VerificationReport run_match(const InstanceSpec& a, const InstanceSpec& b) {
  VerificationReport rep;
  rep.name = a.name + " ~ " + b.name;
  rep.input_digest = input_digest(json::array({a.raw, b.raw}));
  rep.options = options_json(a);
  auto t0 = Clock::now();
  StageResult st;
  st.name = "match";
  CheckResult c("match_up_to_scaling");
  std::optional<FrobeniusStructure> S[2];
  const InstanceSpec* in[2] = {&a, &b};
  for (int i = 0; i < 2; ++i) {
    StageResult prep;
    Prepared P = prepare(*in[i], prep);
    if (!P.ok) {
      c.fail({{i + 1}, std::nullopt, "instance could not be prepared: " + prep.checks[0].witnesses[0].note});
      continue;
    }
    try {
      S[i] = build_structure(P.g, P.eta).S;
    } catch (const Error& e) {
      c.fail({{i + 1}, std::nullopt, std::string("build failed: ") + e.what()});
    }
  }
  if (S[0] && S[1]) {
    try {
      MatchResult m = match_up_to_scaling(*S[0], *S[1]);
      if (!m.matched) c.fail({{}, std::nullopt, m.mismatch});
      else st.data["c"] = m.c.str();
    } catch (const Error& e) {
      c.fail({{}, std::nullopt, e.what()});
    }
  }
  st.checks.push_back(c);
  finish(st);
  st.seconds = since(t0);
  rep.stages.push_back(st);
  return rep;
}

json coxeter_fixture(char type, int rank, uint64_t seed) {
  auto ch = coxeter_chart(type, rank, seed);
  return instance_to_json(ch.inv.deg, ch.flat.eta, ch.g_t, std::nullopt, std::string(1, type) + std::to_string(rank));
}

json series_fixture(const InstanceSpec& spec) {
  if (spec.source != Source::Series) throw ParseError("$: expected a \"series\" block");
  SeriesSeed seed{spec.deg, spec.eta, spec.truncation, spec.layer0, spec.pins};
  Potential P = elliptic_series_fixture(seed);
  IntersectionForm g = recover_intersection_form(P.F, spec.eta, spec.deg);
  return instance_to_json(spec.deg, spec.eta, g, P.F, spec.name);
}

json check_to_json(const CheckResult& c) {
  json o = json::object();
  o["name"] = c.name;
  o["status"] = status_name(c.status);
  if (!c.detail.empty()) o["detail"] = c.detail;
  o["failures"] = c.failures;
  json w = json::array();
  for (const auto& x : c.witnesses) w.push_back(witness_json(x));
  o["witnesses"] = w;
  return o;
}

std::string emit_report(const VerificationReport& r, Format f) {
  if (f == Format::Json) {
    json j = json::object();
    j["tool"] = {{"name", "frobenius"}, {"version", kToolVersion}};
    j["instance"] = r.name;
    j["input_digest"] = r.input_digest;
    j["options"] = r.options;
    json st = json::array();
    for (const auto& s : r.stages) {
      json o = json::object();
      o["name"] = s.name;
      o["status"] = status_name(s.status);
      if (!s.detail.empty()) o["detail"] = s.detail;
      json cs = json::array();
      for (const auto& c : s.checks) cs.push_back(check_to_json(c));
      o["checks"] = cs;
      o["data"] = s.data;
      st.push_back(o);
    }
    j["stages"] = st;
    j["status"] = r.passed() ? "pass" : "fail";
    j["exit_code"] = r.exit_code();
    return j.dump(2) + "\n";
  }
  std::ostringstream o;
  o << "frobenius " << kToolVersion << "  instance " << (r.name.empty() ? "-" : r.name) << "\n";
  o << "input " << r.input_digest << "  seed " << r.options.value("seed", uint64_t{0}) << "\n";
  for (const auto& s : r.stages) {
    o << "[" << status_name(s.status) << "] " << s.name;
    if (s.status != Status::Skipped) o << "  (" << seconds_str(s.seconds) << " s)";
    if (!s.detail.empty()) o << "  " << s.detail;
    o << "\n";
    for (const auto& c : s.checks) {
      o << "    [" << status_name(c.status) << "] " << c.name;
      if (!c.detail.empty()) o << "  " << c.detail;
      if (c.failures) o << "  (" << c.failures << " failing components)";
      o << "\n";
      for (const auto& w : c.witnesses) {
        o << "       ";
        if (!w.index.empty()) {
          o << " at (";
          for (size_t i = 0; i < w.index.size(); ++i) o << (i ? ", " : "") << w.index[i];
          o << ")";
        }
        if (!w.note.empty()) o << " " << w.note;
        if (w.residual) o << " residual " << w.residual->str();
        o << "\n";
      }
    }
    for (const auto& line : s.text) o << "    " << line << "\n";
  }
  o << "overall: " << (r.passed() ? "pass" : "fail") << "\n";
  return o.str();
}

}  // namespace frob
