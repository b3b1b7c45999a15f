#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "frobenius/codec.hpp"
#include "frobenius/instances.hpp"
#include "frobenius/report.hpp"

namespace frob {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr uint64_t kDefaultSeed = 20240611;

enum class Source { Metric, Coxeter, Series, Potential };

struct InstanceSpec {
  std::string name;
  Mode mode = Mode::Generic;
  int n = 0;
  DegreeVector deg;
  ConstMetric eta;
  CoeffKind kind = CoeffKind::Rational;
  int truncation = 0;
  Source source = Source::Metric;
  std::optional<IntersectionForm> metric;
  char coxeter_type = 'A';
  int coxeter_rank = 0;
  std::vector<std::pair<Exp, Fraction>> layer0;
  std::vector<GaugePin> pins;
  std::optional<GradedPoly> potential;  // reference potential
  PencilOptions options;
  bool seed_given = false;
  json raw;  // parsed document, for the digest
};

// Throws ParseError with a "$.path: message" diagnostic.
InstanceSpec parse_instance(const json& j);
InstanceSpec parse_instance_text(const std::string& text);
InstanceSpec parse_instance_file(const std::string& path);

// Materialized fixture document (metric block and optional potential).
json instance_to_json(const DegreeVector& deg, const ConstMetric& eta, const IntersectionForm& g,
                      const std::optional<GradedPoly>& potential, const std::string& name);

struct Overrides {
  std::optional<uint64_t> seed;
  std::optional<int> points;
  std::optional<std::vector<Fraction>> lambdas;
  std::optional<int> truncation;
  bool symbolic_curvature = false;
};

// Seed precedence: flag, file, FROBENIUS_SEED, built-in default.
void apply_overrides(InstanceSpec& spec, const Overrides& ov);

enum class Stage { Pencil, Build, Verify, Roundtrip, Uniqueness };
std::string stage_name(Stage s);
Stage parse_stage(const std::string& s);
std::set<Stage> all_stages();

struct StageResult {
  std::string name;
  Status status = Status::Pass;
  std::string detail;
  std::vector<CheckResult> checks;
  json data = json::object();
  std::vector<std::string> text;  // extra lines for the text form
  double seconds = 0;
};

struct VerificationReport {
  std::string name;
  std::string input_digest;
  json options = json::object();
  std::vector<StageResult> stages;
  bool passed() const;
  int exit_code() const { return passed() ? 0 : 1; }
};

std::string input_digest(const json& doc);

// Mathematical failures become report entries; dependent stages are skipped.
VerificationReport run_pipeline(const InstanceSpec& spec, const std::set<Stage>& stages);

// Two instances compared up to a scaling of η.
VerificationReport run_match(const InstanceSpec& a, const InstanceSpec& b);

// Coxeter chart as a materialized fixture document.
json coxeter_fixture(char type, int rank, uint64_t seed);

// Series seed solved and written out with metric and potential.
json series_fixture(const InstanceSpec& seed_spec);

enum class Format { Json, Text };
std::string emit_report(const VerificationReport& r, Format f);

json check_to_json(const CheckResult& c);

}  // namespace frob
