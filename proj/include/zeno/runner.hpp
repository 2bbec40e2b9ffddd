// Copyright 2026 The Zeno Dynamics Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Configuration-driven experiment runner.
//
// An experiment is one JSON document: a model, an initial state, a
// procedure, a time grid and output paths. `execute` is pure; `run` adds
// file output and timing. Exit codes of the command-line front end:
//   0 success, 1 partial sweep failure, 2 usage, 3 integrity.

#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "zeno/errors.hpp"
#include "zeno/models.hpp"
#include "zeno/timeseries.hpp"

namespace zeno::runner {

inline constexpr int kExitOk = 0;
inline constexpr int kExitPartial = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitIntegrity = 3;

// Name of the environment variable that redirects relative output paths.
inline constexpr const char* kOutputDirEnv = "ZENO_OUTPUT_DIR";

// Bad config, unknown name, malformed command line.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An invariant of the produced data failed mid-run.
class IntegrityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Procedure { kFree, kPulsedSelective, kPulsedNonselective, kKicked, kContinuous, kClosedForm };

const char* to_string(Procedure p);

// A span entry is a basis label or an explicit amplitude vector.
using SpanEntry = std::variant<int, std::vector<cplx>>;

// Projector (one span) or projector family (several spans). `control`
// means the eigenprojections of the model's control operator.
struct FamilySpec {
  bool control = false;
  std::vector<std::vector<SpanEntry>> spans;
  bool operator==(const FamilySpec&) const = default;
  bool empty() const { return !control && spans.empty(); }
};

// Kick operator: exp(-i theta H_c) from the model's control operator, or
// sum_k exp(i phases[k]) P_k over the spans of `family`.
struct KickConfig {
  std::optional<double> theta;
  FamilySpec family;
  std::vector<double> phases;
  bool operator==(const KickConfig&) const = default;
};

struct ProcedureConfig {
  Procedure kind = Procedure::kFree;
  int n = 1;
  std::vector<int> n_ladder;
  std::optional<double> k;
  std::vector<double> k_ladder;
  FamilySpec projector;
  KickConfig kick;
  std::optional<double> tau;                       // gamma_eff sampling interval
  std::optional<std::pair<double, double>> fit_window;  // decay-rate fit range
  bool operator==(const ProcedureConfig&) const = default;
};

struct ExperimentConfig {
  std::string name = "experiment";
  std::string model;
  models::ModelParams params;
  // Basis label, or explicit amplitudes.
  std::variant<int, std::vector<cplx>> initial_state = 1;
  ProcedureConfig procedure;
  double t_max = 1.0;
  int samples = 2;
  std::string csv_path;
  std::string summary_path;
  std::string ladder_csv_path;

  bool operator==(const ExperimentConfig&) const = default;

  // Throws UsageError on any schema or invariant violation.
  static ExperimentConfig parse(const std::string& json_text);
  static ExperimentConfig load(const std::filesystem::path& file);
  // Canonical JSON; parse(to_json()) == *this.
  std::string to_json(int indent = 2) const;
};

// Apply "/json/pointer=value" overrides to a config document and reparse.
// The value is JSON; bare words are taken as strings.
ExperimentConfig apply_overrides(const ExperimentConfig& config, const std::vector<std::string>& overrides);

struct Scalar {
  std::string name;
  double value = 0.0;
  bool operator==(const Scalar&) const = default;
};

struct RunResult {
  TimeSeries series;
  std::optional<TimeSeries> ladder;
  std::vector<Scalar> scalars;
  Warnings warnings;

  // Throws std::out_of_range for an unknown name.
  double scalar(const std::string& name) const;
  bool has_scalar(const std::string& name) const;
};

// Pure computation. Throws UsageError for configs the models or procedures
// reject and IntegrityError when a probability column leaves [0, 1 + 1e-6].
RunResult execute(const ExperimentConfig& config);

// Throws IntegrityError naming the first probability sample outside
// [-tol, 1 + tol].
void verify_probabilities(const TimeSeries& ts, const std::string& what, double tol = 1e-6);

// Relative `path` goes under `out_dir` if given, else under $ZENO_OUTPUT_DIR
// if set, else stays relative to the working directory.
std::filesystem::path resolve_output(const std::filesystem::path& path,
                                     const std::optional<std::filesystem::path>& out_dir);

struct RunFiles {
  std::filesystem::path csv;
  std::filesystem::path summary;
  std::optional<std::filesystem::path> ladder_csv;
};

// execute, then write the CSV, optional ladder CSV and the JSON summary.
RunFiles run(const ExperimentConfig& config, const std::optional<std::filesystem::path>& out_dir,
             RunResult* result = nullptr);

// JSON summary: config echo, scalars, warnings, wall clock.
std::string summary_json(const ExperimentConfig& config, const RunResult& result, double wall_seconds);

// --- presets ----------------------------------------------------------------

const std::vector<std::string>& preset_names();

struct PresetResult {
  std::string name;
  std::string config_json;  // pinned parameters
  TimeSeries series;
  std::vector<Scalar> scalars;
  Warnings warnings;
  double scalar(const std::string& name) const;
};

// Throws UsageError for an unknown name.
PresetResult compute_preset(const std::string& name);
// Writes <name>.csv and <name>_summary.json.
RunFiles write_preset(const std::string& name, const std::optional<std::filesystem::path>& out_dir);

// Qubit-block diagnostics of the four-level model over one Rabi period
// t in [0, 2 pi / Omega].
struct QubitProtection {
  double block_distance = 0.0;   // max ||U_qubit(t) - exp(-i Omega sigma_x t)||
  double leakage = 0.0;          // max population outside span{|0>, |1>}
  double flip_population = 0.0;  // max |<1|U(t)|0>|^2
};
QubitProtection qubit_protection(double omega_big, double omega, double omega_prime, std::size_t samples = 201);

// --- sweeps -----------------------------------------------------------------

struct SweepAxis {
  std::string pointer;  // JSON pointer into the experiment config
  std::vector<std::string> values;  // JSON texts
};

struct SweepConfig {
  std::string base;  // experiment config JSON
  std::vector<SweepAxis> grid;
  std::string csv_path = "sweep.csv";
  std::string summary_path = "sweep_summary.json";
  unsigned jobs = 0;  // 0: hardware concurrency

  static SweepConfig parse(const std::string& json_text, const std::filesystem::path& base_dir = {});
  static SweepConfig load(const std::filesystem::path& file);
};

struct SweepRow {
  std::size_t index = 0;
  std::vector<std::string> values;  // one per axis, JSON text
  bool failed = false;
  std::string error;
  std::vector<Scalar> scalars;
};

struct SweepResult {
  std::vector<std::string> axis_names;
  std::vector<SweepRow> rows;  // grid order
  std::size_t failures() const;
  void write_csv(std::ostream& os) const;
};

// Cartesian product of the axes, last axis fastest. Grid points run
// concurrently; rows stay in grid order.
SweepResult sweep(const SweepConfig& config);

// sweep, then write the aggregated CSV and a JSON summary listing failures.
RunFiles write_sweep(const SweepConfig& config, const std::optional<std::filesystem::path>& out_dir,
                     SweepResult* result = nullptr);

// --- subspaces --------------------------------------------------------------

// JSON report of the Zeno split implied by the config's procedure:
// subspace dimensions, eigenvalue labels, projectors and H_Z.
std::string subspaces_report(const ExperimentConfig& config);

// --- command line -----------------------------------------------------------

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace zeno::runner
