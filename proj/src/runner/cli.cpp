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

#include <ostream>

#include "CLI11.hpp"
#include "zeno/runner.hpp"

namespace zeno::runner {

namespace fs = std::filesystem;

namespace {

std::optional<fs::path> as_dir(const std::string& s) {
  if (s.empty()) return std::nullopt;
  return fs::path(s);
}

void report(std::ostream& out, const RunFiles& files) {
  out << "wrote " << files.csv.string() << '\n';
  if (files.ladder_csv) out << "wrote " << files.ladder_csv->string() << '\n';
  out << "wrote " << files.summary.string() << '\n';
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quantum Zeno dynamics experiments on finite-dimensional systems", "zeno"};
  app.require_subcommand(1);

  std::string config_path, out_dir, csv_path, summary_path, preset_name;
  std::vector<std::string> overrides;
  unsigned jobs = 0;

  auto* run_cmd = app.add_subcommand("run", "Run one experiment config");
  run_cmd->add_option("config", config_path, "Experiment config (JSON)")->required();
  run_cmd->add_option("--out", out_dir, "Output directory for relative paths (overrides $ZENO_OUTPUT_DIR)");
  run_cmd->add_option("--csv", csv_path, "Override outputs.csv_path");
  run_cmd->add_option("--summary", summary_path, "Override outputs.summary_path");
  run_cmd->add_option("--set", overrides, "Override a config value: /json/pointer=value");

  auto* preset_cmd = app.add_subcommand("preset", "Write a pinned figure dataset");
  preset_cmd->add_option("name", preset_name, "fig1, fig6, fig7 or qubit_protection")->required();
  preset_cmd->add_option("--out", out_dir, "Output directory (overrides $ZENO_OUTPUT_DIR)");

  auto* sweep_cmd = app.add_subcommand("sweep", "Run a parameter grid over a base config");
  sweep_cmd->add_option("config", config_path, "Sweep config (JSON)")->required();
  sweep_cmd->add_option("--out", out_dir, "Output directory (overrides $ZENO_OUTPUT_DIR)");
  sweep_cmd->add_option("--jobs", jobs, "Concurrent grid points (0: all cores)");

  auto* subspaces_cmd = app.add_subcommand("subspaces", "Print the Zeno subspaces and H_Z of a config");
  subspaces_cmd->add_option("config", config_path, "Experiment config (JSON)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (run_cmd->parsed()) {
      ExperimentConfig config = apply_overrides(ExperimentConfig::load(config_path), overrides);
      if (!csv_path.empty()) config.csv_path = csv_path;
      if (!summary_path.empty()) config.summary_path = summary_path;
      RunResult result;
      report(out, run(config, as_dir(out_dir), &result));
      for (const auto& w : result.warnings) err << "warning: " << w.operation << ": " << w.message << '\n';
      return kExitOk;
    }
    if (preset_cmd->parsed()) {
      report(out, write_preset(preset_name, as_dir(out_dir)));
      return kExitOk;
    }
    if (sweep_cmd->parsed()) {
      SweepConfig config = SweepConfig::load(config_path);
      if (sweep_cmd->count("--jobs")) config.jobs = jobs;
      SweepResult result;
      report(out, write_sweep(config, as_dir(out_dir), &result));
      for (const auto& row : result.rows) {
        if (row.failed) err << "point " << row.index << " failed: " << row.error << '\n';
      }
      out << result.rows.size() << " points, " << result.failures() << " failed\n";
      return result.failures() ? kExitPartial : kExitOk;
    }
    out << subspaces_report(ExperimentConfig::load(config_path));
    return kExitOk;
  } catch (const UsageError& e) {
    err << "zeno: usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "zeno: usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const IntegrityError& e) {
    err << "zeno: integrity error: " << e.what() << '\n';
    return kExitIntegrity;
  } catch (const std::exception& e) {
    err << "zeno: error: " << e.what() << '\n';
    return kExitIntegrity;
  }
}

}  // namespace zeno::runner
