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

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <sstream>

#include "gtest/gtest.h"
#include "json.hpp"

#include "zeno/runner.hpp"

using namespace zeno;
using namespace zeno::runner;
namespace fs = std::filesystem;

namespace {

constexpr double kPi = std::numbers::pi;

const char* kRabiFree = R"({
  "name": "rabi_free",
  "model": {"name": "rabi_two_level", "params": {"omega": 1.0}},
  "procedure": {"kind": "free"},
  "time": {"t_max": 12.566370614359172, "samples": 200}
})";

const char* kRabiPulsed = R"({
  "name": "rabi_pulsed",
  "model": {"name": "rabi_two_level", "params": {"omega": 1.0}},
  "procedure": {"kind": "pulsed_selective", "n": 100, "n_ladder": [10, 100, 1000]},
  "time": {"t_max": 3.141592653589793, "samples": 9}
})";

const char* kThreeLevelNonselective = R"({
  "name": "nonselective",
  "model": {"name": "three_level_ideal", "params": {"omega": 1.0, "omega_prime": 3.0}},
  "procedure": {"kind": "pulsed_nonselective", "n": 256, "projector": "control"},
  "time": {"t_max": 5.0, "samples": 6}
})";

std::string read(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string first_line(const std::string& text) { return text.substr(0, text.find('\n')); }

fs::path golden(const std::string& name) { return fs::path(ZENO_GOLDEN_DIR) / name; }

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() / ("zeno_test_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                                         "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

int cli(std::vector<std::string> args, std::string* out_text = nullptr, std::string* err_text = nullptr) {
  args.insert(args.begin(), "zeno");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
  if (out_text) *out_text = out.str();
  if (err_text) *err_text = err.str();
  return code;
}

void write(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

}  // namespace

// --- config -----------------------------------------------------------------

TEST(config, defaults_and_echo_round_trip) {
  const auto c = ExperimentConfig::parse(kRabiFree);
  EXPECT_EQ(c.csv_path, "rabi_free.csv");
  EXPECT_EQ(c.summary_path, "rabi_free_summary.json");
  EXPECT_EQ(std::get<int>(c.initial_state), 1);
  EXPECT_EQ(ExperimentConfig::parse(c.to_json()), c);
  EXPECT_EQ(ExperimentConfig::parse(c.to_json(-1)).to_json(), c.to_json());
}

TEST(config, rich_config_round_trips) {
  const char* text = R"({
    "name": "kicks",
    "model": {"name": "three_level_ideal", "params": {"omega": 1.0, "omega_prime": 2.5}},
    "initial_state": {"amplitudes": [0.6, [0.0, 0.8], 0]},
    "procedure": {"kind": "kicked", "n": 64, "n_ladder": [4, 16, 64],
                  "kick": {"spans": [[1], [[0, 0.7071067811865476, 0.7071067811865476]],
                                     [[0, 0.7071067811865476, -0.7071067811865476]]],
                           "phases": [0.0, 1.0, 2.5]},
                  "tau": 0.1, "fit_window": [1, 2]},
    "time": {"t_max": 3, "samples": 7},
    "outputs": {"csv_path": "a/b.csv"}
  })";
  const auto c = ExperimentConfig::parse(text);
  EXPECT_EQ(c.procedure.kick.family.spans.size(), 3u);
  EXPECT_EQ(c.ladder_csv_path, "kicks_ladder.csv");
  EXPECT_EQ(ExperimentConfig::parse(c.to_json()), c);
}

TEST(config, rejects_invalid_documents) {
  const std::string base = kRabiFree;
  auto with = [&](const std::string& from, const std::string& to) {
    std::string s = base;
    s.replace(s.find(from), from.size(), to);
    return s;
  };
  EXPECT_THROW(ExperimentConfig::parse(with("\"samples\": 200", "\"samples\": 1")), UsageError);
  EXPECT_THROW(ExperimentConfig::parse(with("rabi_two_level", "five_level")), UsageError);
  EXPECT_THROW(ExperimentConfig::parse(with("\"free\"", "\"teleport\"")), UsageError);
  EXPECT_THROW(ExperimentConfig::parse(with("\"omega\": 1.0", "\"omegaa\": 1.0")), UsageError);
  EXPECT_THROW(ExperimentConfig::parse(with("\"omega\": 1.0", "\"omega_prime\": 1.0")), UsageError);
  EXPECT_THROW(ExperimentConfig::parse(with("\"t_max\": 12.566370614359172", "\"t_max\": -1")), UsageError);
  EXPECT_THROW(ExperimentConfig::parse(with("\"procedure\"", "\"initial_state\": {\"amplitudes\": [0.6, 0.7]}, \"procedure\"")),
               UsageError);
  EXPECT_THROW(ExperimentConfig::parse(with("\"procedure\"", "\"initial_state\": 3, \"procedure\"")), UsageError);
  EXPECT_THROW(ExperimentConfig::parse(with("{\"kind\": \"free\"}", "{\"kind\": \"pulsed_selective\", \"n_ladder\": [10, 10]}")),
               UsageError);
  EXPECT_THROW(ExperimentConfig::parse(with("{\"kind\": \"free\"}", "{\"kind\": \"continuous\"}")), UsageError);
  EXPECT_THROW(ExperimentConfig::parse("{not json"), UsageError);
  // Amplitudes normalized within 1e-9 are accepted.
  EXPECT_NO_THROW(ExperimentConfig::parse(with("\"procedure\"", "\"initial_state\": {\"amplitudes\": [0.6, 0.8000000001]}, \"procedure\"")));
}

TEST(config, overrides) {
  const auto c = apply_overrides(ExperimentConfig::parse(kRabiFree), {"/model/params/omega=2.5", "/name=renamed"});
  EXPECT_EQ(*c.params.omega, 2.5);
  EXPECT_EQ(c.name, "renamed");
  EXPECT_THROW(apply_overrides(c, {"model.omega=2"}), UsageError);
  EXPECT_THROW(apply_overrides(c, {"/time/samples=1"}), UsageError);
}

// --- execute ----------------------------------------------------------------

TEST(execute, free_rabi_matches_cosine) {
  const auto r = execute(ExperimentConfig::parse(kRabiFree));
  const auto& t = r.series.axis();
  const auto& p1 = r.series.column("p1");
  ASSERT_EQ(t.size(), 200u);
  for (std::size_t i = 0; i < t.size(); ++i) EXPECT_NEAR(p1[i], std::pow(std::cos(t[i] / 2), 2), 1e-10);
  EXPECT_LT(r.scalar("max_closed_form_deviation"), 1e-10);
  EXPECT_NEAR(r.scalar("tau_zeno"), 2.0, 1e-12);
}

TEST(execute, pulsed_selective_summary_survival) {
  const auto r = execute(ExperimentConfig::parse(kRabiPulsed));
  EXPECT_NEAR(r.scalar("survival_final"), 0.97563, 1e-5);
  ASSERT_TRUE(r.ladder.has_value());
  const auto& s = r.ladder->column("survival");
  EXPECT_LT(s[0], s[1]);
  EXPECT_LT(s[1], s[2]);
  const auto& d = r.ladder->column("distance");
  EXPECT_GT(d[0], d[1]);
  EXPECT_GT(d[1], d[2]);
}

TEST(execute, nonselective_conserves_subspace_weights) {
  const auto r = execute(ExperimentConfig::parse(kThreeLevelNonselective));
  EXPECT_LT(r.scalar("trace_drift"), 0.05);
  EXPECT_LT(r.scalar("offdiagonal_leakage"), 0.02);
  EXPECT_TRUE(r.series.has_column("w2"));
  EXPECT_TRUE(r.series.has_column("p3_limit"));
}

TEST(execute, closed_form_requires_a_formula) {
  auto c = ExperimentConfig::parse(kRabiFree);
  c.procedure.kind = Procedure::kClosedForm;
  EXPECT_NEAR(execute(c).series.column("p1_closed_form")[10], std::pow(std::cos(c.t_max * 10 / 199 / 2), 2), 1e-14);
  c.initial_state = 2;
  EXPECT_THROW(execute(c), UsageError);
}

TEST(execute, non_hermitian_fit) {
  auto c = ExperimentConfig::parse(R"({
    "model": {"name": "two_level_effective", "params": {"omega": 1.0, "gamma_small": 20}},
    "procedure": {"kind": "free", "fit_window": [5, 50]}, "time": {"t_max": 50, "samples": 101}})");
  const auto r = execute(c);
  EXPECT_NEAR(r.scalar("fitted_decay_rate") / (1.0 / 20.0), 1.0, 0.1);
  EXPECT_FALSE(r.has_scalar("tau_zeno"));
}

TEST(execute, deterministic_csv) {
  const auto c = ExperimentConfig::parse(kRabiPulsed);
  EXPECT_EQ(execute(c).series.to_csv(), execute(c).series.to_csv());
}

TEST(execute, integrity_violation_is_reported) {
  TimeSeries ts("t", {0.0, 1.0});
  ts.add_column("p", {0.5, 1.0 + 1e-3}, true);
  try {
    verify_probabilities(ts, "unit");
    FAIL() << "expected IntegrityError";
  } catch (const IntegrityError& e) {
    EXPECT_NE(std::string(e.what()).find("row 1"), std::string::npos);
  }
  TimeSeries ok("t", {0.0, 1.0});
  ok.add_column("p", {0.5, 1.0 + 1e-9}, true);
  EXPECT_NO_THROW(verify_probabilities(ok, "unit"));
}

// --- files, presets, golden headers -----------------------------------------

TEST(files, run_writes_csv_and_summary) {
  TempDir dir;
  auto c = ExperimentConfig::parse(kRabiPulsed);
  const RunFiles files = run(c, dir.path());
  EXPECT_EQ(files.csv, dir.path() / "rabi_pulsed.csv");
  ASSERT_TRUE(files.ladder_csv.has_value());
  const auto summary = nlohmann::json::parse(read(files.summary));
  EXPECT_NEAR(summary["scalars"]["survival_final"].get<double>(), 0.97563, 1e-5);
  EXPECT_TRUE(summary.contains("wall_clock_seconds"));
  // The echoed config reparses to the same experiment.
  EXPECT_EQ(ExperimentConfig::parse(summary["config"].dump()), c);
  const std::string csv = read(files.csv);
  EXPECT_EQ(csv.find('\r'), std::string::npos);
  EXPECT_EQ(csv.back(), '\n');
}

TEST(files, output_directory_precedence) {
  ::setenv(kOutputDirEnv, "/env/dir", 1);
  EXPECT_EQ(resolve_output("x.csv", std::nullopt), fs::path("/env/dir/x.csv"));
  EXPECT_EQ(resolve_output("x.csv", fs::path("/flag")), fs::path("/flag/x.csv"));
  EXPECT_EQ(resolve_output("/abs/x.csv", fs::path("/flag")), fs::path("/abs/x.csv"));
  ::unsetenv(kOutputDirEnv);
  EXPECT_EQ(resolve_output("x.csv", std::nullopt), fs::path("x.csv"));
}

TEST(presets, fig6_layout_and_accuracy) {
  const auto r = compute_preset("fig6");
  EXPECT_EQ(first_line(r.series.to_csv()), "t,p1_num_1,p1_cf_1,p1_num_3,p1_cf_3,p1_num_9,p1_cf_9");
  EXPECT_EQ(r.series.rows(), 400u);
  EXPECT_DOUBLE_EQ(r.series.axis().back(), 40.0);
  EXPECT_LE(r.scalar("max_deviation"), 1e-9);
}

TEST(presets, fig7_layout_and_report) {
  const auto r = compute_preset("fig7");
  EXPECT_EQ(first_line(r.series.to_csv()), "t,p1_num_1,p1_cf_1,p1_num_3,p1_cf_3,p1_num_9,p1_cf_9");
  // The achieved maximum is reported whatever its size.
  EXPECT_GT(r.scalar("max_deviation"), 0.0);
  EXPECT_LE(r.scalar("max_deviation_9"), 0.05);
  EXPECT_FALSE(r.warnings.empty());
}

TEST(presets, fig1_shows_zeno_slowdown) {
  const auto r = compute_preset("fig1");
  EXPECT_GT(r.series.column("p_measured").back(), r.series.column("p_free").back());
  EXPECT_NEAR(r.series.column("p_measured").back(), r.series.column("p_exponential").back(), 1e-12);
  EXPECT_DOUBLE_EQ(r.series.axis().back(), 2.0);
}

TEST(presets, qubit_protection_contrast) {
  const auto r = compute_preset("qubit_protection");
  EXPECT_LE(r.scalar("block_distance_protected"), 0.05);
  EXPECT_LE(r.scalar("leakage_protected"), 0.05);
  EXPECT_LT(r.scalar("flip_population_unprotected"), 0.2);
  EXPECT_THROW(compute_preset("fig2"), UsageError);
}

TEST(golden, csv_headers) {
  std::istringstream expected(read(golden("headers.txt")));
  std::string line;
  while (std::getline(expected, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto sep = line.find(' ');
    const std::string key = line.substr(0, sep), header = line.substr(sep + 1);
    std::string actual;
    if (key.rfind("preset:", 0) == 0) {
      actual = first_line(compute_preset(key.substr(7)).series.to_csv());
    } else {
      const auto r = execute(ExperimentConfig::load(fs::path(ZENO_CONFIG_DIR) / key));
      actual = first_line(r.series.to_csv());
    }
    EXPECT_EQ(actual, header) << key;
  }
}

TEST(golden, rabi_free_csv_bytes) {
  const auto r = execute(ExperimentConfig::load(fs::path(ZENO_CONFIG_DIR) / "rabi_free.json"));
  EXPECT_EQ(r.series.to_csv(), read(golden("rabi_free.csv")));
}

TEST(golden, fig1_csv_bytes) { EXPECT_EQ(compute_preset("fig1").series.to_csv(), read(golden("fig1.csv"))); }

// --- sweeps -----------------------------------------------------------------

TEST(sweep, gamma_grid_fits_omega_squared_over_gamma) {
  const auto cfg = SweepConfig::parse(R"({
    "base": {"model": {"name": "two_level_effective", "params": {"omega": 1.0, "gamma_small": 10}},
             "procedure": {"kind": "free", "fit_window": [5, 50]}, "time": {"t_max": 50, "samples": 201}},
    "grid": [{"path": "/model/params/gamma_small", "values": [10, 20, 50]}]})");
  const auto r = sweep(cfg);
  ASSERT_EQ(r.rows.size(), 3u);
  const double gammas[] = {10, 20, 50};
  double previous = 1e9;
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(r.rows[i].index, i);
    EXPECT_FALSE(r.rows[i].failed) << r.rows[i].error;
    double rate = 0.0;
    for (const auto& s : r.rows[i].scalars) {
      if (s.name == "fitted_decay_rate") rate = s.value;
    }
    EXPECT_NEAR(rate * gammas[i], 1.0, 0.1);
    EXPECT_LT(rate, previous);
    previous = rate;
  }
}

TEST(sweep, n_ladder_leakage_decreases) {
  auto cfg = SweepConfig::parse(std::string(R"({"base": )") + kThreeLevelNonselective +
                                R"(, "grid": [{"path": "/procedure/n", "values": [64, 128, 256, 512]}], "jobs": 3})");
  const auto r = sweep(cfg);
  std::ostringstream csv;
  r.write_csv(csv);
  double previous = 1e9;
  for (const auto& row : r.rows) {
    ASSERT_FALSE(row.failed);
    for (const auto& s : row.scalars) {
      if (s.name == "offdiagonal_leakage") {
        EXPECT_LT(s.value, previous);
        previous = s.value;
      }
    }
  }
  EXPECT_EQ(first_line(csv.str()).substr(0, 24), "index,procedure.n,failed");
  // Same rows whatever the thread count.
  cfg.jobs = 1;
  std::ostringstream serial;
  sweep(cfg).write_csv(serial);
  EXPECT_EQ(serial.str(), csv.str());
}

TEST(sweep, failures_and_empty_grid) {
  const auto cfg = SweepConfig::parse(std::string(R"({"base": )") + kRabiFree +
                                      R"(, "grid": [{"path": "/model/params/omega", "values": [1.0, -1.0, "x"]}, {"path": "/time/samples", "values": [5, 9]}]})");
  const auto r = sweep(cfg);
  ASSERT_EQ(r.rows.size(), 6u);
  EXPECT_EQ(r.failures(), 4u);
  EXPECT_FALSE(r.rows[0].failed);
  EXPECT_FALSE(r.rows[1].failed);
  EXPECT_EQ(r.rows[1].values[1], "9");
  EXPECT_THROW(SweepConfig::parse(std::string(R"({"base": )") + kRabiFree + R"(, "grid": []})"), UsageError);
}

// --- subspaces --------------------------------------------------------------

TEST(subspaces, continuous_three_level_split) {
  auto c = ExperimentConfig::parse(kThreeLevelNonselective);
  c.procedure.kind = Procedure::kContinuous;
  const auto doc = nlohmann::json::parse(subspaces_report(c));
  EXPECT_EQ(doc["subspace_dims"], nlohmann::json::parse("[1, 1, 1]"));
  double hz = 0.0;
  for (const auto& row : doc["zeno_hamiltonian"]) {
    for (const auto& z : row) hz = std::max(hz, std::hypot(z[0].get<double>(), z[1].get<double>()));
  }
  EXPECT_LT(hz, 1e-14);
  c.procedure.kind = Procedure::kFree;
  EXPECT_THROW(subspaces_report(c), UsageError);
}

// --- command line -----------------------------------------------------------

TEST(cli, exit_codes) {
  TempDir dir;
  const fs::path good = dir.path() / "good.json";
  const fs::path bad = dir.path() / "bad.json";
  write(good, kRabiPulsed);
  std::string bad_text = kRabiPulsed;
  bad_text.replace(bad_text.find("\"samples\": 9"), 12, "\"samples\": 1");
  write(bad, bad_text);
  const std::string out = (dir.path() / "out").string();

  EXPECT_EQ(cli({"run", good.string(), "--out", out}), kExitOk);
  EXPECT_TRUE(fs::exists(dir.path() / "out" / "rabi_pulsed.csv"));
  EXPECT_EQ(cli({"run", bad.string()}), kExitUsage);
  EXPECT_EQ(cli({"run", (dir.path() / "missing.json").string()}), kExitUsage);
  EXPECT_EQ(cli({"preset", "fig2", "--out", out}), kExitUsage);
  EXPECT_EQ(cli({"preset", "fig6", "--out", out}), kExitOk);
  EXPECT_TRUE(fs::exists(dir.path() / "out" / "fig6_summary.json"));
  EXPECT_EQ(cli({"bogus"}), kExitUsage);
  EXPECT_EQ(cli({}), kExitUsage);
  EXPECT_EQ(cli({"--help"}), kExitOk);

  std::string printed;
  EXPECT_EQ(cli({"subspaces", good.string()}, &printed), kExitOk);
  EXPECT_NE(printed.find("zeno_hamiltonian"), std::string::npos);

  const fs::path sweep_file = dir.path() / "sweep.json";
  write(sweep_file, R"({"base": "good.json", "grid": [{"path": "/procedure/n", "values": [10, 0, 100]}],
                        "outputs": {"csv_path": "s.csv", "summary_path": "s.json"}})");
  EXPECT_EQ(cli({"sweep", sweep_file.string(), "--out", out}), kExitPartial);
  const std::string csv = read(dir.path() / "out" / "s.csv");
  EXPECT_NE(csv.find("\n1,0,1,"), std::string::npos);
}

TEST(cli, set_overrides_file_values) {
  TempDir dir;
  const fs::path good = dir.path() / "good.json";
  write(good, kRabiFree);
  EXPECT_EQ(cli({"run", good.string(), "--out", dir.path().string(), "--set", "/time/samples=3", "--csv", "x.csv"}),
            kExitOk);
  const std::string csv = read(dir.path() / "x.csv");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 4);
}
