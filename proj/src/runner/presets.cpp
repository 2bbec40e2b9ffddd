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

// One-command datasets for the standard figures. Every parameter is pinned
// here and echoed into the summary.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <sstream>

#include "json_util.hpp"
#include "zeno/engine.hpp"

namespace zeno::runner {

namespace fs = std::filesystem;

namespace {

constexpr double kPi = std::numbers::pi;

// Shared grid of the continuous-coupling figures: t in [0, 40/omega].
constexpr double kFigureTMax = 40.0;
constexpr std::size_t kFigureSamples = 400;
constexpr double kFigureOmegaPrimes[] = {1.0, 3.0, 9.0};
constexpr double kFig7Gamma = 0.2;

std::string tag(double omega_prime) { return std::to_string(static_cast<int>(omega_prime)); }

PresetResult fig1() {
  constexpr double omega = 1.0, t_max = 2.0;
  constexpr int n = 5;
  constexpr std::size_t samples = 401;
  models::ModelParams p;
  p.omega = omega;
  const Operator h = models::rabi_two_level(p);
  const auto psi = QuantumState::basis(2, 0);
  const double tau = t_max / n;
  const double p_tau = survival_probability(h, psi, tau);
  const double gamma = effective_decay_rate(h, psi, tau);

  const auto grid = linspace(0.0, t_max, samples);
  std::vector<double> free, measured, expo;
  for (double t : grid) {
    free.push_back(survival_probability(h, psi, t));
    // Measurements at k tau; between them the state evolves freely.
    const int k = std::min(n, static_cast<int>(std::floor(t / tau + 1e-9)));
    measured.push_back(std::pow(p_tau, k) * survival_probability(h, psi, std::max(0.0, t - k * tau)));
    expo.push_back(std::exp(-gamma * t));
  }

  PresetResult r;
  r.name = "fig1";
  json cfg;
  cfg["model"] = json{{"name", models::kRabiTwoLevel}, {"params", json{{"omega", omega}}}};
  cfg["initial_state"] = json{{"label", 1}};
  cfg["n"] = n;
  cfg["time"] = json{{"t_max", t_max}, {"samples", samples}};
  r.config_json = cfg.dump();
  r.series = TimeSeries("t", grid);
  r.series.add_column("p_free", free, true);
  r.series.add_column("p_measured", measured, true);
  r.series.add_column("p_exponential", expo, true);
  r.scalars = {{"tau", tau},
               {"gamma_eff", gamma},
               {"p_free_final", free.back()},
               {"p_measured_final", measured.back()},
               {"p_exponential_final", expo.back()}};
  return r;
}

// Numerical p1 against a closed form for omega' in {1, 3, 9} omega.
PresetResult continuous_figure(const std::string& name, double gamma) {
  constexpr double omega = 1.0;
  const auto grid = linspace(0.0, kFigureTMax, kFigureSamples);
  const auto psi = QuantumState::basis(3, 0);
  PresetResult r;
  r.name = name;
  r.series = TimeSeries("t", grid);
  double overall = 0.0;
  for (double wp : kFigureOmegaPrimes) {
    models::ModelParams p;
    p.omega = omega;
    p.omega_prime = wp;
    p.gamma_big = gamma;
    const Operator h = gamma > 0.0 ? models::three_level_dissipative(p) : models::three_level_ideal(p).total;
    std::vector<double> num, cf;
    double worst = 0.0;
    for (double t : grid) {
      num.push_back(survival_probability(h, psi, t));
      cf.push_back(gamma > 0.0 ? models::closed_form_sp3s(omega, wp, gamma, t)
                               : models::closed_form_sp3(omega, wp, t));
      worst = std::max(worst, std::abs(num.back() - cf.back()));
    }
    r.series.add_column("p1_num_" + tag(wp), std::move(num), true);
    r.series.add_column("p1_cf_" + tag(wp), std::move(cf), true);
    r.scalars.push_back({"max_deviation_" + tag(wp), worst});
    overall = std::max(overall, worst);
    if (gamma > 0.1 * wp) {
      std::ostringstream os;
      os << "small-Gamma expansion used with Gamma/omega' = " << gamma / wp << " > 0.1";
      r.warnings.push_back({"closed_form", os.str()});
    }
  }
  r.scalars.push_back({"max_deviation", overall});

  json cfg;
  json params = json{{"omega", omega}, {"omega_prime", json::array({1.0, 3.0, 9.0})}};
  if (gamma > 0.0) params["gamma_big"] = gamma;
  cfg["model"] = json{{"name", gamma > 0.0 ? models::kThreeLevelDissipative : models::kThreeLevelIdeal},
                      {"params", params}};
  cfg["initial_state"] = json{{"label", 1}};
  cfg["time"] = json{{"t_max", kFigureTMax}, {"samples", kFigureSamples}};
  r.config_json = cfg.dump();
  return r;
}

PresetResult qubit_figure() {
  constexpr double omega_big = 1.0, omega = 10.0, protected_wp = 200.0, contrast_wp = 50.0;
  constexpr std::size_t samples = 201;
  const auto grid = linspace(0.0, 2 * kPi / omega_big, samples);
  PresetResult r;
  r.name = "qubit_protection";
  r.series = TimeSeries("t", grid);
  std::vector<double> p0, p1;
  for (double t : grid) {
    p0.push_back(std::pow(std::cos(omega_big * t), 2));
    p1.push_back(std::pow(std::sin(omega_big * t), 2));
  }
  r.series.add_column("p0_ideal", p0, true);
  r.series.add_column("p1_ideal", p1, true);
  for (const auto& [label, wp] : {std::pair{"protected", protected_wp}, std::pair{"unprotected", 0.0}}) {
    models::ModelParams p;
    p.omega_big = omega_big;
    p.omega = omega;
    p.omega_prime = wp;
    const Operator h = models::four_level(p);
    std::vector<double> a, b, leak;
    for (double t : grid) {
      const Vector psi = propagator(h, t).matrix().col(0);
      a.push_back(std::norm(psi(0)));
      b.push_back(std::norm(psi(1)));
      leak.push_back(std::max(0.0, 1.0 - a.back() - b.back()));
    }
    r.series.add_column(std::string("p0_") + label, std::move(a), true);
    r.series.add_column(std::string("p1_") + label, std::move(b), true);
    r.series.add_column(std::string("leak_") + label, std::move(leak), true);
    const auto qp = qubit_protection(omega_big, omega, wp, samples);
    r.scalars.push_back({std::string("block_distance_") + label, qp.block_distance});
    r.scalars.push_back({std::string("leakage_") + label, qp.leakage});
    r.scalars.push_back({std::string("flip_population_") + label, qp.flip_population});
  }
  r.scalars.push_back({"block_distance_contrast", qubit_protection(omega_big, omega, contrast_wp, samples).block_distance});

  json cfg;
  cfg["model"] = json{{"name", models::kFourLevel},
                      {"params", json{{"omega_big", omega_big}, {"omega", omega},
                                      {"omega_prime", json::array({protected_wp, 0.0})}}}};
  cfg["contrast_omega_prime"] = contrast_wp;
  cfg["initial_state"] = json{{"label", 0}};
  cfg["time"] = json{{"t_max", 2 * kPi / omega_big}, {"samples", samples}};
  r.config_json = cfg.dump();
  return r;
}

}  // namespace

QubitProtection qubit_protection(double omega_big, double omega, double omega_prime, std::size_t samples) {
  models::ModelParams p;
  p.omega_big = omega_big;
  p.omega = omega;
  p.omega_prime = omega_prime;
  const Operator h = models::four_level(p);
  QubitProtection q;
  for (double t : linspace(0.0, 2 * kPi / omega_big, samples)) {
    const Matrix u = propagator(h, t).matrix();
    Matrix target(2, 2);
    target << std::cos(omega_big * t), cplx(0.0, -std::sin(omega_big * t)), cplx(0.0, -std::sin(omega_big * t)),
        std::cos(omega_big * t);
    q.block_distance = std::max(q.block_distance, operator_distance(Matrix(u.topLeftCorner(2, 2)), target));
    for (Eigen::Index col = 0; col < 2; ++col) {
      q.leakage = std::max(q.leakage, u.col(col).tail(2).squaredNorm());
    }
    q.flip_population = std::max(q.flip_population, std::norm(u(1, 0)));
  }
  return q;
}

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names = {"fig1", "fig6", "fig7", "qubit_protection"};
  return names;
}

double PresetResult::scalar(const std::string& key) const {
  for (const auto& s : scalars) {
    if (s.name == key) return s.value;
  }
  throw std::out_of_range("no scalar '" + key + "'");
}

PresetResult compute_preset(const std::string& name) {
  if (name == "fig1") return fig1();
  if (name == "fig6") return continuous_figure("fig6", 0.0);
  if (name == "fig7") return continuous_figure("fig7", kFig7Gamma);
  if (name == "qubit_protection") return qubit_figure();
  std::string known;
  for (const auto& n : preset_names()) known += (known.empty() ? "" : ", ") + n;
  throw UsageError("unknown preset '" + name + "' (known: " + known + ")");
}

RunFiles write_preset(const std::string& name, const std::optional<fs::path>& out_dir) {
  const auto start = std::chrono::steady_clock::now();
  const PresetResult r = compute_preset(name);
  verify_probabilities(r.series, "preset " + name);
  RunFiles files;
  files.csv = resolve_output(name + ".csv", out_dir);
  files.summary = resolve_output(name + "_summary.json", out_dir);
  write_file(files.csv, r.series.to_csv());
  json doc;
  doc["preset"] = name;
  doc["config"] = json::parse(r.config_json);
  doc["scalars"] = scalars_json(r.scalars);
  doc["warnings"] = warnings_json(r.warnings);
  doc["wall_clock_seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  write_file(files.summary, doc.dump(2) + "\n");
  return files;
}

}  // namespace zeno::runner
