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

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>

#include "json_util.hpp"
#include "../engine/detail.hpp"
#include "setup.hpp"
#include "zeno/engine.hpp"

namespace zeno::runner {

namespace fs = std::filesystem;

namespace {

std::string population_name(const Setup& s, Eigen::Index i, const char* suffix = "") {
  return "p" + std::to_string(s.info.first_label + i) + suffix;
}

void add_populations(TimeSeries& ts, const Setup& s, const std::vector<Matrix>& rhos, const char* suffix = "") {
  for (Eigen::Index i = 0; i < s.info.dim; ++i) {
    std::vector<double> col;
    col.reserve(rhos.size());
    for (const auto& rho : rhos) col.push_back(rho(i, i).real());
    ts.add_column(population_name(s, i, suffix), std::move(col), true);
  }
}

Matrix outer(const Vector& v) { return v * v.adjoint(); }

double overlap(const Vector& psi0, const Matrix& rho) { return psi0.dot(rho * psi0).real(); }

std::vector<double> survival_column(const Setup& s, const std::vector<Matrix>& rhos) {
  std::vector<double> out;
  out.reserve(rhos.size());
  for (const auto& rho : rhos) out.push_back(overlap(s.psi0, rho));
  return out;
}

void add(std::vector<Scalar>& scalars, std::string name, double value) {
  scalars.push_back({std::move(name), value});
}

// Survival of |1> in closed form, if the model has one and the run starts
// in the first basis state.
std::optional<std::function<double(double)>> closed_form(const ExperimentConfig& c, const Setup& s,
                                                         Warnings& warnings) {
  const auto* label = std::get_if<int>(&c.initial_state);
  if (!label || *label != s.info.first_label) return std::nullopt;
  const auto& p = c.params;
  if (c.model == models::kRabiTwoLevel) {
    const double w = *p.omega;
    return [w](double t) { return std::pow(std::cos(w * t / 2.0), 2); };
  }
  if (c.model == models::kThreeLevelIdeal) {
    const double w = *p.omega, wp = p.omega_prime.value_or(0.0);
    return [w, wp](double t) { return models::closed_form_sp3(w, wp, t); };
  }
  if (c.model == models::kThreeLevelDissipative) {
    const double w = *p.omega, wp = *p.omega_prime, g = *p.gamma_big;
    if (g > 0.1 * wp) {
      std::ostringstream os;
      os << "small-Gamma expansion used with Gamma/omega' = " << g / wp << " > 0.1";
      warnings.push_back({"closed_form", os.str()});
    }
    return [w, wp, g](double t) { return models::closed_form_sp3s(w, wp, g, t); };
  }
  if (c.model == models::kTwoLevelEffective) {
    const double w = *p.omega, g = p.effective_absorption();
    if (g == 0.0) return [w](double t) { return std::pow(std::cos(w * t / 2.0), 2); };
    if (std::abs(g - 2.0 * w) < 1e-8 * w) {
      warnings.push_back({"closed_form", "gamma = 2 omega is an exceptional point; closed form skipped"});
      return std::nullopt;
    }
    return [w, g](double t) { return models::closed_form_two_level_decay(w, g, t); };
  }
  return std::nullopt;
}

void add_common_scalars(const ExperimentConfig& c, const Setup& s, RunResult& r) {
  if (s.h.is_hermitian()) {
    const double tz = zeno_time(s.h, QuantumState::pure(s.psi0));
    if (std::isfinite(tz)) add(r.scalars, "tau_zeno", tz);
  }
  if (c.procedure.tau) {
    add(r.scalars, "gamma_eff", effective_decay_rate(s.h, QuantumState::pure(s.psi0), *c.procedure.tau));
  }
}

void add_decay_fit(const ExperimentConfig& c, const Setup& s, RunResult& r) {
  if (s.h.is_hermitian() || !r.series.has_column("survival")) return;
  const auto [lo, hi] = c.procedure.fit_window.value_or(std::make_pair(0.1 * c.t_max, c.t_max));
  std::vector<double> t, p;
  const auto& surv = r.series.column("survival");
  for (std::size_t i = 0; i < s.grid.size(); ++i) {
    if (s.grid[i] >= lo && s.grid[i] <= hi && surv[i] > 0.0) {
      t.push_back(s.grid[i]);
      p.push_back(surv[i]);
    }
  }
  if (t.size() < 2) {
    r.warnings.push_back({"fit_decay_rate", "fewer than two positive samples in the fit window"});
    return;
  }
  add(r.scalars, "fitted_decay_rate", fit_decay_rate(t, p));
}

void run_free(const ExperimentConfig& c, const Setup& s, RunResult& r) {
  std::vector<Matrix> rhos;
  for (double t : s.grid) rhos.push_back(outer(propagator(s.h, t).matrix() * s.psi0));
  add_populations(r.series, s, rhos);
  r.series.add_column("survival", survival_column(s, rhos), true);
  add(r.scalars, "survival_final", r.series.column("survival").back());
  if (auto cf = closed_form(c, s, r.warnings)) {
    std::vector<double> col;
    double worst = 0.0;
    const auto& num = r.series.column(population_name(s, 0));
    for (std::size_t i = 0; i < s.grid.size(); ++i) {
      col.push_back((*cf)(s.grid[i]));
      worst = std::max(worst, std::abs(col.back() - num[i]));
    }
    r.series.add_column(population_name(s, 0, "_closed_form"), std::move(col), true);
    add(r.scalars, "max_closed_form_deviation", worst);
  }
}

void run_closed_form(const ExperimentConfig& c, const Setup& s, RunResult& r) {
  auto cf = closed_form(c, s, r.warnings);
  if (!cf) {
    throw UsageError("closed_form: model '" + c.model + "' has no closed form for this initial state");
  }
  std::vector<double> col;
  for (double t : s.grid) col.push_back((*cf)(t));
  r.series.add_column(population_name(s, 0, "_closed_form"), col, true);
  add(r.scalars, "survival_final", col.back());
}

void run_pulsed_selective(const ExperimentConfig& c, const Setup& s, RunResult& r) {
  const Operator p = selective_projector(c.procedure.projector, s);
  const auto rho0 = QuantumState::density(outer(s.psi0));
  const int n = c.procedure.n;
  std::vector<double> surv, free, limit;
  for (double t : s.grid) {
    surv.push_back(pulsed_selective_evolve(s.h, PulsedSpec{p, n, t}, rho0).survival);
    free.push_back(survival_probability_density(s.h, rho0, p, t));
    limit.push_back((pulsed_limit_evolution(s.h, p, t).matrix() * s.psi0).squaredNorm());
  }
  r.series.add_column("survival", surv, true);
  r.series.add_column("survival_free", free, true);
  r.series.add_column("survival_limit", limit, true);
  add(r.scalars, "survival_final", surv.back());
  add(r.scalars, "survival_free_final", free.back());
  add(r.scalars, "survival_limit_final", limit.back());
  if (!c.procedure.tau) {
    const double tau = c.t_max / n;
    add(r.scalars, "tau", tau);
    try {
      add(r.scalars, "gamma_eff", effective_decay_rate(s.h, QuantumState::pure(s.psi0), tau));
    } catch (const SingularityError& e) {
      r.warnings.push_back({"effective_decay_rate", e.what()});
    }
  }

  if (!c.procedure.n_ladder.empty()) {
    TimeSeries ladder = convergence_profile(s.h, PulsedLadder{p, c.procedure.n_ladder}, s.grid);
    std::vector<double> final;
    for (int m : c.procedure.n_ladder) final.push_back(pulsed_selective_evolve(s.h, PulsedSpec{p, m, c.t_max}, rho0).survival);
    ladder.add_column("survival", std::move(final), true);
    r.ladder = std::move(ladder);
  }
}

struct NonselectiveStats {
  double leakage = 0.0;
  double drift = 0.0;
  double limit_distance = 0.0;
};

NonselectiveStats nonselective_stats(const Setup& s, const ProjectorFamily& fam, int n, double t,
                                     const QuantumState& rho0) {
  NonselectiveStats st;
  st.leakage = offdiagonal_leakage(s.h, fam, n, t);
  const Matrix rho = nonselective_evolve(s.h, PulsedSpec{fam, n, t}, rho0).density_matrix();
  for (const auto& m : fam.members()) {
    const double w = (rho * m.projector.matrix()).trace().real();
    const double w0 = (rho0.density_matrix() * m.projector.matrix()).trace().real();
    st.drift = std::max(st.drift, std::abs(w - w0));
  }
  st.limit_distance = operator_distance(rho, zeno_limit_nonselective(s.h, fam, rho0, t).density_matrix());
  return st;
}

void run_pulsed_nonselective(const ExperimentConfig& c, const Setup& s, RunResult& r) {
  const ProjectorFamily fam = measurement_family(c.procedure.projector, s);
  for (const auto& w : fam.warnings()) r.warnings.push_back(w);
  const auto rho0 = QuantumState::density(outer(s.psi0));
  const int n = c.procedure.n;
  std::vector<Matrix> rhos, limits;
  for (double t : s.grid) {
    rhos.push_back(nonselective_evolve(s.h, PulsedSpec{fam, n, t}, rho0).density_matrix());
    limits.push_back(zeno_limit_nonselective(s.h, fam, rho0, t).density_matrix());
  }
  add_populations(r.series, s, rhos);
  r.series.add_column("survival", survival_column(s, rhos), true);
  for (std::size_t k = 0; k < fam.size(); ++k) {
    std::vector<double> w;
    for (const auto& rho : rhos) w.push_back((rho * fam[k].projector.matrix()).trace().real());
    r.series.add_column("w" + std::to_string(k), std::move(w), true);
  }
  add_populations(r.series, s, limits, "_limit");
  add(r.scalars, "survival_final", r.series.column("survival").back());
  const auto st = nonselective_stats(s, fam, n, c.t_max, rho0);
  add(r.scalars, "offdiagonal_leakage", st.leakage);
  add(r.scalars, "trace_drift", st.drift);
  add(r.scalars, "limit_distance", st.limit_distance);

  if (!c.procedure.n_ladder.empty()) {
    std::vector<double> axis, leak, drift, dist;
    for (int m : c.procedure.n_ladder) {
      const auto rung = nonselective_stats(s, fam, m, c.t_max, rho0);
      axis.push_back(m);
      leak.push_back(rung.leakage);
      drift.push_back(rung.drift);
      dist.push_back(rung.limit_distance);
    }
    TimeSeries ladder("N", std::move(axis));
    ladder.add_column("offdiagonal_leakage", std::move(leak));
    ladder.add_column("trace_drift", std::move(drift));
    ladder.add_column("limit_distance", std::move(dist));
    r.ladder = std::move(ladder);
  }
}

void run_kicked(const ExperimentConfig& c, const Setup& s, RunResult& r) {
  const Operator kick = kick_operator(c.procedure.kick, s);
  const ZenoSplit split = kicked_limit(s.h, kick);
  for (const auto& w : split.warnings()) r.warnings.push_back(w);
  const int n = c.procedure.n;
  const Matrix kick_n = detail::matrix_power(kick.matrix(), n);
  std::vector<Matrix> rhos, limits;
  double last_distance = 0.0;
  for (double t : s.grid) {
    const Matrix un = kicked_evolve(s.h, KickSpec{kick, n, t}).matrix();
    const Matrix lim = kick_n * propagator(split.zeno_hamiltonian, t).matrix();
    rhos.push_back(outer(un * s.psi0));
    limits.push_back(outer(lim * s.psi0));
    last_distance = operator_distance(un, lim);
  }
  add_populations(r.series, s, rhos);
  r.series.add_column("survival", survival_column(s, rhos), true);
  add_populations(r.series, s, limits, "_limit");
  r.series.add_column("survival_limit", survival_column(s, limits), true);
  add(r.scalars, "survival_final", r.series.column("survival").back());
  add(r.scalars, "limit_distance", last_distance);
  if (!c.procedure.n_ladder.empty()) {
    r.ladder = convergence_profile(s.h, KickedLadder{kick, c.procedure.n_ladder}, s.grid);
  }
}

void run_continuous(const ExperimentConfig& c, const Setup& s, RunResult& r) {
  const auto& sp = *s.split;
  const double k = c.procedure.k.value_or(sp.coupling);
  const ZenoSplit split = continuous_limit(sp.system, sp.control);
  for (const auto& w : split.warnings()) r.warnings.push_back(w);
  std::vector<Matrix> rhos, limits;
  double last_distance = 0.0;
  for (double t : s.grid) {
    const Matrix uk = continuous_evolve(sp.system, CouplingSpec{sp.control, k}, t).matrix();
    const Matrix lim = propagator(sp.control, k * t).matrix() * propagator(split.zeno_hamiltonian, t).matrix();
    rhos.push_back(outer(uk * s.psi0));
    limits.push_back(outer(lim * s.psi0));
    last_distance = operator_distance(uk, lim);
  }
  add_populations(r.series, s, rhos);
  r.series.add_column("survival", survival_column(s, rhos), true);
  add_populations(r.series, s, limits, "_limit");
  r.series.add_column("survival_limit", survival_column(s, limits), true);
  add(r.scalars, "k", k);
  add(r.scalars, "survival_final", r.series.column("survival").back());
  add(r.scalars, "limit_distance", last_distance);
  if (!c.procedure.k_ladder.empty()) {
    r.ladder = convergence_profile(sp.system, ContinuousLadder{sp.control, c.procedure.k_ladder}, s.grid);
  }
}

}  // namespace

double RunResult::scalar(const std::string& name) const {
  for (const auto& s : scalars) {
    if (s.name == name) return s.value;
  }
  throw std::out_of_range("no scalar '" + name + "'");
}

bool RunResult::has_scalar(const std::string& name) const {
  return std::any_of(scalars.begin(), scalars.end(), [&](const Scalar& s) { return s.name == name; });
}

RunResult execute(const ExperimentConfig& config) {
  RunResult r;
  try {
    const Setup s = make_setup(config);
    r.series = TimeSeries("t", s.grid);
    add_common_scalars(config, s, r);
    switch (config.procedure.kind) {
      case Procedure::kFree: run_free(config, s, r); break;
      case Procedure::kClosedForm: run_closed_form(config, s, r); break;
      case Procedure::kPulsedSelective: run_pulsed_selective(config, s, r); break;
      case Procedure::kPulsedNonselective: run_pulsed_nonselective(config, s, r); break;
      case Procedure::kKicked: run_kicked(config, s, r); break;
      case Procedure::kContinuous: run_continuous(config, s, r); break;
    }
    add_decay_fit(config, s, r);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  verify_probabilities(r.series, "run");
  if (r.ladder) verify_probabilities(*r.ladder, "ladder");
  return r;
}

void verify_probabilities(const TimeSeries& ts, const std::string& what, double tol) {
  if (const auto v = ts.find_probability_violation(tol)) {
    std::ostringstream os;
    os.precision(17);
    os << what << ": probability column '" << v->column << "' = " << v->value << " at row " << v->row << " ("
       << ts.axis_name() << " = " << v->axis << ") outside [0, 1 + " << tol << "]";
    throw IntegrityError(os.str());
  }
}

fs::path resolve_output(const fs::path& path, const std::optional<fs::path>& out_dir) {
  if (path.is_absolute()) return path;
  if (out_dir) return *out_dir / path;
  if (const char* env = std::getenv(kOutputDirEnv); env && *env) return fs::path(env) / path;
  return path;
}

void write_file(const fs::path& file, const std::string& text) {
  if (file.has_parent_path()) fs::create_directories(file.parent_path());
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write '" + file.string() + "'");
  out << text;
  out.close();
  if (!out) throw std::runtime_error("write to '" + file.string() + "' failed");
}

json scalars_json(const std::vector<Scalar>& scalars) {
  json out = json::object();
  for (const auto& s : scalars) {
    if (std::isfinite(s.value)) {
      out[s.name] = s.value;
    } else {
      out[s.name] = nullptr;
    }
  }
  return out;
}

json warnings_json(const Warnings& warnings) {
  json out = json::array();
  for (const auto& w : warnings) out.push_back(json{{"operation", w.operation}, {"message", w.message}});
  return out;
}

json matrix_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(json::array({m(i, j).real(), m(i, j).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string summary_json(const ExperimentConfig& config, const RunResult& result, double wall_seconds) {
  json doc;
  doc["config"] = config_document(config);
  doc["scalars"] = scalars_json(result.scalars);
  doc["warnings"] = warnings_json(result.warnings);
  doc["wall_clock_seconds"] = wall_seconds;
  return doc.dump(2) + "\n";
}

RunFiles run(const ExperimentConfig& config, const std::optional<fs::path>& out_dir, RunResult* result) {
  const auto start = std::chrono::steady_clock::now();
  RunResult r = execute(config);
  RunFiles files;
  files.csv = resolve_output(config.csv_path, out_dir);
  files.summary = resolve_output(config.summary_path, out_dir);
  write_file(files.csv, r.series.to_csv());
  if (r.ladder) {
    files.ladder_csv = resolve_output(config.ladder_csv_path, out_dir);
    write_file(*files.ladder_csv, r.ladder->to_csv());
  }
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  write_file(files.summary, summary_json(config, r, wall));
  if (result) *result = std::move(r);
  return files;
}

}  // namespace zeno::runner
