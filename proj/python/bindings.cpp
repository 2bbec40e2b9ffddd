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

// Python bindings. Operators cross the boundary as complex NumPy arrays; the
// structural flag is inferred from the matrix.

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "zeno/engine.hpp"
#include "zeno/models.hpp"
#include "zeno/runner.hpp"

namespace py = pybind11;
using namespace zeno;

namespace {

Operator as_operator(const Matrix& m) {
  if (is_hermitian_matrix(m)) return Operator::hermitian(m);
  if (is_unitary_matrix(m)) return Operator::unitary(m);
  return Operator(m);
}

QuantumState as_state(const Vector& v) { return QuantumState::pure(v); }

models::ModelParams params_from(const py::kwargs& kw) {
  models::ModelParams p;
  for (const auto& [key, value] : kw) {
    const auto name = key.cast<std::string>();
    const double v = value.cast<double>();
    if (name == "omega") p.omega = v;
    else if (name == "omega_prime") p.omega_prime = v;
    else if (name == "gamma_big") p.gamma_big = v;
    else if (name == "gamma_small") p.gamma_small = v;
    else if (name == "omega_big") p.omega_big = v;
    else throw py::value_error("unknown model parameter '" + name + "'");
  }
  return p;
}

py::dict series_dict(const TimeSeries& ts) {
  py::dict d;
  d[py::str(ts.axis_name())] = ts.axis();
  for (const auto& c : ts.columns()) d[py::str(c.name)] = c.values;
  return d;
}

py::dict scalars_dict(const std::vector<runner::Scalar>& scalars) {
  py::dict d;
  for (const auto& s : scalars) d[py::str(s.name)] = s.value;
  return d;
}

py::list warnings_list(const Warnings& warnings) {
  py::list l;
  for (const auto& w : warnings) l.append(py::make_tuple(w.operation, w.message));
  return l;
}

py::tuple split_tuple(const ZenoSplit& s) {
  py::list projectors;
  for (const auto& m : s.family.members()) projectors.append(py::make_tuple(m.eigenvalue, m.projector.matrix()));
  return py::make_tuple(s.zeno_hamiltonian.matrix(), projectors);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Quantum Zeno dynamics on finite-dimensional systems";

  auto structural = py::register_exception<StructuralError>(m, "StructuralError", PyExc_ValueError);
  py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);
  auto numerical = py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);
  py::register_exception<SingularityError>(m, "SingularityError", numerical.ptr());
  py::register_exception<UnderflowError>(m, "UnderflowError", numerical.ptr());
  py::register_exception<ExceptionalPointError>(m, "ExceptionalPointError", numerical.ptr());
  py::register_exception<runner::UsageError>(m, "UsageError", PyExc_ValueError);
  py::register_exception<runner::IntegrityError>(m, "IntegrityError", PyExc_RuntimeError);
  (void)structural;

  m.def("expm", &expm, py::arg("a"), "exp(A) for a square complex matrix.");
  m.def(
      "propagator", [](const Matrix& h, double t) { return propagator(as_operator(h), t).matrix(); }, py::arg("h"),
      py::arg("t"), "exp(-iHt).");
  m.def(
      "spectral_projections",
      [](const Matrix& a) {
        py::list out;
        for (const auto& mem : spectral_projections(as_operator(a)).members()) {
          out.append(py::make_tuple(mem.eigenvalue, mem.projector.matrix()));
        }
        return out;
      },
      py::arg("a"), "List of (eigenvalue or eigenphase, projector) of a Hermitian or unitary matrix.");

  m.def(
      "survival_probability",
      [](const Matrix& h, const Vector& psi0, double t) {
        return survival_probability(as_operator(h), as_state(psi0), t);
      },
      py::arg("h"), py::arg("psi0"), py::arg("t"));
  m.def(
      "zeno_time", [](const Matrix& h, const Vector& psi0) { return zeno_time(as_operator(h), as_state(psi0)); },
      py::arg("h"), py::arg("psi0"));
  m.def(
      "effective_decay_rate",
      [](const Matrix& h, const Vector& psi0, double tau) {
        return effective_decay_rate(as_operator(h), as_state(psi0), tau);
      },
      py::arg("h"), py::arg("psi0"), py::arg("tau"));
  m.def(
      "fit_decay_rate", [](const std::vector<double>& t, const std::vector<double>& p) { return fit_decay_rate(t, p); },
      py::arg("t"), py::arg("p"));

  m.def(
      "pulsed_selective_survival",
      [](const Matrix& h, const Vector& psi0, int n, double t) {
        const Operator p = projector_onto({psi0});
        const auto rho0 = QuantumState::density(Matrix(psi0 * psi0.adjoint()));
        return pulsed_selective_evolve(as_operator(h), PulsedSpec{p, n, t}, rho0).survival;
      },
      py::arg("h"), py::arg("psi0"), py::arg("n"), py::arg("t"),
      "Survival after n selective measurements of |psi0><psi0| over time t.");
  m.def(
      "offdiagonal_leakage",
      [](const Matrix& h, const Matrix& hc, int n, double t) {
        return offdiagonal_leakage(as_operator(h), spectral_projections(as_operator(hc)), n, t);
      },
      py::arg("h"), py::arg("hc"), py::arg("n"), py::arg("t"),
      "Leakage of n nonselective measurements over the eigenspaces of hc.");
  m.def(
      "continuous_limit",
      [](const Matrix& h, const Matrix& hc) { return split_tuple(continuous_limit(as_operator(h), as_operator(hc))); },
      py::arg("h"), py::arg("hc"), "(H_Z, [(eigenvalue, projector), ...]) over the eigenspaces of hc.");
  m.def(
      "kicked_limit",
      [](const Matrix& h, const Matrix& kick) { return split_tuple(kicked_limit(as_operator(h), as_operator(kick))); },
      py::arg("h"), py::arg("kick"), "(H_Z, [(eigenphase, projector), ...]) over the eigenspaces of the kick.");

  m.def(
      "model", [](const std::string& name, const py::kwargs& kw) { return models::build(name, params_from(kw)).matrix(); },
      py::arg("name"), "Hamiltonian of a named model.");
  m.def("model_names", [] {
    std::vector<std::string> names;
    for (const auto& info : models::known_models()) names.push_back(info.name);
    return names;
  });
  m.def("closed_form_sp3", &models::closed_form_sp3, py::arg("omega"), py::arg("omega_prime"), py::arg("t"));
  m.def("closed_form_sp3s", &models::closed_form_sp3s, py::arg("omega"), py::arg("omega_prime"),
        py::arg("gamma_big"), py::arg("t"));

  m.def(
      "run",
      [](const std::string& config_json) {
        const auto r = runner::execute(runner::ExperimentConfig::parse(config_json));
        py::dict d;
        d["series"] = series_dict(r.series);
        d["ladder"] = r.ladder ? py::object(series_dict(*r.ladder)) : py::object(py::none());
        d["scalars"] = scalars_dict(r.scalars);
        d["warnings"] = warnings_list(r.warnings);
        return d;
      },
      py::arg("config_json"), "Run one experiment config given as JSON text; nothing is written.");
  m.def(
      "preset",
      [](const std::string& name) {
        const auto r = runner::compute_preset(name);
        py::dict d;
        d["series"] = series_dict(r.series);
        d["scalars"] = scalars_dict(r.scalars);
        d["warnings"] = warnings_list(r.warnings);
        return d;
      },
      py::arg("name"));
  m.def("preset_names", &runner::preset_names);
  m.def(
      "cli",
      [](const std::vector<std::string>& args) {
        std::vector<const char*> argv{"zeno"};
        for (const auto& a : args) argv.push_back(a.c_str());
        std::ostringstream out, err;
        const int code = runner::cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Run the command-line interface; returns (exit_code, stdout, stderr).");
}
