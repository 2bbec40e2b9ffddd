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
#include <cmath>
#include <sstream>

#include "detail.hpp"
#include "zeno/engine.hpp"

namespace zeno {

namespace {

void check_steps(const char* op, int n, double t) {
  if (n < 1) throw PreconditionError(std::string(op) + ": N must be >= 1");
  if (!(t >= 0.0) || !std::isfinite(t)) {
    throw PreconditionError(std::string(op) + ": total time must be finite and >= 0");
  }
}

const Operator& selective_projector(const PulsedSpec& spec) {
  if (const auto* p = std::get_if<Operator>(&spec.target)) return *p;
  throw StructuralError("pulsed_selective_evolve: spec carries a projector family, not a projector");
}

const ProjectorFamily& nonselective_family(const PulsedSpec& spec) {
  if (const auto* f = std::get_if<ProjectorFamily>(&spec.target)) return *f;
  throw StructuralError("nonselective_evolve: spec carries a single projector, not a family");
}

QuantumState make_density(Matrix rho, bool expect_unit_trace) {
  rho = (0.5 * (rho + rho.adjoint())).eval();
  if (expect_unit_trace && std::abs(rho.trace().real() - 1.0) <= 1e-12) {
    return QuantumState::density(std::move(rho));
  }
  return QuantumState::unnormalized_density(std::move(rho));
}

}  // namespace

Operator pulsed_selective_operator(const Operator& h, const Operator& p, int n, double t) {
  constexpr const char* kOp = "pulsed_selective_operator";
  check_steps(kOp, n, t);
  detail::require_same_dim(kOp, h.dim(), p.dim());
  detail::require_projector(kOp, p);
  const Matrix& pm = p.matrix();
  const Matrix step = pm * propagator(h, t / n).matrix() * pm;
  return Operator(detail::matrix_power(step, n));
}

SelectiveOutcome pulsed_selective_evolve(const Operator& h, const PulsedSpec& spec,
                                         const QuantumState& rho0) {
  constexpr const char* kOp = "pulsed_selective_evolve";
  const Operator& p = selective_projector(spec);
  detail::require_same_dim(kOp, h.dim(), rho0.dim());
  const Matrix rho = rho0.as_density();
  const Matrix& pm = p.matrix();
  detail::require_projector(kOp, p);
  if (spectral_norm(pm * rho * pm - rho) > 1e-10) {
    throw PreconditionError("pulsed_selective_evolve: initial state not supported in Ran P");
  }
  const Matrix v = pulsed_selective_operator(h, p, spec.n, spec.t).matrix();
  Matrix out = v * rho * v.adjoint();
  const double survival = out.trace().real();
  if (!(survival >= 1e-300)) {
    std::ostringstream os;
    os << "pulsed_selective_evolve: survival " << survival << " underflows (N = " << spec.n << ")";
    throw UnderflowError(os.str());
  }
  out /= survival;
  return {make_density(std::move(out), true), survival};
}

Operator pulsed_limit_evolution(const Operator& h, const Operator& p, double t) {
  constexpr const char* kOp = "pulsed_limit_evolution";
  detail::require_same_dim(kOp, h.dim(), p.dim());
  detail::require_projector(kOp, p);
  const Matrix& pm = p.matrix();
  Matrix php = pm * h.matrix() * pm;
  const Operator reduced = h.is_hermitian() ? Operator::hermitian(std::move(php)) : Operator(std::move(php));
  return Operator(pm * propagator(reduced, t).matrix());
}

QuantumState nonselective_evolve(const Operator& h, const PulsedSpec& spec, const QuantumState& rho0) {
  constexpr const char* kOp = "nonselective_evolve";
  const ProjectorFamily& family = nonselective_family(spec);
  check_steps(kOp, spec.n, spec.t);
  detail::require_same_dim(kOp, h.dim(), family.dim());
  detail::require_same_dim(kOp, h.dim(), rho0.dim());
  const Matrix u = propagator(h, spec.t / spec.n).matrix();
  const Matrix ud = u.adjoint();
  Matrix rho = rho0.as_density();
  for (int step = 0; step < spec.n; ++step) rho = family.dephase(u * rho * ud);
  return make_density(std::move(rho), h.is_hermitian());
}

double offdiagonal_leakage(const Operator& h, const ProjectorFamily& family, int n, double t) {
  constexpr const char* kOp = "offdiagonal_leakage";
  check_steps(kOp, n, t);
  detail::require_same_dim(kOp, h.dim(), family.dim());
  const Matrix u = propagator(h, t / n).matrix();
  const std::size_t count = family.size();

  // Per-block step operators A_m = P_m U and their powers A_m^k, k < N.
  std::vector<Matrix> step(count);
  std::vector<std::vector<Matrix>> powers(count);
  for (std::size_t m = 0; m < count; ++m) {
    step[m] = family[m].projector.matrix() * u;
    powers[m].reserve(static_cast<std::size_t>(n));
    powers[m].push_back(Matrix::Identity(h.dim(), h.dim()));
    for (int k = 1; k < n; ++k) powers[m].push_back(step[m] * powers[m].back());
  }

  double leakage = 0.0;
  for (std::size_t m = 0; m < count; ++m) {
    const Matrix& pm = family[m].projector.matrix();
    for (std::size_t target = 0; target < count; ++target) {
      if (target == m) continue;
      const Matrix jump = step[target];
      for (int k = 0; k < n; ++k) {
        const Matrix branch = powers[target][static_cast<std::size_t>(n - 1 - k)] * jump *
                              powers[m][static_cast<std::size_t>(k)] * pm;
        leakage = std::max(leakage, spectral_norm(branch));
      }
    }
  }
  return leakage;
}

}  // namespace zeno
