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

#include "zeno/properties.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "zeno/engine.hpp"

namespace zeno::properties {

double composition_defect(const Operator& h, double s, double t) {
  const Matrix lhs = propagator(h, s).matrix() * propagator(h, t).matrix();
  return operator_distance(lhs, propagator(h, s + t).matrix());
}

double reconstruction_defect(const Operator& a) {
  const ProjectorFamily fam = spectral_projections(a);
  Matrix sum = Matrix::Zero(a.dim(), a.dim());
  if (a.is_unitary() && !a.is_hermitian()) {
    for (const auto& m : fam.members()) sum += std::exp(cplx(0.0, m.eigenvalue)) * m.projector.matrix();
  } else {
    for (const auto& m : fam.members()) sum += m.eigenvalue * m.projector.matrix();
  }
  return operator_distance(sum, a.matrix()) / std::max(1.0, spectral_norm(a.matrix()));
}

double idempotence_defect(const ProjectorFamily& family, const Matrix& x) {
  const Matrix once = family.dephase(x);
  return operator_distance(family.dephase(once), once);
}

double semigroup_defect(const Operator& h, const Operator& p, double s, double t) {
  const Matrix lhs = pulsed_limit_evolution(h, p, s).matrix() * pulsed_limit_evolution(h, p, t).matrix();
  return operator_distance(lhs, pulsed_limit_evolution(h, p, s + t).matrix());
}

double time_reversal_defect(const Operator& h, const Operator& p, double t) {
  return operator_distance(Matrix(pulsed_limit_evolution(h, p, t).matrix().adjoint()),
                           pulsed_limit_evolution(h, p, -t).matrix());
}

double short_time_residual_exponent(const Operator& h, const QuantumState& psi0) {
  const double tz = zeno_time(h, psi0);
  if (!std::isfinite(tz)) {
    throw PreconditionError("short_time_residual_exponent: state is stationary");
  }
  constexpr int kPoints = 12;
  std::vector<double> log_t, residuals;
  for (int i = 0; i < kPoints; ++i) {
    const double t = tz * 0.01 * std::pow(10.0, static_cast<double>(i) / (kPoints - 1));
    const double residual = std::abs(survival_probability(h, psi0, t) - (1.0 - t * t / (tz * tz)));
    log_t.push_back(std::log(t));
    residuals.push_back(residual);
  }
  // fit_decay_rate is minus the least-squares slope of log(residual).
  return -fit_decay_rate(log_t, residuals);
}

}  // namespace zeno::properties
