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

// Defect measures for structural identities. Each returns a non-negative
// number that vanishes (up to rounding) when the identity holds, so the unit
// tests and the acceptance suite share one definition.

#pragma once

#include "zeno/linalg.hpp"

namespace zeno::properties {

// ||U(s) U(t) - U(s + t)||.
double composition_defect(const Operator& h, double s, double t);

// ||sum_k lambda_k P_k - A|| / max(1, ||A||) over spectral_projections(A).
double reconstruction_defect(const Operator& a);

// ||P(P(x)) - P(x)|| for the dephasing map of `family`.
double idempotence_defect(const ProjectorFamily& family, const Matrix& x);

// ||V(s) V(t) - V(s + t)|| for the pulsed limit evolution V.
double semigroup_defect(const Operator& h, const Operator& p, double s, double t);

// ||V(t)^dagger - V(-t)||.
double time_reversal_defect(const Operator& h, const Operator& p, double t);

// Slope of log|p(t) - (1 - t^2 / tau_Z^2)| against log t over 12 log-spaced
// points on [0.01, 0.1] tau_Z. Requires a non-stationary state.
double short_time_residual_exponent(const Operator& h, const QuantumState& psi0);

}  // namespace zeno::properties
