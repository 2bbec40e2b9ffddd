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

// Few-level model Hamiltonians and closed-form survival probabilities.
//
// Frequencies are in units of a caller-chosen reference frequency (hbar = 1).
// Basis ordering follows the row-vector convention <1| = (1,0,0), ... for the
// two- and three-level models and <0| = (1,0,0,0), ... for the four-level one,
// so basis label L maps to index L - 1 (resp. L).

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "zeno/linalg.hpp"

namespace zeno::models {

// Stable names used in experiment configs.
inline constexpr const char* kRabiTwoLevel = "rabi_two_level";
inline constexpr const char* kTwoLevelEffective = "two_level_effective";
inline constexpr const char* kThreeLevelIdeal = "three_level_ideal";
inline constexpr const char* kThreeLevelDissipative = "three_level_dissipative";
inline constexpr const char* kFourLevel = "four_level";

struct ModelParams {
  std::optional<double> omega;        // Rabi coupling 1 <-> 2
  std::optional<double> omega_prime;  // coupling 2 <-> 3
  std::optional<double> gamma_big;    // decay rate of level 3
  std::optional<double> gamma_small;  // effective absorption omega'^2 / Gamma
  std::optional<double> omega_big;    // qubit Rabi coupling 0 <-> 1

  // Throws PreconditionError for non-finite values or an inconsistent
  // gamma_small when omega_prime and gamma_big are also given.
  void validate() const;

  // gamma_small if given, otherwise omega'^2 / Gamma.
  double effective_absorption() const;

  bool operator==(const ModelParams&) const = default;
};

// (omega/2) sigma_x.
Operator rabi_two_level(const ModelParams& p);

// (1/2) [[0, w, 0], [w, 0, w'], [0, w', -i Gamma]].
Operator three_level_dissipative(const ModelParams& p);

// (1/2) [[0, w], [w, -i gamma]].
Operator two_level_effective(const ModelParams& p);

// total = system + omega' * control, with system the omega block and control
// (1/2)(|2><3| + |3><2|).
struct SplitHamiltonian {
  Operator total;
  Operator system;
  Operator control;
  double coupling = 0.0;  // the factor multiplying `control`
};

SplitHamiltonian three_level_ideal(const ModelParams& p);

// [[0, W, 0, 0], [W, 0, w, 0], [0, w, 0, w'], [0, 0, w', 0]], W = omega_big.
Operator four_level(const ModelParams& p);

// four_level split as system (W and w terms) + omega' * (|2><3| + |3><2|).
SplitHamiltonian four_level_split(const ModelParams& p);

// [w'^2 + w^2 cos(sqrt(w'^2 + w^2) t / 2)]^2 / (w'^2 + w^2)^2.
double closed_form_sp3(double omega, double omega_prime, double t);

// Small-Gamma expansion of the dissipative three-level survival probability.
double closed_form_sp3s(double omega, double omega_prime, double gamma_big, double t);

// Exact |<1| exp(-i H_eff t) |1>|^2 for the two-level effective model, from
// the spectral decomposition of H_eff. Throws ExceptionalPointError when
// |gamma - 2 omega| < 1e-8 omega.
double closed_form_two_level_decay(double omega, double gamma, double t);

// Model lookup by config name.
struct ModelInfo {
  std::string name;
  Eigen::Index dim = 0;
  int first_label = 1;  // basis label of index 0
};

const std::vector<ModelInfo>& known_models();
// Throws PreconditionError for an unknown name.
const ModelInfo& model_info(const std::string& name);
// Total Hamiltonian for a named model.
Operator build(const std::string& name, const ModelParams& p);
// System/control split for models that have one (three_level_ideal,
// four_level); std::nullopt otherwise.
std::optional<SplitHamiltonian> build_split(const std::string& name, const ModelParams& p);

}  // namespace zeno::models
