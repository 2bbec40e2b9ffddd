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

#include "zeno/models.hpp"

#include <cmath>
#include <sstream>

namespace zeno::models {

namespace {

double require(const std::optional<double>& v, const char* model, const char* key) {
  if (!v) throw PreconditionError(std::string(model) + ": missing parameter '" + key + "'");
  return *v;
}

double require_positive(const std::optional<double>& v, const char* model, const char* key) {
  const double x = require(v, model, key);
  if (!(x > 0.0)) throw PreconditionError(std::string(model) + ": '" + key + "' must be > 0");
  return x;
}

double require_nonnegative(const std::optional<double>& v, const char* model, const char* key) {
  const double x = require(v, model, key);
  if (!(x >= 0.0)) throw PreconditionError(std::string(model) + ": '" + key + "' must be >= 0");
  return x;
}

}  // namespace

void ModelParams::validate() const {
  for (const auto* v : {&omega, &omega_prime, &gamma_big, &gamma_small, &omega_big}) {
    if (*v && !std::isfinite(**v)) throw PreconditionError("ModelParams: non-finite parameter");
  }
  if (gamma_small && omega_prime && gamma_big && *gamma_big > 0.0) {
    const double derived = *omega_prime * *omega_prime / *gamma_big;
    if (std::abs(*gamma_small - derived) > 1e-12 * std::abs(*gamma_small)) {
      std::ostringstream os;
      os << "ModelParams: gamma_small " << *gamma_small << " inconsistent with omega_prime^2/gamma_big = "
         << derived;
      throw PreconditionError(os.str());
    }
  }
}

double ModelParams::effective_absorption() const {
  if (gamma_small) return *gamma_small;
  if (omega_prime && gamma_big && *gamma_big > 0.0) return *omega_prime * *omega_prime / *gamma_big;
  throw PreconditionError("ModelParams: need gamma_small, or omega_prime and gamma_big > 0");
}

Operator rabi_two_level(const ModelParams& p) {
  p.validate();
  const double w = require_positive(p.omega, kRabiTwoLevel, "omega");
  Matrix h(2, 2);
  h << 0.0, 0.5 * w, 0.5 * w, 0.0;
  return Operator::hermitian(h);
}

Operator three_level_dissipative(const ModelParams& p) {
  p.validate();
  const double w = require_positive(p.omega, kThreeLevelDissipative, "omega");
  const double wp = require_positive(p.omega_prime, kThreeLevelDissipative, "omega_prime");
  const double g = require_nonnegative(p.gamma_big, kThreeLevelDissipative, "gamma_big");
  Matrix h = Matrix::Zero(3, 3);
  h(0, 1) = h(1, 0) = 0.5 * w;
  h(1, 2) = h(2, 1) = 0.5 * wp;
  h(2, 2) = cplx(0.0, -0.5 * g);
  return g == 0.0 ? Operator::hermitian(h) : Operator(h);
}

Operator two_level_effective(const ModelParams& p) {
  p.validate();
  const double w = require_positive(p.omega, kTwoLevelEffective, "omega");
  const double g = p.effective_absorption();
  if (!(g >= 0.0)) throw PreconditionError("two_level_effective: gamma must be >= 0");
  Matrix h(2, 2);
  h << 0.0, 0.5 * w, 0.5 * w, cplx(0.0, -0.5 * g);
  return g == 0.0 ? Operator::hermitian(h) : Operator(h);
}

SplitHamiltonian three_level_ideal(const ModelParams& p) {
  p.validate();
  const double w = require_positive(p.omega, kThreeLevelIdeal, "omega");
  const double wp = require_nonnegative(p.omega_prime, kThreeLevelIdeal, "omega_prime");
  Matrix system = Matrix::Zero(3, 3);
  system(0, 1) = system(1, 0) = 0.5 * w;
  Matrix control = Matrix::Zero(3, 3);
  control(1, 2) = control(2, 1) = 0.5;
  Matrix total = system + wp * control;
  return {Operator::hermitian(std::move(total)), Operator::hermitian(std::move(system)),
          Operator::hermitian(std::move(control)), wp};
}

SplitHamiltonian four_level_split(const ModelParams& p) {
  p.validate();
  const double big = require_nonnegative(p.omega_big, kFourLevel, "omega_big");
  const double w = require_nonnegative(p.omega, kFourLevel, "omega");
  const double wp = require_nonnegative(p.omega_prime, kFourLevel, "omega_prime");
  Matrix system = Matrix::Zero(4, 4);
  system(0, 1) = system(1, 0) = big;
  system(1, 2) = system(2, 1) = w;
  Matrix control = Matrix::Zero(4, 4);
  control(2, 3) = control(3, 2) = 1.0;
  Matrix total = system + wp * control;
  return {Operator::hermitian(std::move(total)), Operator::hermitian(std::move(system)),
          Operator::hermitian(std::move(control)), wp};
}

Operator four_level(const ModelParams& p) { return four_level_split(p).total; }

double closed_form_sp3(double omega, double omega_prime, double t) {
  const double w2 = omega * omega;
  const double wp2 = omega_prime * omega_prime;
  const double s = w2 + wp2;
  const double amp = wp2 + w2 * std::cos(std::sqrt(s) * t / 2.0);
  return amp * amp / (s * s);
}

double closed_form_sp3s(double omega, double omega_prime, double gamma_big, double t) {
  const double w2 = omega * omega;
  const double wp2 = omega_prime * omega_prime;
  const double s = w2 + wp2;
  const double dark = wp2 * std::exp(-gamma_big * w2 * t / (2.0 * s));
  const double bright = w2 * std::exp(-gamma_big * wp2 * t / (4.0 * s)) * std::cos(std::sqrt(s) * t / 2.0);
  const double amp = dark + bright;
  return amp * amp / (s * s);
}

double closed_form_two_level_decay(double omega, double gamma, double t) {
  if (!(omega > 0.0) || !(gamma > 0.0)) {
    throw PreconditionError("closed_form_two_level_decay: omega and gamma must be > 0");
  }
  if (std::abs(gamma - 2.0 * omega) < 1e-8 * omega) {
    throw ExceptionalPointError("closed_form_two_level_decay: gamma = 2 omega is an exceptional point");
  }
  // Eigenvalues of (1/2)[[0, w], [w, -i g]]: (-i g +- sqrt(4 w^2 - g^2)) / 4.
  const cplx root = std::sqrt(cplx(4.0 * omega * omega - gamma * gamma, 0.0));
  const cplx lp = (cplx(0.0, -gamma) + root) / 4.0;
  const cplx lm = (cplx(0.0, -gamma) - root) / 4.0;
  // Sylvester: <1|f(H)|1> = f(l+) (<1|H|1> - l-)/(l+ - l-) + f(l-) (<1|H|1> - l+)/(l- - l+),
  // with <1|H|1> = 0.
  const cplx cp = -lm / (lp - lm);
  const cplx cm = -lp / (lm - lp);
  const cplx amp = cp * std::exp(cplx(0.0, -1.0) * lp * t) + cm * std::exp(cplx(0.0, -1.0) * lm * t);
  return std::norm(amp);
}

const std::vector<ModelInfo>& known_models() {
  static const std::vector<ModelInfo> models = {
      {kRabiTwoLevel, 2, 1},          {kTwoLevelEffective, 2, 1}, {kThreeLevelIdeal, 3, 1},
      {kThreeLevelDissipative, 3, 1}, {kFourLevel, 4, 0},
  };
  return models;
}

const ModelInfo& model_info(const std::string& name) {
  for (const auto& m : known_models()) {
    if (m.name == name) return m;
  }
  throw PreconditionError("unknown model '" + name + "'");
}

Operator build(const std::string& name, const ModelParams& p) {
  if (name == kRabiTwoLevel) return rabi_two_level(p);
  if (name == kTwoLevelEffective) return two_level_effective(p);
  if (name == kThreeLevelIdeal) return three_level_ideal(p).total;
  if (name == kThreeLevelDissipative) return three_level_dissipative(p);
  if (name == kFourLevel) return four_level(p);
  throw PreconditionError("unknown model '" + name + "'");
}

std::optional<SplitHamiltonian> build_split(const std::string& name, const ModelParams& p) {
  if (name == kThreeLevelIdeal) return three_level_ideal(p);
  if (name == kFourLevel) return four_level_split(p);
  model_info(name);
  return std::nullopt;
}

}  // namespace zeno::models
