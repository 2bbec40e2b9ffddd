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
#include <numbers>

#include "gtest/gtest.h"

#include "zeno/engine.hpp"
#include "zeno/models.hpp"

using namespace zeno;
using namespace zeno::models;

namespace {

ModelParams params(double omega, double omega_prime = 0.0, double gamma_big = 0.0) {
  ModelParams p;
  p.omega = omega;
  p.omega_prime = omega_prime;
  p.gamma_big = gamma_big;
  return p;
}

double p1(const Operator& h, double t) { return survival_probability(h, QuantumState::basis(h.dim(), 0), t); }

}  // namespace

TEST(models, shapes_and_flags) {
  EXPECT_EQ(rabi_two_level(params(1.0)).dim(), 2);
  EXPECT_TRUE(rabi_two_level(params(1.0)).is_hermitian());
  EXPECT_TRUE(three_level_dissipative(params(1.0, 2.0, 0.0)).is_hermitian());
  EXPECT_FALSE(three_level_dissipative(params(1.0, 2.0, 0.5)).is_hermitian());
  EXPECT_EQ(build(kFourLevel, [] {
              ModelParams p;
              p.omega_big = 1.0;
              p.omega = 2.0;
              p.omega_prime = 3.0;
              return p;
            }())
                .dim(),
            4);
  EXPECT_NEAR(three_level_dissipative(params(1.0, 2.0, 0.5))(2, 2).imag(), -0.25, 1e-15);
}

TEST(models, parameter_validation) {
  EXPECT_THROW(rabi_two_level(ModelParams{}), PreconditionError);
  EXPECT_THROW(rabi_two_level(params(-1.0)), PreconditionError);
  EXPECT_THROW(three_level_dissipative(params(1.0, 1.0, -0.1)), PreconditionError);
  EXPECT_THROW(build("five_level", params(1.0)), PreconditionError);
  ModelParams p = params(1.0, 2.0, 8.0);
  p.gamma_small = 0.5;
  EXPECT_NO_THROW(two_level_effective(p));
  p.gamma_small = 0.6;
  EXPECT_THROW(two_level_effective(p), PreconditionError);
  ModelParams q = params(1.0);
  q.omega_prime = std::nan("");
  EXPECT_THROW(three_level_ideal(q), PreconditionError);
}

TEST(models, lookup) {
  EXPECT_EQ(model_info(kThreeLevelIdeal).dim, 3);
  EXPECT_EQ(model_info(kFourLevel).first_label, 0);
  EXPECT_EQ(model_info(kRabiTwoLevel).first_label, 1);
  EXPECT_TRUE(build_split(kThreeLevelIdeal, params(1.0, 2.0)).has_value());
  EXPECT_FALSE(build_split(kRabiTwoLevel, params(1.0)).has_value());
  EXPECT_THROW(build_split("nope", params(1.0)), PreconditionError);
}

TEST(models, dissipative_without_decay_is_ideal) {
  for (double wp : {0.5, 1.0, 4.0}) {
    const Operator a = three_level_dissipative(params(1.0, wp, 0.0));
    const Operator b = three_level_ideal(params(1.0, wp)).total;
    EXPECT_LT(operator_distance(a, b), 1e-15);
  }
}

TEST(models, three_level_ideal_matches_closed_form) {
  for (double wp : {1.0, 3.0, 9.0}) {
    const Operator h = three_level_ideal(params(1.0, wp)).total;
    for (int i = 0; i <= 400; ++i) {
      const double t = 0.1 * i;
      EXPECT_NEAR(p1(h, t), closed_form_sp3(1.0, wp, t), 1e-9) << "omega' = " << wp << ", t = " << t;
    }
  }
}

TEST(models, closed_form_sp3_values) {
  EXPECT_DOUBLE_EQ(closed_form_sp3(1.0, 3.0, 0.0), 1.0);
  // Cosine at -1: ((9 - 1) / 10)^2.
  EXPECT_NEAR(closed_form_sp3(1.0, 3.0, 2 * std::numbers::pi / std::sqrt(10.0)), 0.64, 1e-14);
  // omega' = 0 reduces to the Rabi survival.
  EXPECT_NEAR(closed_form_sp3(1.0, 0.0, 1.3), std::pow(std::cos(0.65), 2), 1e-14);
}

TEST(models, larger_omega_prime_freezes_level_one) {
  // For omega' >= omega the minimum of p1, ((w'^2 - w^2) / (w'^2 + w^2))^2,
  // rises with omega'.
  double previous = -1.0;
  for (double wp : {1.0, 3.0, 9.0, 27.0}) {
    double lowest = 1.0;
    for (int i = 0; i <= 20000; ++i) lowest = std::min(lowest, closed_form_sp3(1.0, wp, 0.002 * i));
    EXPECT_NEAR(lowest, std::pow((wp * wp - 1.0) / (wp * wp + 1.0), 2), 1e-4);
    EXPECT_GT(lowest, previous);
    previous = lowest;
  }
  EXPECT_GT(previous, 0.99);
}

TEST(models, dissipative_small_gamma_expansion) {
  // Agreement improves as Gamma shrinks relative to omega'.
  for (double wp : {3.0, 9.0}) {
    const Operator h = three_level_dissipative(params(1.0, wp, 0.1));
    double worst = 0.0;
    for (int i = 0; i <= 200; ++i) {
      const double t = 0.2 * i;
      worst = std::max(worst, std::abs(p1(h, t) - closed_form_sp3s(1.0, wp, 0.1, t)));
    }
    EXPECT_LT(worst, 0.05) << "omega' = " << wp;
  }
  EXPECT_DOUBLE_EQ(closed_form_sp3s(1.0, 3.0, 0.0, 2.2), closed_form_sp3(1.0, 3.0, 2.2));
}

TEST(models, two_level_decay_matches_propagation) {
  for (double gamma : {0.5, 5.0}) {
    ModelParams p = params(1.0);
    p.gamma_small = gamma;
    const Operator h = two_level_effective(p);
    for (int i = 0; i <= 100; ++i) {
      const double t = 0.3 * i;
      EXPECT_NEAR(p1(h, t), closed_form_two_level_decay(1.0, gamma, t), 1e-10) << "gamma = " << gamma;
    }
  }
}

TEST(models, two_level_strong_absorption_decays_at_omega_squared_over_gamma) {
  EXPECT_NEAR(closed_form_two_level_decay(1.0, 50.0, 100.0) / std::exp(-2.0), 1.0, 0.05);
  ModelParams p = params(1.0);
  p.gamma_small = 50.0;
  EXPECT_NEAR(p1(two_level_effective(p), 100.0) / std::exp(-2.0), 1.0, 0.05);
}

TEST(models, two_level_exceptional_point) {
  EXPECT_THROW(closed_form_two_level_decay(1.0, 2.0, 1.0), ExceptionalPointError);
  EXPECT_THROW(closed_form_two_level_decay(1.0, 2.0 + 1e-9, 1.0), ExceptionalPointError);
  EXPECT_NO_THROW(closed_form_two_level_decay(1.0, 2.001, 1.0));
  EXPECT_THROW(closed_form_two_level_decay(1.0, 0.0, 1.0), PreconditionError);
}

TEST(models, four_level_qubit_protection) {
  ModelParams p;
  p.omega_big = 1.0;
  p.omega = 10.0;
  const double pi = std::numbers::pi;
  auto block_distance = [&](double wp) {
    p.omega_prime = wp;
    const Operator h = four_level(p);
    double worst = 0.0;
    for (int i = 0; i <= 100; ++i) {
      const double t = 2 * pi * i / 100;
      const Matrix u = propagator(h, t).matrix();
      Matrix target(2, 2);
      target << std::cos(t), cplx(0.0, -std::sin(t)), cplx(0.0, -std::sin(t)), std::cos(t);
      worst = std::max(worst, operator_distance(Matrix(u.topLeftCorner(2, 2)), target));
    }
    return worst;
  };
  const double protected_dist = block_distance(200.0);
  EXPECT_LT(protected_dist, 0.05);
  EXPECT_LE(protected_dist, block_distance(50.0) / 5.0);
  // Without the control field the strong omega coupling scrambles the qubit.
  EXPECT_GT(block_distance(0.0), 0.5);
}
