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

// Config -> operators. Internal to the runner.

#pragma once

#include <optional>
#include <vector>

#include "zeno/linalg.hpp"
#include "zeno/models.hpp"
#include "zeno/runner.hpp"

namespace zeno::runner {

struct Setup {
  models::ModelInfo info;
  Operator h;
  std::optional<models::SplitHamiltonian> split;
  Vector psi0;
  std::vector<double> grid;
};

Setup make_setup(const ExperimentConfig& c);

std::vector<std::vector<Vector>> resolve_spans(const FamilySpec& f, const Setup& s);

// The single span, or the projector onto the initial state when none given.
Operator selective_projector(const FamilySpec& f, const Setup& s);

// Explicit spans, else the control operator's eigenprojections.
ProjectorFamily measurement_family(const FamilySpec& f, const Setup& s);

// exp(-i theta H_c) (theta defaults to 1) or sum_k exp(i phase_k) P_k.
Operator kick_operator(const KickConfig& k, const Setup& s);

}  // namespace zeno::runner
