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

#include "setup.hpp"

#include "zeno/engine.hpp"

namespace zeno::runner {

namespace {

Vector to_vector(const std::vector<cplx>& amps) {
  Vector v(static_cast<Eigen::Index>(amps.size()));
  for (std::size_t i = 0; i < amps.size(); ++i) v(static_cast<Eigen::Index>(i)) = amps[i];
  return v;
}

Vector resolve_entry(const SpanEntry& e, const models::ModelInfo& info) {
  if (const int* label = std::get_if<int>(&e)) return Vector::Unit(info.dim, *label - info.first_label);
  return to_vector(std::get<std::vector<cplx>>(e));
}

}  // namespace

Setup make_setup(const ExperimentConfig& c) {
  const models::ModelInfo& info = models::model_info(c.model);
  Vector psi0;
  if (const int* label = std::get_if<int>(&c.initial_state)) {
    psi0 = Vector::Unit(info.dim, *label - info.first_label);
  } else {
    psi0 = to_vector(std::get<std::vector<cplx>>(c.initial_state));
    psi0.normalize();
  }
  return Setup{info, models::build(c.model, c.params), models::build_split(c.model, c.params), std::move(psi0),
               linspace(0.0, c.t_max, static_cast<std::size_t>(c.samples))};
}

std::vector<std::vector<Vector>> resolve_spans(const FamilySpec& f, const Setup& s) {
  std::vector<std::vector<Vector>> out;
  for (const auto& span : f.spans) {
    std::vector<Vector> vs;
    for (const auto& e : span) vs.push_back(resolve_entry(e, s.info));
    out.push_back(std::move(vs));
  }
  return out;
}

Operator selective_projector(const FamilySpec& f, const Setup& s) {
  if (f.spans.empty()) return projector_onto({s.psi0});
  return projector_onto(resolve_spans(f, s).front());
}

ProjectorFamily measurement_family(const FamilySpec& f, const Setup& s) {
  if (!f.spans.empty()) return ProjectorFamily::from_spans(resolve_spans(f, s));
  if (!s.split) throw UsageError("projector family: model has no control operator");
  return spectral_projections(s.split->control);
}

Operator kick_operator(const KickConfig& k, const Setup& s) {
  if (!k.family.spans.empty()) {
    const ProjectorFamily fam = ProjectorFamily::from_spans(resolve_spans(k.family, s));
    Matrix u = Matrix::Zero(s.info.dim, s.info.dim);
    for (std::size_t i = 0; i < fam.size(); ++i) {
      u += std::exp(cplx(0.0, k.phases[i])) * fam[i].projector.matrix();
    }
    return Operator::unitary(std::move(u));
  }
  if (!s.split) throw UsageError("kick: model has no control operator");
  return propagator(s.split->control, k.theta.value_or(1.0));
}

}  // namespace zeno::runner
