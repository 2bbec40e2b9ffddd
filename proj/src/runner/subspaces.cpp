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

#include "json_util.hpp"
#include "setup.hpp"
#include "zeno/engine.hpp"

namespace zeno::runner {

std::string subspaces_report(const ExperimentConfig& config) {
  try {
    const Setup s = make_setup(config);
    const auto& proc = config.procedure;
    std::optional<ZenoSplit> split;
    switch (proc.kind) {
      case Procedure::kPulsedSelective: {
        // The measured subspace and its complement; only Ran P evolves.
        const Operator p = selective_projector(proc.projector, s);
        const Eigen::Index dim = s.info.dim;
        const auto rank = static_cast<Eigen::Index>(std::llround(p.matrix().trace().real()));
        std::vector<ProjectorMember> members{{p, 1.0, rank}};
        if (rank < dim) {
          members.push_back({Operator::hermitian(Matrix::Identity(dim, dim) - p.matrix()), 0.0, dim - rank});
        }
        ProjectorFamily fam(std::move(members));
        const Matrix php = p.matrix() * s.h.matrix() * p.matrix();
        Operator hz = s.h.is_hermitian() ? Operator::hermitian(php) : Operator(php);
        std::vector<Eigen::Index> dims;
        for (const auto& m : fam.members()) dims.push_back(m.rank);
        split = ZenoSplit{std::move(fam), std::move(hz), std::move(dims)};
        break;
      }
      case Procedure::kPulsedNonselective: {
        ProjectorFamily fam = measurement_family(proc.projector, s);
        Operator hz = zeno_hamiltonian(s.h, fam);
        std::vector<Eigen::Index> dims;
        for (const auto& m : fam.members()) dims.push_back(m.rank);
        split = ZenoSplit{std::move(fam), std::move(hz), std::move(dims)};
        break;
      }
      case Procedure::kKicked:
        split = kicked_limit(s.h, kick_operator(proc.kick, s));
        break;
      case Procedure::kContinuous:
        split = continuous_limit(s.split->system, s.split->control);
        break;
      default:
        throw UsageError(std::string("subspaces: procedure '") + to_string(proc.kind) + "' defines no Zeno split");
    }

    json doc;
    doc["model"] = config.model;
    doc["procedure"] = to_string(proc.kind);
    json subspaces = json::array();
    for (std::size_t k = 0; k < split->family.size(); ++k) {
      const auto& m = split->family[k];
      subspaces.push_back(json{{"dim", m.rank}, {"eigenvalue", m.eigenvalue}, {"projector", matrix_json(m.projector.matrix())}});
    }
    doc["subspace_dims"] = split->subspace_dims;
    doc["subspaces"] = subspaces;
    doc["zeno_hamiltonian"] = matrix_json(split->zeno_hamiltonian.matrix());
    doc["warnings"] = warnings_json(split->warnings());
    return doc.dump(2) + "\n";
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

}  // namespace zeno::runner
