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

ZenoSplit make_split(const Operator& h, ProjectorFamily family) {
  Operator hz = zeno_hamiltonian(h, family);
  std::vector<Eigen::Index> dims;
  dims.reserve(family.size());
  for (const auto& m : family.members()) dims.push_back(m.rank);
  return ZenoSplit{std::move(family), std::move(hz), std::move(dims)};
}

template <typename T>
void require_increasing(const char* what, const std::vector<T>& ladder) {
  if (ladder.empty()) throw PreconditionError(std::string("convergence_profile: empty ") + what + " ladder");
  for (std::size_t i = 0; i < ladder.size(); ++i) {
    if (!(ladder[i] > T{0})) {
      throw PreconditionError(std::string("convergence_profile: ") + what + " must be positive");
    }
    if (i > 0 && !(ladder[i] > ladder[i - 1])) {
      throw PreconditionError(std::string("convergence_profile: ") + what +
                              " ladder is not strictly increasing");
    }
  }
}

}  // namespace

Operator zeno_hamiltonian(const Operator& h, const ProjectorFamily& family) {
  detail::require_same_dim("zeno_hamiltonian", h.dim(), family.dim());
  Matrix hz = Matrix::Zero(h.dim(), h.dim());
  for (const auto& m : family.members()) {
    const Matrix& p = m.projector.matrix();
    hz.noalias() += p * h.matrix() * p;
  }
  return h.is_hermitian() ? Operator::hermitian(std::move(hz)) : Operator(std::move(hz));
}

QuantumState zeno_limit_nonselective(const Operator& h, const ProjectorFamily& family,
                                     const QuantumState& rho0, double t) {
  constexpr const char* kOp = "zeno_limit_nonselective";
  detail::require_same_dim(kOp, h.dim(), family.dim());
  detail::require_same_dim(kOp, h.dim(), rho0.dim());
  const Matrix u = propagator(zeno_hamiltonian(h, family), t).matrix();
  const Matrix rho = rho0.as_density();
  // sum_n V_n rho0 V_n^dagger with V_n = P_n exp(-i H_Z t) P_n; block diagonal
  // by construction.
  Matrix out = Matrix::Zero(rho.rows(), rho.cols());
  for (const auto& m : family.members()) {
    const Matrix& p = m.projector.matrix();
    const Matrix v = p * u * p;
    out.noalias() += v * rho * v.adjoint();
  }
  out = (0.5 * (out + out.adjoint())).eval();
  if (h.is_hermitian() && std::abs(out.trace().real() - 1.0) <= 1e-12 && rho0.normalized()) {
    return QuantumState::density(std::move(out));
  }
  return QuantumState::unnormalized_density(std::move(out));
}

Operator kicked_evolve(const Operator& h, const KickSpec& spec) {
  constexpr const char* kOp = "kicked_evolve";
  if (!spec.kick.is_unitary()) throw StructuralError("kicked_evolve: kick must be flagged unitary");
  if (spec.n < 1) throw PreconditionError("kicked_evolve: N must be >= 1");
  if (!(spec.t >= 0.0) || !std::isfinite(spec.t)) {
    throw PreconditionError("kicked_evolve: total time must be finite and >= 0");
  }
  detail::require_same_dim(kOp, h.dim(), spec.kick.dim());
  const Matrix step = spec.kick.matrix() * propagator(h, spec.t / spec.n).matrix();
  return detail::wrap_evolution(kOp, detail::matrix_power(step, spec.n), h.is_hermitian());
}

ZenoSplit kicked_limit(const Operator& h, const Operator& kick, std::optional<double> cluster_tol) {
  if (!kick.is_unitary()) throw StructuralError("kicked_limit: kick must be flagged unitary");
  detail::require_same_dim("kicked_limit", h.dim(), kick.dim());
  return make_split(h, spectral_projections(kick, cluster_tol));
}

Operator continuous_evolve(const Operator& h, const CouplingSpec& spec, double t) {
  const Operator& hc = spec.coupling_hamiltonian;
  if (!hc.is_hermitian()) {
    throw StructuralError("continuous_evolve: coupling Hamiltonian must be flagged hermitian");
  }
  detail::require_same_dim("continuous_evolve", h.dim(), hc.dim());
  Matrix total = h.matrix() + spec.k * hc.matrix();
  const Operator hk = h.is_hermitian() ? Operator::hermitian(std::move(total)) : Operator(std::move(total));
  return propagator(hk, t);
}

ZenoSplit continuous_limit(const Operator& h, const Operator& hc, std::optional<double> cluster_tol) {
  if (!hc.is_hermitian()) {
    throw StructuralError("continuous_limit: coupling Hamiltonian must be flagged hermitian");
  }
  detail::require_same_dim("continuous_limit", h.dim(), hc.dim());
  ZenoSplit split = make_split(h, spectral_projections(hc, cluster_tol));
  const Matrix& hz = split.zeno_hamiltonian.matrix();
  const double comm = spectral_norm(hz * hc.matrix() - hc.matrix() * hz);
  const double scale = std::max(1.0, spectral_norm(h.matrix()) * spectral_norm(hc.matrix()));
  if (comm > 1e-10 * scale) {
    std::ostringstream os;
    os << "continuous_limit: Zeno Hamiltonian fails to commute with H_c (" << comm << ")";
    throw NumericalError(os.str());
  }
  return split;
}

TimeSeries convergence_profile(const Operator& h, const ConvergenceLadder& ladder,
                               std::span<const double> t_grid) {
  if (t_grid.empty()) throw PreconditionError("convergence_profile: empty time grid");

  std::vector<double> axis;
  std::vector<double> distance;
  std::string axis_name;

  if (const auto* pulsed = std::get_if<PulsedLadder>(&ladder)) {
    require_increasing("N", pulsed->n);
    axis_name = "N";
    for (int n : pulsed->n) {
      double worst = 0.0;
      for (double t : t_grid) {
        worst = std::max(worst, operator_distance(pulsed_selective_operator(h, pulsed->projector, n, t),
                                                  pulsed_limit_evolution(h, pulsed->projector, t)));
      }
      axis.push_back(n);
      distance.push_back(worst);
    }
  } else if (const auto* kicked = std::get_if<KickedLadder>(&ladder)) {
    require_increasing("N", kicked->n);
    axis_name = "N";
    const ZenoSplit split = kicked_limit(h, kicked->kick);
    const Matrix kick_dag = kicked->kick.matrix().adjoint();
    for (int n : kicked->n) {
      const Matrix strip = detail::matrix_power(kick_dag, n);
      double worst = 0.0;
      for (double t : t_grid) {
        const Matrix un = kicked_evolve(h, KickSpec{kicked->kick, n, t}).matrix();
        worst = std::max(worst, operator_distance(strip * un,
                                                  propagator(split.zeno_hamiltonian, t).matrix()));
      }
      axis.push_back(n);
      distance.push_back(worst);
    }
  } else {
    const auto& cont = std::get<ContinuousLadder>(ladder);
    require_increasing("K", cont.k);
    axis_name = "K";
    const ZenoSplit split = continuous_limit(h, cont.coupling_hamiltonian);
    for (double k : cont.k) {
      double worst = 0.0;
      for (double t : t_grid) {
        const Matrix uk = continuous_evolve(h, CouplingSpec{cont.coupling_hamiltonian, k}, t).matrix();
        const Matrix strip = propagator(cont.coupling_hamiltonian, -k * t).matrix();
        worst = std::max(worst, operator_distance(strip * uk,
                                                  propagator(split.zeno_hamiltonian, t).matrix()));
      }
      axis.push_back(k);
      distance.push_back(worst);
    }
  }

  TimeSeries out(axis_name, std::move(axis));
  out.add_column("distance", std::move(distance));
  return out;
}

}  // namespace zeno
