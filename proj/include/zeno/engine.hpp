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

// The three Zeno procedures and their limits.
//
//   pulsed     repeated projective measurements, selective (one projector P,
//              surviving branch kept) or nonselective (a projector family,
//              rho -> sum_n P_n rho P_n after each step);
//   kicked     N instantaneous unitary kicks interleaved with free evolution;
//   continuous a strong term K * H_c added to the Hamiltonian.
//
// Every limit (N -> inf, K -> inf) is evaluated in closed form through the
// Zeno Hamiltonian H_Z = sum_n P_n H P_n, never by extrapolation. Finite-N and
// finite-K evolutions are compared against it.

#pragma once

#include <limits>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "zeno/linalg.hpp"
#include "zeno/timeseries.hpp"

namespace zeno {

// N measurements over total time t. `target` is a single projector for the
// selective procedure or a ProjectorFamily for the nonselective one.
struct PulsedSpec {
  std::variant<Operator, ProjectorFamily> target;
  int n = 1;
  double t = 0.0;
};

struct KickSpec {
  Operator kick;  // must be flagged unitary
  int n = 1;
  double t = 0.0;
};

struct CouplingSpec {
  Operator coupling_hamiltonian;  // H_c, must be flagged hermitian
  double k = 1.0;
};

// Projector family, Zeno Hamiltonian and subspace dimensions of one limit.
struct ZenoSplit {
  ProjectorFamily family;
  Operator zeno_hamiltonian;
  std::vector<Eigen::Index> subspace_dims;

  const Warnings& warnings() const { return family.warnings(); }
};

struct SelectiveOutcome {
  QuantumState state;  // normalized post-measurement state
  double survival = 0.0;
};

// --- survival diagnostics --------------------------------------------------

// <psi0| exp(-iHt) |psi0>.
cplx survival_amplitude(const Operator& h, const QuantumState& psi0, double t);

// |<psi0| exp(-iHt) |psi0>|^2.
double survival_probability(const Operator& h, const QuantumState& psi0, double t);

// Tr[U(t) rho0 U^dagger(t) P]. Requires rho0 = P rho0 P (PreconditionError).
double survival_probability_density(const Operator& h, const QuantumState& rho0, const Operator& p,
                                    double t);

// (<H^2> - <H>^2)^(-1/2); +infinity for a stationary state.
double zeno_time(const Operator& h, const QuantumState& psi0);

// -(1/tau) log p(tau). Throws SingularityError when p(tau) is numerically 0.
double effective_decay_rate(const Operator& h, const QuantumState& psi0, double tau);

// Least-squares slope of -log p(t); the decay rate of an exponential tail.
double fit_decay_rate(std::span<const double> t, std::span<const double> p);

// --- pulsed measurements ---------------------------------------------------

// V_N(t) = [P U(t/N) P]^N.
Operator pulsed_selective_operator(const Operator& h, const Operator& p, int n, double t);

// Survival Tr[V_N rho0 V_N^dagger] and the renormalized state.
SelectiveOutcome pulsed_selective_evolve(const Operator& h, const PulsedSpec& spec,
                                         const QuantumState& rho0);

// P exp(-i P H P t), the N -> inf limit of V_N(t).
Operator pulsed_limit_evolution(const Operator& h, const Operator& p, double t);

// N steps of rho -> P-hat(U(t/N) rho U^dagger(t/N)).
QuantumState nonselective_evolve(const Operator& h, const PulsedSpec& spec, const QuantumState& rho0);

// sum_n P_n H P_n.
Operator zeno_hamiltonian(const Operator& h, const ProjectorFamily& family);

// exp(-i H_Z t) P-hat(rho0) exp(+i H_Z t).
QuantumState zeno_limit_nonselective(const Operator& h, const ProjectorFamily& family,
                                     const QuantumState& rho0, double t);

// Largest operator norm among the N-step Kraus branches
//   (P_n U)^(N-1-k) P_n U (P_m U)^k P_m,   n != m, 0 <= k < N,
// i.e. the branches that change subspace once. N = 1 gives max ||P_n U(t) P_m||.
double offdiagonal_leakage(const Operator& h, const ProjectorFamily& family, int n, double t);

// --- unitary kicks ---------------------------------------------------------

// [U_kick U(t/N)]^N.
Operator kicked_evolve(const Operator& h, const KickSpec& spec);

// Zeno split over the spectral projections of the kick.
ZenoSplit kicked_limit(const Operator& h, const Operator& kick,
                       std::optional<double> cluster_tol = std::nullopt);

// --- continuous coupling ---------------------------------------------------

// exp(-i (H + K H_c) t).
Operator continuous_evolve(const Operator& h, const CouplingSpec& spec, double t);

// Zeno split over the eigenprojections of H_c.
ZenoSplit continuous_limit(const Operator& h, const Operator& hc,
                           std::optional<double> cluster_tol = std::nullopt);

// --- convergence ladders ---------------------------------------------------

struct PulsedLadder {
  Operator projector;
  std::vector<int> n;
};

struct KickedLadder {
  Operator kick;
  std::vector<int> n;
};

struct ContinuousLadder {
  Operator coupling_hamiltonian;
  std::vector<double> k;
};

using ConvergenceLadder = std::variant<PulsedLadder, KickedLadder, ContinuousLadder>;

// For each rung, max over `t_grid` of the distance between the finite
// evolution (with the fast phase stripped for kicks and coupling) and the
// limit evolution. Axis "N" or "K", one column "distance".
TimeSeries convergence_profile(const Operator& h, const ConvergenceLadder& ladder,
                               std::span<const double> t_grid);

}  // namespace zeno
