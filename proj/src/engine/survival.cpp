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
#include <limits>
#include <sstream>

#include "detail.hpp"
#include "zeno/engine.hpp"

namespace zeno {

namespace detail {

Matrix matrix_power(const Matrix& m, long long n) {
  if (n < 0) throw PreconditionError("matrix_power: negative exponent");
  Matrix result = Matrix::Identity(m.rows(), m.cols());
  Matrix base = m;
  while (n > 0) {
    if (n & 1) result = (result * base).eval();
    n >>= 1;
    if (n > 0) base = (base * base).eval();
  }
  return result;
}

void require_same_dim(const char* op, Eigen::Index a, Eigen::Index b) {
  if (a != b) {
    std::ostringstream os;
    os << op << ": dimension mismatch (" << a << " vs " << b << ")";
    throw StructuralError(os.str());
  }
}

void require_projector(const char* op, const Operator& p) {
  if (!p.is_hermitian() || spectral_norm(p.matrix() * p.matrix() - p.matrix()) > 1e-10) {
    throw StructuralError(std::string(op) + ": operator is not an orthogonal projector");
  }
}

Operator wrap_evolution(const char* op, Matrix m, bool source_hermitian) {
  if (!source_hermitian) return Operator(std::move(m));
  try {
    return Operator::unitary(std::move(m));
  } catch (const StructuralError&) {
    throw NumericalError(std::string(op) + ": evolution lost unitarity beyond 1e-10");
  }
}

}  // namespace detail

namespace {

const Vector& pure_amplitudes(const char* op, const Operator& h, const QuantumState& psi0) {
  if (!psi0.is_pure()) throw StructuralError(std::string(op) + ": initial state must be pure");
  detail::require_same_dim(op, h.dim(), psi0.dim());
  return psi0.amplitudes();
}

}  // namespace

cplx survival_amplitude(const Operator& h, const QuantumState& psi0, double t) {
  const Vector& psi = pure_amplitudes("survival_amplitude", h, psi0);
  return psi.dot(propagator(h, t).matrix() * psi);
}

double survival_probability(const Operator& h, const QuantumState& psi0, double t) {
  return std::norm(survival_amplitude(h, psi0, t));
}

double survival_probability_density(const Operator& h, const QuantumState& rho0, const Operator& p,
                                    double t) {
  constexpr const char* kOp = "survival_probability_density";
  detail::require_same_dim(kOp, h.dim(), rho0.dim());
  detail::require_same_dim(kOp, h.dim(), p.dim());
  detail::require_projector(kOp, p);
  const Matrix rho = rho0.as_density();
  const Matrix& pm = p.matrix();
  if (spectral_norm(pm * rho * pm - rho) > 1e-10) {
    throw PreconditionError("survival_probability_density: initial state not supported in Ran P");
  }
  const Matrix u = propagator(h, t).matrix();
  return (u * rho * u.adjoint() * pm).trace().real();
}

double zeno_time(const Operator& h, const QuantumState& psi0) {
  if (!h.is_hermitian()) throw StructuralError("zeno_time: Hamiltonian must be Hermitian");
  const Vector& psi = pure_amplitudes("zeno_time", h, psi0);
  const Vector hpsi = h.matrix() * psi;
  const double mean = psi.dot(hpsi).real();
  const double mean_sq = hpsi.squaredNorm();
  const double variance = mean_sq - mean * mean;
  const double norm = spectral_norm(h.matrix());
  if (variance <= 1e-14 * norm * norm) return std::numeric_limits<double>::infinity();
  return 1.0 / std::sqrt(variance);
}

double effective_decay_rate(const Operator& h, const QuantumState& psi0, double tau) {
  if (!(tau > 0.0)) throw PreconditionError("effective_decay_rate: tau must be positive");
  const double p = survival_probability(h, psi0, tau);
  // Amplitudes at the rounding floor of a unit vector count as zero.
  constexpr double kFloor = 16.0 * std::numeric_limits<double>::epsilon();
  if (!(p > kFloor * kFloor)) {
    std::ostringstream os;
    os << "effective_decay_rate: survival probability vanishes at tau = " << tau;
    throw SingularityError(os.str());
  }
  return -std::log(p) / tau;
}

double fit_decay_rate(std::span<const double> t, std::span<const double> p) {
  if (t.size() != p.size() || t.size() < 2) {
    throw StructuralError("fit_decay_rate: need at least two (t, p) pairs of equal length");
  }
  double st = 0.0, sy = 0.0, stt = 0.0, sty = 0.0;
  const auto n = static_cast<double>(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (!(p[i] > 0.0)) throw SingularityError("fit_decay_rate: non-positive probability sample");
    const double y = -std::log(p[i]);
    st += t[i];
    sy += y;
    stt += t[i] * t[i];
    sty += t[i] * y;
  }
  const double denom = n * stt - st * st;
  if (denom == 0.0) throw PreconditionError("fit_decay_rate: degenerate time grid");
  return (n * sty - st * sy) / denom;
}

}  // namespace zeno
