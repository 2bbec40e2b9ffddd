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

#include "zeno/linalg.hpp"

namespace zeno {

namespace {

constexpr double kHermitianTol = 1e-12;
constexpr double kUnitaryTol = 1e-10;
constexpr double kProjectorTol = 1e-10;
constexpr double kStateNormTol = 1e-12;
constexpr double kStatePsdTol = 1e-10;

bool all_finite(const Matrix& m) {
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      if (!std::isfinite(m(r, c).real()) || !std::isfinite(m(r, c).imag())) return false;
    }
  }
  return true;
}

double max_abs_entry(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

}  // namespace

const char* to_string(OperatorKind kind) {
  switch (kind) {
    case OperatorKind::kGeneral:
      return "general";
    case OperatorKind::kHermitian:
      return "hermitian";
    case OperatorKind::kUnitary:
      return "unitary";
  }
  return "general";
}

double spectral_norm(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(a);
  return svd.singularValues()(0);
}

bool is_hermitian_matrix(const Matrix& a) {
  if (a.rows() != a.cols()) return false;
  const double scale = std::max(1.0, spectral_norm(a));
  return max_abs_entry(a - a.adjoint()) <= kHermitianTol * scale;
}

bool is_unitary_matrix(const Matrix& a) {
  if (a.rows() != a.cols()) return false;
  return spectral_norm(a.adjoint() * a - Matrix::Identity(a.rows(), a.cols())) <= kUnitaryTol;
}

Operator::Operator(Matrix m, OperatorKind kind) : m_(std::move(m)), kind_(kind) {
  if (m_.rows() == 0 || m_.rows() != m_.cols()) {
    std::ostringstream os;
    os << "Operator: matrix must be square and non-empty, got " << m_.rows() << "x" << m_.cols();
    throw StructuralError(os.str());
  }
  if (!all_finite(m_)) throw StructuralError("Operator: non-finite entries");
  switch (kind_) {
    case OperatorKind::kHermitian:
      if (!is_hermitian_matrix(m_)) throw StructuralError("Operator: matrix is not Hermitian");
      m_ = (0.5 * (m_ + m_.adjoint())).eval();
      break;
    case OperatorKind::kUnitary:
      if (!is_unitary_matrix(m_)) throw StructuralError("Operator: matrix is not unitary");
      break;
    case OperatorKind::kGeneral:
      break;
  }
}

Operator Operator::identity(Eigen::Index dim) {
  // The identity is both Hermitian and unitary; unitary is the more useful flag
  // for kicks, and spectral_projections accepts either.
  return Operator(Matrix::Identity(dim, dim), OperatorKind::kUnitary);
}

Operator Operator::zero(Eigen::Index dim) {
  return Operator(Matrix::Zero(dim, dim), OperatorKind::kHermitian);
}

Operator Operator::adjoint() const { return Operator(m_.adjoint(), kind_); }

// ---------------------------------------------------------------------------
// QuantumState

QuantumState QuantumState::pure(Vector amplitudes) {
  if (amplitudes.size() == 0) throw StructuralError("QuantumState: empty amplitude vector");
  if (!all_finite(amplitudes)) throw StructuralError("QuantumState: non-finite amplitudes");
  const double n = amplitudes.norm();
  if (std::abs(n - 1.0) > kStateNormTol) {
    std::ostringstream os;
    os << "QuantumState: pure state norm " << n << " differs from 1";
    throw PreconditionError(os.str());
  }
  return QuantumState(Form::kPure, std::move(amplitudes), Matrix(), true);
}

QuantumState QuantumState::density(Matrix rho) {
  if (rho.rows() == 0 || rho.rows() != rho.cols()) {
    throw StructuralError("QuantumState: density matrix must be square and non-empty");
  }
  if (!all_finite(rho)) throw StructuralError("QuantumState: non-finite density matrix");
  if (max_abs_entry(rho - rho.adjoint()) > kHermitianTol) {
    throw PreconditionError("QuantumState: density matrix is not Hermitian");
  }
  const cplx tr = rho.trace();
  if (std::abs(tr - 1.0) > kStateNormTol) {
    std::ostringstream os;
    os << "QuantumState: density matrix trace " << tr.real() << " differs from 1";
    throw PreconditionError(os.str());
  }
  Matrix herm = 0.5 * (rho + rho.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(herm, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -kStatePsdTol) {
    throw PreconditionError("QuantumState: density matrix has a negative eigenvalue");
  }
  return QuantumState(Form::kDensity, Vector(), std::move(herm), true);
}

QuantumState QuantumState::basis(Eigen::Index dim, Eigen::Index index) {
  if (index < 0 || index >= dim) throw StructuralError("QuantumState: basis index out of range");
  Vector v = Vector::Zero(dim);
  v(index) = 1.0;
  return pure(std::move(v));
}

QuantumState QuantumState::unnormalized_pure(Vector amplitudes) {
  if (!all_finite(amplitudes)) throw NumericalError("QuantumState: non-finite amplitudes");
  const bool unit = std::abs(amplitudes.norm() - 1.0) <= kStateNormTol;
  return QuantumState(Form::kPure, std::move(amplitudes), Matrix(), unit);
}

QuantumState QuantumState::unnormalized_density(Matrix rho) {
  if (!all_finite(rho)) throw NumericalError("QuantumState: non-finite density matrix");
  const bool unit = std::abs(rho.trace() - 1.0) <= kStateNormTol;
  return QuantumState(Form::kDensity, Vector(), std::move(rho), unit);
}

Eigen::Index QuantumState::dim() const { return is_pure() ? psi_.size() : rho_.rows(); }

const Vector& QuantumState::amplitudes() const {
  if (!is_pure()) throw StructuralError("QuantumState: state is a density matrix, not a pure vector");
  return psi_;
}

const Matrix& QuantumState::density_matrix() const {
  if (is_pure()) throw StructuralError("QuantumState: state is pure; use as_density()");
  return rho_;
}

Matrix QuantumState::as_density() const {
  if (is_pure()) return psi_ * psi_.adjoint();
  return rho_;
}

double QuantumState::norm_squared() const {
  return is_pure() ? psi_.squaredNorm() : rho_.trace().real();
}

// ---------------------------------------------------------------------------
// ProjectorFamily

ProjectorFamily::ProjectorFamily(std::vector<ProjectorMember> members, Warnings warnings)
    : members_(std::move(members)), warnings_(std::move(warnings)) {
  if (members_.empty()) throw StructuralError("ProjectorFamily: no members");
  const Eigen::Index d = members_.front().projector.dim();
  Matrix sum = Matrix::Zero(d, d);
  for (std::size_t i = 0; i < members_.size(); ++i) {
    const auto& m = members_[i];
    const Matrix& p = m.projector.matrix();
    if (p.rows() != d) throw StructuralError("ProjectorFamily: members have different dimensions");
    if (!m.projector.is_hermitian()) {
      throw StructuralError("ProjectorFamily: member projector not flagged Hermitian");
    }
    if (spectral_norm(p * p - p) > kProjectorTol) {
      throw StructuralError("ProjectorFamily: member " + std::to_string(i) + " is not idempotent");
    }
    const auto rank = static_cast<Eigen::Index>(std::llround(p.trace().real()));
    if (rank != m.rank) {
      throw StructuralError("ProjectorFamily: member " + std::to_string(i) + " has rank " +
                            std::to_string(rank) + ", labelled " + std::to_string(m.rank));
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (spectral_norm(p * members_[j].projector.matrix()) > kProjectorTol) {
        throw StructuralError("ProjectorFamily: members " + std::to_string(j) + " and " +
                              std::to_string(i) + " are not orthogonal");
      }
      if (members_[j].eigenvalue == m.eigenvalue) {
        throw StructuralError("ProjectorFamily: duplicate eigenvalue label");
      }
    }
    sum += p;
  }
  if (spectral_norm(sum - Matrix::Identity(d, d)) > kProjectorTol) {
    throw StructuralError("ProjectorFamily: projectors do not resolve the identity");
  }
}

ProjectorFamily ProjectorFamily::trivial(Eigen::Index dim) {
  return ProjectorFamily({ProjectorMember{Operator::hermitian(Matrix::Identity(dim, dim)), 1.0, dim}});
}

ProjectorFamily ProjectorFamily::from_spans(const std::vector<std::vector<Vector>>& spans) {
  std::vector<ProjectorMember> members;
  members.reserve(spans.size());
  for (std::size_t i = 0; i < spans.size(); ++i) {
    Operator p = projector_onto(spans[i]);
    const auto rank = static_cast<Eigen::Index>(std::llround(p.matrix().trace().real()));
    members.push_back({std::move(p), static_cast<double>(i), rank});
  }
  return ProjectorFamily(std::move(members));
}

Eigen::Index ProjectorFamily::dim() const {
  return members_.empty() ? 0 : members_.front().projector.dim();
}

Matrix ProjectorFamily::dephase(const Matrix& rho) const {
  if (rho.rows() != dim() || rho.cols() != dim()) {
    throw StructuralError("ProjectorFamily::dephase: dimension mismatch");
  }
  Matrix out = Matrix::Zero(rho.rows(), rho.cols());
  for (const auto& m : members_) {
    const Matrix& p = m.projector.matrix();
    out.noalias() += p * rho * p;
  }
  return out;
}

Operator projector_onto(const std::vector<Vector>& vectors) {
  if (vectors.empty()) throw StructuralError("projector_onto: empty span");
  const Eigen::Index d = vectors.front().size();
  Matrix cols(d, static_cast<Eigen::Index>(vectors.size()));
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (vectors[i].size() != d) throw StructuralError("projector_onto: vectors of different length");
    cols.col(static_cast<Eigen::Index>(i)) = vectors[i];
  }
  Eigen::JacobiSVD<Matrix> svd(cols, Eigen::ComputeThinU);
  const RealVector& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) throw StructuralError("projector_onto: span is the zero vector");
  Eigen::Index rank = 0;
  while (rank < sv.size() && sv(rank) > 1e-12 * sv(0)) ++rank;
  const Matrix basis = svd.matrixU().leftCols(rank);
  return Operator::hermitian(basis * basis.adjoint());
}

double operator_distance(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw StructuralError("operator_distance: dimension mismatch");
  }
  return spectral_norm(a - b);
}

double operator_distance(const Operator& a, const Operator& b) {
  return operator_distance(a.matrix(), b.matrix());
}

}  // namespace zeno
