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

// Dense complex linear algebra used by every other part of the library:
// operators with structural flags, quantum states, orthogonal projector
// families, Hermitian eigensystems, matrix exponentials and spectral norms.
//
// Everything here is a pure function of its inputs. Dimensions are small
// (2..64), so storage is dense and no attempt is made at sparsity.

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <optional>
#include <vector>

#include "zeno/errors.hpp"

namespace zeno {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr cplx kI{0.0, 1.0};

enum class OperatorKind { kGeneral, kHermitian, kUnitary };

const char* to_string(OperatorKind kind);

// Dense square complex matrix with a verified structural flag.
//
// A kHermitian operator is stored exactly Hermitian ((A + A^dagger)/2 after
// verification). A kUnitary operator satisfies ||A^dagger A - I|| <= 1e-10.
class Operator {
 public:
  Operator() = default;

  // Throws StructuralError if the matrix is not square, empty, has non-finite
  // entries, or fails the invariant of `kind`.
  explicit Operator(Matrix m, OperatorKind kind = OperatorKind::kGeneral);

  static Operator hermitian(Matrix m) { return Operator(std::move(m), OperatorKind::kHermitian); }
  static Operator unitary(Matrix m) { return Operator(std::move(m), OperatorKind::kUnitary); }
  static Operator identity(Eigen::Index dim);
  static Operator zero(Eigen::Index dim);

  Eigen::Index dim() const { return m_.rows(); }
  const Matrix& matrix() const { return m_; }
  OperatorKind kind() const { return kind_; }
  bool is_hermitian() const { return kind_ == OperatorKind::kHermitian; }
  bool is_unitary() const { return kind_ == OperatorKind::kUnitary; }

  cplx operator()(Eigen::Index r, Eigen::Index c) const { return m_(r, c); }

  Operator adjoint() const;

 private:
  Matrix m_;
  OperatorKind kind_ = OperatorKind::kGeneral;
};

// Structural checks, exposed for callers that want to decide a flag.
bool is_hermitian_matrix(const Matrix& a);
bool is_unitary_matrix(const Matrix& a);

// Pure state vector or density matrix.
class QuantumState {
 public:
  enum class Form { kPure, kDensity };

  // Throws PreconditionError unless |norm - 1| <= 1e-12.
  static QuantumState pure(Vector amplitudes);
  // Throws PreconditionError unless Hermitian, unit trace and PSD (>= -1e-10).
  static QuantumState density(Matrix rho);
  // Basis vector |index> as a pure state.
  static QuantumState basis(Eigen::Index dim, Eigen::Index index);

  // Evolved states that may have lost norm under non-Hermitian dynamics.
  static QuantumState unnormalized_pure(Vector amplitudes);
  static QuantumState unnormalized_density(Matrix rho);

  Form form() const { return form_; }
  bool is_pure() const { return form_ == Form::kPure; }
  bool normalized() const { return normalized_; }
  Eigen::Index dim() const;

  // Throws StructuralError when the form does not match.
  const Vector& amplitudes() const;
  const Matrix& density_matrix() const;

  // |psi><psi| for pure states, the stored matrix otherwise.
  Matrix as_density() const;
  // <psi|psi> or Tr rho.
  double norm_squared() const;

 private:
  QuantumState(Form form, Vector psi, Matrix rho, bool normalized)
      : form_(form), psi_(std::move(psi)), rho_(std::move(rho)), normalized_(normalized) {}

  Form form_ = Form::kPure;
  Vector psi_;
  Matrix rho_;
  bool normalized_ = true;
};

struct ProjectorMember {
  Operator projector;
  double eigenvalue = 0.0;
  Eigen::Index rank = 0;
};

// Orthogonal resolution of the identity {P_n} with distinct labels eta_n.
class ProjectorFamily {
 public:
  ProjectorFamily() = default;

  // Validates idempotence, Hermiticity, pairwise orthogonality, completeness
  // and distinct labels. Throws StructuralError on any violation.
  explicit ProjectorFamily(std::vector<ProjectorMember> members, Warnings warnings = {});

  // The trivial family {I}.
  static ProjectorFamily trivial(Eigen::Index dim);

  // Builds one projector per span (each span a list of column vectors,
  // orthonormalized internally); labels are 0, 1, 2, ... in the given order.
  static ProjectorFamily from_spans(const std::vector<std::vector<Vector>>& spans);

  Eigen::Index dim() const;
  std::size_t size() const { return members_.size(); }
  const std::vector<ProjectorMember>& members() const { return members_; }
  const ProjectorMember& operator[](std::size_t i) const { return members_[i]; }
  const Warnings& warnings() const { return warnings_; }

  // P-hat(rho) = sum_n P_n rho P_n.
  Matrix dephase(const Matrix& rho) const;

 private:
  std::vector<ProjectorMember> members_;
  Warnings warnings_;
};

// Orthogonal projector onto the span of `vectors` (need not be orthonormal).
Operator projector_onto(const std::vector<Vector>& vectors);

struct EigenSystem {
  RealVector eigenvalues;  // ascending
  Operator eigenvectors;   // unitary, columns are eigenvectors
};

// Hermitian eigendecomposition. Throws StructuralError for a non-Hermitian
// flag and NumericalError if the reconstruction error exceeds 1e-10*||A||.
EigenSystem eig_hermitian(const Operator& a);

// exp(-i H t) by scaling and squaring with the [13/13] Pade approximant.
// Hermitian H yields a kUnitary result; the Pade result is then cross-checked
// against the eigendecomposition route.
Operator propagator(const Operator& h, double t);

// exp(A) for a general square matrix, the kernel behind `propagator`.
Matrix expm(const Matrix& a);

// Spectral projections of a Hermitian or unitary operator. Eigenvalues (or
// eigenphases on (-pi, pi] for unitaries) closer than `cluster_tol` share a
// projector. Default tolerance is 1e-9 * ||A||.
ProjectorFamily spectral_projections(const Operator& a,
                                     std::optional<double> cluster_tol = std::nullopt);

// Largest singular value of A - B.
double operator_distance(const Operator& a, const Operator& b);
double operator_distance(const Matrix& a, const Matrix& b);

// Spectral norm (largest singular value).
double spectral_norm(const Matrix& a);

}  // namespace zeno
