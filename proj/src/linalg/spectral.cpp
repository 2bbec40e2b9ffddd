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
#include <numbers>
#include <numeric>
#include <sstream>

#include "zeno/linalg.hpp"

namespace zeno {

namespace {

constexpr double kPi = std::numbers::pi;

// Maps an angle onto the principal branch (-pi, pi].
double principal_phase(double phi) {
  phi = std::remainder(phi, 2.0 * kPi);
  if (phi <= -kPi) phi += 2.0 * kPi;
  return phi;
}

struct Cluster {
  std::vector<Eigen::Index> columns;
};

// Single-linkage clustering of sorted values. Gaps in (tol, 10 tol] are
// reported as ambiguous.
std::vector<Cluster> cluster_sorted(const std::vector<std::pair<double, Eigen::Index>>& sorted,
                                    double tol, double period, Warnings& warnings) {
  std::vector<Cluster> clusters;
  auto note_gap = [&](double gap, double lo, double hi) {
    if (gap > tol && gap <= 10.0 * tol) {
      std::ostringstream os;
      os.precision(17);
      os << "eigenvalues " << lo << " and " << hi << " separated by " << gap
         << ", within 10x the clustering tolerance " << tol;
      warnings.push_back({"spectral_projections", os.str()});
    }
  };
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (i > 0) {
      const double gap = sorted[i].first - sorted[i - 1].first;
      note_gap(gap, sorted[i - 1].first, sorted[i].first);
      if (gap > tol) clusters.emplace_back();
    } else {
      clusters.emplace_back();
    }
    clusters.back().columns.push_back(sorted[i].second);
  }
  // Eigenphases live on a circle: the first and last clusters may touch
  // across the branch cut.
  if (period > 0.0 && clusters.size() > 1) {
    const double wrap = sorted.front().first + period - sorted.back().first;
    note_gap(wrap, sorted.back().first, sorted.front().first);
    if (wrap <= tol) {
      auto& last = clusters.back().columns;
      auto& first = clusters.front().columns;
      first.insert(first.begin(), last.begin(), last.end());
      clusters.pop_back();
    }
  }
  return clusters;
}

}  // namespace

EigenSystem eig_hermitian(const Operator& a) {
  if (!a.is_hermitian()) {
    throw StructuralError(std::string("eig_hermitian: operator flagged ") + to_string(a.kind()) +
                          ", expected hermitian");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(a.matrix());
  if (solver.info() != Eigen::Success) {
    throw NumericalError("eig_hermitian: eigensolver did not converge");
  }
  const Matrix& v = solver.eigenvectors();
  const RealVector& w = solver.eigenvalues();
  const double err = spectral_norm(v * w.cast<cplx>().asDiagonal() * v.adjoint() - a.matrix());
  const double norm = std::max(std::abs(w(0)), std::abs(w(w.size() - 1)));
  if (err > 1e-10 * std::max(norm, 1e-300) && err > 1e-14) {
    std::ostringstream os;
    os << "eig_hermitian: reconstruction error " << err << " for operator norm " << norm;
    throw NumericalError(os.str());
  }
  return EigenSystem{w, Operator::unitary(v)};
}

ProjectorFamily spectral_projections(const Operator& a, std::optional<double> cluster_tol) {
  const Eigen::Index n = a.dim();
  const double norm = spectral_norm(a.matrix());
  const double tol = cluster_tol.value_or(1e-9 * norm);
  if (cluster_tol && !(*cluster_tol > 0.0)) {
    throw PreconditionError("spectral_projections: cluster_tol must be positive");
  }

  Matrix vectors;
  std::vector<std::pair<double, Eigen::Index>> values;
  double period = 0.0;
  if (a.is_hermitian()) {
    const EigenSystem es = eig_hermitian(a);
    vectors = es.eigenvectors.matrix();
    for (Eigen::Index k = 0; k < n; ++k) values.emplace_back(es.eigenvalues(k), k);
  } else if (a.is_unitary()) {
    // A normal matrix has a diagonal Schur form with a unitary Schur basis,
    // so degenerate eigenvectors come out orthonormal.
    Eigen::ComplexSchur<Matrix> schur(a.matrix());
    if (schur.info() != Eigen::Success) {
      throw NumericalError("spectral_projections: Schur decomposition did not converge");
    }
    vectors = schur.matrixU();
    const Matrix& t = schur.matrixT();
    for (Eigen::Index k = 0; k < n; ++k) values.emplace_back(principal_phase(std::arg(t(k, k))), k);
    period = 2.0 * kPi;
  } else {
    throw StructuralError("spectral_projections: operator must be flagged hermitian or unitary");
  }
  std::sort(values.begin(), values.end());

  Warnings warnings;
  const std::vector<Cluster> clusters = cluster_sorted(values, tol, period, warnings);

  std::vector<double> value_of(static_cast<std::size_t>(n));
  for (const auto& [v, k] : values) value_of[static_cast<std::size_t>(k)] = v;

  std::vector<ProjectorMember> members;
  Matrix rebuilt = Matrix::Zero(n, n);
  for (const Cluster& c : clusters) {
    Matrix p = Matrix::Zero(n, n);
    double label = 0.0;
    cplx phasor = 0.0;
    for (Eigen::Index k : c.columns) {
      p.noalias() += vectors.col(k) * vectors.col(k).adjoint();
      label += value_of[static_cast<std::size_t>(k)];
      phasor += std::exp(cplx(0.0, value_of[static_cast<std::size_t>(k)]));
    }
    label = period > 0.0 ? principal_phase(std::arg(phasor))
                         : label / static_cast<double>(c.columns.size());
    rebuilt += (period > 0.0 ? std::exp(cplx(0.0, label)) : cplx(label)) * p;
    members.push_back(
        {Operator::hermitian(std::move(p)), label, static_cast<Eigen::Index>(c.columns.size())});
  }

  const double err = spectral_norm(rebuilt - a.matrix());
  // Merging a cluster moves its members by at most the clustering tolerance.
  const double allowed = std::max(1e-9 * norm, tol) + 1e-14;
  if (err > allowed) {
    std::ostringstream os;
    os << "spectral_projections: reconstruction error " << err << " exceeds " << allowed;
    throw NumericalError(os.str());
  }
  return ProjectorFamily(std::move(members), std::move(warnings));
}

}  // namespace zeno
