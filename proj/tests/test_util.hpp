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

#pragma once

#include <random>

#include "zeno/linalg.hpp"

namespace zeno::testing {

inline Matrix sigma_x() {
  Matrix m(2, 2);
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}

inline Matrix sigma_z() {
  Matrix m(2, 2);
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}

// Complex Ginibre matrix with unit-variance entries.
inline Matrix random_matrix(std::mt19937_64& rng, Eigen::Index dim) {
  std::normal_distribution<double> g(0.0, 1.0);
  Matrix m(dim, dim);
  for (Eigen::Index c = 0; c < dim; ++c)
    for (Eigen::Index r = 0; r < dim; ++r) m(r, c) = cplx(g(rng), g(rng));
  return m;
}

inline Operator random_hermitian(std::mt19937_64& rng, Eigen::Index dim) {
  const Matrix a = random_matrix(rng, dim);
  return Operator::hermitian(0.5 * (a + a.adjoint()));
}

inline Vector random_unit_vector(std::mt19937_64& rng, Eigen::Index dim) {
  std::normal_distribution<double> g(0.0, 1.0);
  Vector v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) v(i) = cplx(g(rng), g(rng));
  return v / v.norm();
}

inline Matrix random_density(std::mt19937_64& rng, Eigen::Index dim) {
  const Matrix a = random_matrix(rng, dim);
  Matrix rho = a * a.adjoint();
  rho /= rho.trace();
  return 0.5 * (rho + rho.adjoint());
}

// Random orthogonal decomposition of C^dim into `blocks` non-empty subspaces.
inline ProjectorFamily random_family(std::mt19937_64& rng, Eigen::Index dim, int blocks) {
  Eigen::HouseholderQR<Matrix> qr(random_matrix(rng, dim));
  const Matrix q = qr.householderQ();
  std::vector<std::vector<Vector>> spans(static_cast<std::size_t>(blocks));
  for (Eigen::Index k = 0; k < dim; ++k) {
    const auto b = static_cast<std::size_t>(k < blocks ? k : std::uniform_int_distribution<int>(0, blocks - 1)(rng));
    spans[b].push_back(q.col(k));
  }
  return ProjectorFamily::from_spans(spans);
}

inline Eigen::Index random_dim(std::mt19937_64& rng, int lo = 2, int hi = 8) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

}  // namespace zeno::testing
