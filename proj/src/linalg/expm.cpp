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

// Matrix exponential by scaling and squaring with the diagonal [13/13] Pade
// approximant (Higham, SIAM J. Matrix Anal. Appl. 26 (2005) 1179).
//
// The degree is fixed at 13 for every input. Lower degrees would save a few
// products for tiny norms, which is irrelevant at the dimensions used here.

#include <array>
#include <cmath>
#include <sstream>

#include "zeno/linalg.hpp"

namespace zeno {

namespace {

// Coefficients b_0..b_13 of the [13/13] numerator polynomial.
constexpr std::array<double, 14> kPade13 = {
    64764752532480000.0, 32382376266240000.0, 7771770303897600.0, 1187353796428800.0,
    129060195264000.0,   10559470521600.0,    670442572800.0,     33522128640.0,
    1323241920.0,        40840800.0,          960960.0,           16380.0,
    182.0,               1.0};

// Largest 1-norm for which the [13/13] approximant reaches double precision.
constexpr double kTheta13 = 5.371920351148152;

double one_norm(const Matrix& a) { return a.cwiseAbs().colwise().sum().maxCoeff(); }

}  // namespace

Matrix expm(const Matrix& a) {
  if (a.rows() != a.cols()) throw StructuralError("expm: matrix must be square");
  const Eigen::Index n = a.rows();
  if (n == 0) return a;
  if (!a.allFinite()) throw NumericalError("expm: non-finite entries");

  const double norm = one_norm(a);
  int squarings = 0;
  if (norm > kTheta13) squarings = static_cast<int>(std::ceil(std::log2(norm / kTheta13)));
  const Matrix scaled = a / std::ldexp(1.0, squarings);

  const auto& b = kPade13;
  const Matrix id = Matrix::Identity(n, n);
  const Matrix a2 = scaled * scaled;
  const Matrix a4 = a2 * a2;
  const Matrix a6 = a4 * a2;

  Matrix odd_inner = b[13] * a6 + b[11] * a4 + b[9] * a2;
  Matrix odd = scaled * (a6 * odd_inner + b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * id);
  Matrix even_inner = b[12] * a6 + b[10] * a4 + b[8] * a2;
  Matrix even = a6 * even_inner + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * id;

  Matrix result = (even - odd).partialPivLu().solve(even + odd);
  for (int i = 0; i < squarings; ++i) result = (result * result).eval();

  if (!result.allFinite()) {
    std::ostringstream os;
    os << "expm: overflow (1-norm " << norm << ", " << squarings << " squarings)";
    throw NumericalError(os.str());
  }
  return result;
}

Operator propagator(const Operator& h, double t) {
  if (!std::isfinite(t)) throw NumericalError("propagator: non-finite time");
  const Eigen::Index n = h.dim();
  if (t == 0.0) return Operator::identity(n);

  Matrix u = expm(Matrix(cplx(0.0, -t) * h.matrix()));
  if (!h.is_hermitian()) return Operator(std::move(u));

  // Independent route through the eigendecomposition.
  const EigenSystem es = eig_hermitian(h);
  const Matrix& v = es.eigenvectors.matrix();
  Vector phases(n);
  for (Eigen::Index k = 0; k < n; ++k) phases(k) = std::exp(cplx(0.0, -es.eigenvalues(k) * t));
  const Matrix u_eig = v * phases.asDiagonal() * v.adjoint();
  const double scale = std::max(1.0, spectral_norm(h.matrix()) * std::abs(t));
  const double mismatch = spectral_norm(u - u_eig);
  if (mismatch > 1e-9 * scale) {
    std::ostringstream os;
    os << "propagator: Pade and eigendecomposition routes disagree by " << mismatch;
    throw NumericalError(os.str());
  }
  try {
    return Operator::unitary(std::move(u));
  } catch (const StructuralError&) {
    throw NumericalError("propagator: result lost unitarity beyond 1e-10");
  }
}

}  // namespace zeno
