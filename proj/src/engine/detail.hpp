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

#include <string>

#include "zeno/linalg.hpp"

namespace zeno::detail {

// M^n by repeated squaring, n >= 0.
Matrix matrix_power(const Matrix& m, long long n);

void require_same_dim(const char* op, Eigen::Index a, Eigen::Index b);

// P must be flagged Hermitian and idempotent within 1e-10.
void require_projector(const char* op, const Operator& p);

// Result flagged unitary when `source_hermitian`, general otherwise.
Operator wrap_evolution(const char* op, Matrix m, bool source_hermitian);

}  // namespace zeno::detail
