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

#include <stdexcept>
#include <string>
#include <vector>

namespace zeno {

// Shape, dimension or flag mismatch in the arguments of an operation.
class StructuralError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A documented precondition on the input values does not hold.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Floating point trouble: NaN entries, failed convergence, lost accuracy.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// log(0) in the effective decay rate.
class SingularityError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

// Every measurement branch was filtered out.
class UnderflowError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

// Coalescing eigenvalues of a non-Hermitian matrix.
class ExceptionalPointError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

// Non-fatal diagnostic. `operation` names the emitting operation.
struct Warning {
  std::string operation;
  std::string message;

  friend bool operator==(const Warning&, const Warning&) = default;
};

using Warnings = std::vector<Warning>;

}  // namespace zeno
