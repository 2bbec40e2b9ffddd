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

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace zeno {

// Sampled grid (time, or a ladder parameter such as N or K) with named real
// columns of equal length.
class TimeSeries {
 public:
  struct Column {
    std::string name;
    std::vector<double> values;
    bool probability = false;
  };

  struct Violation {
    std::string column;
    std::size_t row = 0;
    double axis = 0.0;
    double value = 0.0;
  };

  TimeSeries() = default;
  // Throws StructuralError unless `axis` is strictly increasing.
  TimeSeries(std::string axis_name, std::vector<double> axis);

  // Throws StructuralError on a length mismatch or a duplicate name.
  void add_column(std::string name, std::vector<double> values, bool probability = false);

  const std::string& axis_name() const { return axis_name_; }
  const std::vector<double>& axis() const { return axis_; }
  const std::vector<Column>& columns() const { return columns_; }
  std::size_t rows() const { return axis_.size(); }

  bool has_column(const std::string& name) const;
  // Throws std::out_of_range for an unknown name.
  const std::vector<double>& column(const std::string& name) const;

  // First probability-column entry outside [-tol, 1 + tol], if any.
  std::optional<Violation> find_probability_violation(double tol) const;

  // Header row, then one row per sample; "%.17g", '.' decimal point, '\n'.
  void write_csv(std::ostream& os) const;
  std::string to_csv() const;

 private:
  std::string axis_name_ = "t";
  std::vector<double> axis_;
  std::vector<Column> columns_;
};

// Shortest round-trip-safe text for a double: 17 significant digits.
std::string format_double(double v);

// Uniform grid of `samples` points on [0, t_max].
std::vector<double> linspace(double start, double stop, std::size_t samples);

}  // namespace zeno
