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

#include "zeno/timeseries.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "zeno/errors.hpp"

namespace zeno {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::vector<double> linspace(double start, double stop, std::size_t samples) {
  if (samples < 2) throw PreconditionError("linspace: need at least 2 samples");
  std::vector<double> out(samples);
  const double step = (stop - start) / static_cast<double>(samples - 1);
  for (std::size_t i = 0; i < samples; ++i) out[i] = start + step * static_cast<double>(i);
  out.back() = stop;
  return out;
}

TimeSeries::TimeSeries(std::string axis_name, std::vector<double> axis)
    : axis_name_(std::move(axis_name)), axis_(std::move(axis)) {
  for (std::size_t i = 1; i < axis_.size(); ++i) {
    if (!(axis_[i] > axis_[i - 1])) {
      throw StructuralError("TimeSeries: axis '" + axis_name_ + "' is not strictly increasing at row " +
                            std::to_string(i));
    }
  }
}

void TimeSeries::add_column(std::string name, std::vector<double> values, bool probability) {
  if (values.size() != axis_.size()) {
    throw StructuralError("TimeSeries: column '" + name + "' has " + std::to_string(values.size()) +
                          " rows, axis has " + std::to_string(axis_.size()));
  }
  if (name == axis_name_ || has_column(name)) {
    throw StructuralError("TimeSeries: duplicate column '" + name + "'");
  }
  columns_.push_back({std::move(name), std::move(values), probability});
}

bool TimeSeries::has_column(const std::string& name) const {
  return std::any_of(columns_.begin(), columns_.end(),
                     [&](const Column& c) { return c.name == name; });
}

const std::vector<double>& TimeSeries::column(const std::string& name) const {
  for (const auto& c : columns_) {
    if (c.name == name) return c.values;
  }
  throw std::out_of_range("TimeSeries: no column '" + name + "'");
}

std::optional<TimeSeries::Violation> TimeSeries::find_probability_violation(double tol) const {
  for (std::size_t r = 0; r < axis_.size(); ++r) {
    for (const auto& c : columns_) {
      if (!c.probability) continue;
      const double v = c.values[r];
      if (!(v >= -tol && v <= 1.0 + tol)) return Violation{c.name, r, axis_[r], v};
    }
  }
  return std::nullopt;
}

void TimeSeries::write_csv(std::ostream& os) const {
  os << axis_name_;
  for (const auto& c : columns_) os << ',' << c.name;
  os << '\n';
  for (std::size_t r = 0; r < axis_.size(); ++r) {
    os << format_double(axis_[r]);
    for (const auto& c : columns_) os << ',' << format_double(c.values[r]);
    os << '\n';
  }
}

std::string TimeSeries::to_csv() const {
  std::ostringstream os;
  write_csv(os);
  return os.str();
}

}  // namespace zeno
