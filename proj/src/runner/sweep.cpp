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
#include <atomic>
#include <chrono>
#include <ostream>
#include <sstream>
#include <thread>

#include "json_util.hpp"

namespace zeno::runner {

namespace fs = std::filesystem;

namespace {

std::string column_name(const std::string& pointer) {
  std::string out = pointer.substr(1);
  std::replace(out.begin(), out.end(), '/', '.');
  return out;
}

std::string cell(const std::string& json_text) {
  const json v = json::parse(json_text);
  if (v.is_number()) return format_double(v.get<double>());
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

SweepRow run_point(const SweepConfig& config, std::size_t index, std::vector<std::string> values) {
  SweepRow row;
  row.index = index;
  row.values = std::move(values);
  try {
    json doc = json::parse(config.base);
    for (std::size_t a = 0; a < config.grid.size(); ++a) {
      doc[json::json_pointer(config.grid[a].pointer)] = json::parse(row.values[a]);
    }
    row.scalars = execute(ExperimentConfig::parse(doc.dump())).scalars;
  } catch (const std::exception& e) {
    row.failed = true;
    row.error = e.what();
  }
  return row;
}

}  // namespace

SweepConfig SweepConfig::parse(const std::string& json_text, const fs::path& base_dir) {
  const json doc = parse_json(json_text, "sweep");
  if (!doc.is_object()) throw UsageError("sweep: expected an object");
  for (const auto& item : doc.items()) {
    if (item.key() != "base" && item.key() != "grid" && item.key() != "outputs" && item.key() != "jobs") {
      throw UsageError("sweep: unknown key '" + item.key() + "'");
    }
  }
  SweepConfig c;
  if (!doc.contains("base")) throw UsageError("sweep: missing 'base'");
  const json& base = doc["base"];
  if (base.is_string()) {
    fs::path file = base.get<std::string>();
    if (file.is_relative()) file = base_dir / file;
    c.base = parse_json(read_file(file), file.string()).dump();
  } else if (base.is_object()) {
    c.base = base.dump();
  } else {
    throw UsageError("sweep.base: expected a config object or a file path");
  }
  // The base must itself be a valid experiment.
  ExperimentConfig::parse(c.base);

  if (!doc.contains("grid") || !doc["grid"].is_array() || doc["grid"].empty()) {
    throw UsageError("sweep.grid: expected a non-empty list of {path, values}");
  }
  for (const auto& axis : doc["grid"]) {
    if (!axis.is_object() || !axis.contains("path") || !axis["path"].is_string() || !axis.contains("values") ||
        !axis["values"].is_array() || axis["values"].empty()) {
      throw UsageError("sweep.grid: each axis needs a 'path' string and a non-empty 'values' list");
    }
    SweepAxis a;
    a.pointer = axis["path"].get<std::string>();
    if (a.pointer.size() < 2 || a.pointer[0] != '/') {
      throw UsageError("sweep.grid: path '" + a.pointer + "' is not a JSON pointer");
    }
    for (const auto& v : axis["values"]) a.values.push_back(v.dump());
    c.grid.push_back(std::move(a));
  }
  if (doc.contains("outputs")) {
    const json& out = doc["outputs"];
    if (out.contains("csv_path")) c.csv_path = out["csv_path"].get<std::string>();
    if (out.contains("summary_path")) c.summary_path = out["summary_path"].get<std::string>();
  }
  if (doc.contains("jobs")) {
    if (!doc["jobs"].is_number_unsigned()) throw UsageError("sweep.jobs: expected a non-negative integer");
    c.jobs = doc["jobs"].get<unsigned>();
  }
  return c;
}

SweepConfig SweepConfig::load(const fs::path& file) { return parse(read_file(file), file.parent_path()); }

std::size_t SweepResult::failures() const {
  return static_cast<std::size_t>(std::count_if(rows.begin(), rows.end(), [](const SweepRow& r) { return r.failed; }));
}

void SweepResult::write_csv(std::ostream& os) const {
  std::vector<std::string> names;
  for (const auto& row : rows) {
    for (const auto& s : row.scalars) {
      if (std::find(names.begin(), names.end(), s.name) == names.end()) names.push_back(s.name);
    }
  }
  os << "index";
  for (const auto& a : axis_names) os << ',' << a;
  os << ",failed";
  for (const auto& n : names) os << ',' << n;
  os << '\n';
  for (const auto& row : rows) {
    os << row.index;
    for (const auto& v : row.values) os << ',' << cell(v);
    os << ',' << (row.failed ? 1 : 0);
    for (const auto& n : names) {
      const auto it = std::find_if(row.scalars.begin(), row.scalars.end(), [&](const Scalar& s) { return s.name == n; });
      os << ',' << (it == row.scalars.end() ? std::string("nan") : format_double(it->value));
    }
    os << '\n';
  }
}

SweepResult sweep(const SweepConfig& config) {
  if (config.grid.empty()) throw UsageError("sweep: empty grid");
  std::size_t total = 1;
  for (const auto& a : config.grid) {
    if (a.values.empty()) throw UsageError("sweep: axis '" + a.pointer + "' has no values");
    total *= a.values.size();
  }

  SweepResult result;
  for (const auto& a : config.grid) result.axis_names.push_back(column_name(a.pointer));
  result.rows.resize(total);

  // Last axis varies fastest.
  auto values_at = [&](std::size_t index) {
    std::vector<std::string> v(config.grid.size());
    for (std::size_t a = config.grid.size(); a-- > 0;) {
      const auto& axis = config.grid[a].values;
      v[a] = axis[index % axis.size()];
      index /= axis.size();
    }
    return v;
  };

  unsigned jobs = config.jobs ? config.jobs : std::max(1u, std::thread::hardware_concurrency());
  jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, total));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < total; i = next++) result.rows[i] = run_point(config, i, values_at(i));
  };
  std::vector<std::thread> pool;
  for (unsigned j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return result;
}

RunFiles write_sweep(const SweepConfig& config, const std::optional<fs::path>& out_dir, SweepResult* out) {
  const auto start = std::chrono::steady_clock::now();
  SweepResult result = sweep(config);
  RunFiles files;
  files.csv = resolve_output(config.csv_path, out_dir);
  files.summary = resolve_output(config.summary_path, out_dir);
  std::ostringstream csv;
  result.write_csv(csv);
  write_file(files.csv, csv.str());

  json doc;
  json echo;
  echo["base"] = json::parse(config.base);
  json grid = json::array();
  for (const auto& a : config.grid) {
    json values = json::array();
    for (const auto& v : a.values) values.push_back(json::parse(v));
    grid.push_back(json{{"path", a.pointer}, {"values", values}});
  }
  echo["grid"] = grid;
  echo["outputs"] = json{{"csv_path", config.csv_path}, {"summary_path", config.summary_path}};
  doc["config"] = echo;
  doc["points"] = result.rows.size();
  doc["failures"] = result.failures();
  json failed = json::array();
  for (const auto& row : result.rows) {
    if (row.failed) failed.push_back(json{{"index", row.index}, {"error", row.error}});
  }
  doc["failed_rows"] = failed;
  doc["wall_clock_seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  write_file(files.summary, doc.dump(2) + "\n");
  if (out) *out = std::move(result);
  return files;
}

}  // namespace zeno::runner
