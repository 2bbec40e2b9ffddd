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

// Internal helpers shared by the runner translation units.

#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"
#include "zeno/linalg.hpp"
#include "zeno/runner.hpp"

namespace zeno::runner {

// Key order is preserved so echoed configs and summaries stay diffable.
using json = nlohmann::ordered_json;

json config_document(const ExperimentConfig& c);
json parse_json(const std::string& text, const std::string& where);
std::string read_file(const std::filesystem::path& file);
// Creates parent directories; throws std::runtime_error on failure.
void write_file(const std::filesystem::path& file, const std::string& text);

json scalars_json(const std::vector<Scalar>& scalars);
json warnings_json(const Warnings& warnings);
// Rows of [re, im] pairs.
json matrix_json(const Matrix& m);

}  // namespace zeno::runner
