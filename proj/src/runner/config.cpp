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

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json_util.hpp"
#include "zeno/runner.hpp"

namespace zeno::runner {

namespace {

struct ProcedureName {
  Procedure kind;
  const char* name;
};

constexpr ProcedureName kProcedures[] = {
    {Procedure::kFree, "free"},
    {Procedure::kPulsedSelective, "pulsed_selective"},
    {Procedure::kPulsedNonselective, "pulsed_nonselective"},
    {Procedure::kKicked, "kicked"},
    {Procedure::kContinuous, "continuous"},
    {Procedure::kClosedForm, "closed_form"},
};

Procedure procedure_from(const std::string& name) {
  for (const auto& p : kProcedures) {
    if (name == p.name) return p.kind;
  }
  throw UsageError("unknown procedure '" + name + "'");
}

void require_keys(const json& obj, const std::string& where, std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) throw UsageError(where + ": expected an object");
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& item : obj.items()) {
    if (!ok.contains(item.key())) throw UsageError(where + ": unknown key '" + item.key() + "'");
  }
}

double get_number(const json& v, const std::string& where) {
  if (!v.is_number()) throw UsageError(where + ": expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw UsageError(where + ": must be finite");
  return x;
}

int get_int(const json& v, const std::string& where) {
  if (!v.is_number_integer()) throw UsageError(where + ": expected an integer");
  return v.get<int>();
}

cplx get_complex(const json& v, const std::string& where) {
  if (v.is_number()) return {get_number(v, where), 0.0};
  if (v.is_array() && v.size() == 2) return {get_number(v[0], where), get_number(v[1], where)};
  throw UsageError(where + ": expected a number or [re, im]");
}

std::vector<cplx> get_amplitudes(const json& v, const std::string& where) {
  if (!v.is_array() || v.empty()) throw UsageError(where + ": expected a non-empty amplitude list");
  std::vector<cplx> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(get_complex(v[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

FamilySpec get_family(const json& v, const std::string& where) {
  FamilySpec f;
  if (v.is_string()) {
    if (v.get<std::string>() != "control") throw UsageError(where + ": only \"control\" is a valid string");
    f.control = true;
    return f;
  }
  require_keys(v, where, {"spans"});
  const json& spans = v.at("spans");
  if (!spans.is_array() || spans.empty()) throw UsageError(where + ".spans: expected a non-empty list");
  for (std::size_t s = 0; s < spans.size(); ++s) {
    const std::string at = where + ".spans[" + std::to_string(s) + "]";
    if (!spans[s].is_array() || spans[s].empty()) throw UsageError(at + ": expected a non-empty list");
    std::vector<SpanEntry> span;
    for (const auto& e : spans[s]) {
      if (e.is_number_integer()) {
        span.emplace_back(e.get<int>());
      } else {
        span.emplace_back(get_amplitudes(e, at));
      }
    }
    f.spans.push_back(std::move(span));
  }
  return f;
}

template <typename T>
void require_increasing(const std::vector<T>& v, const std::string& where) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!(v[i] > T{0})) throw UsageError(where + ": entries must be positive");
    if (i > 0 && !(v[i] > v[i - 1])) throw UsageError(where + ": must be strictly increasing");
  }
}

bool valid_name(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.')) return false;
  }
  return true;
}

void validate_vector(const std::vector<cplx>& v, Eigen::Index dim, const std::string& where) {
  if (static_cast<Eigen::Index>(v.size()) != dim) {
    throw UsageError(where + ": expected " + std::to_string(dim) + " amplitudes, got " + std::to_string(v.size()));
  }
}

void validate_family(const FamilySpec& f, const models::ModelInfo& info, bool has_split, const std::string& where) {
  if (f.control && !has_split) throw UsageError(where + ": model '" + info.name + "' has no control operator");
  for (const auto& span : f.spans) {
    for (const auto& e : span) {
      if (const int* label = std::get_if<int>(&e)) {
        if (*label < info.first_label || *label >= info.first_label + info.dim) {
          throw UsageError(where + ": basis label " + std::to_string(*label) + " out of range");
        }
      } else {
        validate_vector(std::get<std::vector<cplx>>(e), info.dim, where);
      }
    }
  }
}

void validate(ExperimentConfig& c) {
  if (!valid_name(c.name)) throw UsageError("name: use letters, digits, '_', '-' or '.'");
  const models::ModelInfo* info = nullptr;
  try {
    info = &models::model_info(c.model);
    models::build(c.model, c.params);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("model: ") + e.what());
  }
  const bool has_split = models::build_split(c.model, c.params).has_value();

  if (const int* label = std::get_if<int>(&c.initial_state)) {
    if (*label < info->first_label || *label >= info->first_label + info->dim) {
      throw UsageError("initial_state: basis label " + std::to_string(*label) + " out of range");
    }
  } else {
    const auto& amps = std::get<std::vector<cplx>>(c.initial_state);
    validate_vector(amps, info->dim, "initial_state");
    double norm = 0.0;
    for (const auto& a : amps) norm += std::norm(a);
    if (std::abs(norm - 1.0) > 1e-9) throw UsageError("initial_state: amplitudes not normalized within 1e-9");
  }

  if (!(c.t_max > 0.0) || !std::isfinite(c.t_max)) throw UsageError("time.t_max: must be finite and > 0");
  if (c.samples < 2) throw UsageError("time.samples: must be >= 2");

  auto& p = c.procedure;
  if (p.n < 1) throw UsageError("procedure.n: must be >= 1");
  require_increasing(p.n_ladder, "procedure.n_ladder");
  require_increasing(p.k_ladder, "procedure.k_ladder");
  if (p.k && !(*p.k >= 0.0)) throw UsageError("procedure.k: must be >= 0");
  if (p.tau && !(*p.tau > 0.0)) throw UsageError("procedure.tau: must be > 0");
  if (p.fit_window && !(p.fit_window->first >= 0.0 && p.fit_window->second > p.fit_window->first)) {
    throw UsageError("procedure.fit_window: need 0 <= start < stop");
  }
  validate_family(p.projector, *info, has_split, "procedure.projector");
  validate_family(p.kick.family, *info, has_split, "procedure.kick");
  if (!p.kick.family.spans.empty() && p.kick.phases.size() != p.kick.family.spans.size()) {
    throw UsageError("procedure.kick: need one phase per span");
  }

  switch (p.kind) {
    case Procedure::kPulsedSelective:
      if (p.projector.control || p.projector.spans.size() > 1) {
        throw UsageError("procedure.projector: pulsed_selective takes a single span");
      }
      break;
    case Procedure::kPulsedNonselective:
      if (p.projector.empty() && !has_split) {
        throw UsageError("procedure.projector: required for a model without control operator");
      }
      break;
    case Procedure::kKicked:
      if (p.kick.family.spans.empty() && !has_split) {
        throw UsageError("procedure.kick: spans and phases required for a model without control operator");
      }
      break;
    case Procedure::kContinuous:
      if (!has_split) throw UsageError("procedure: continuous needs a model with a control operator");
      break;
    default:
      break;
  }
  if (!p.k_ladder.empty() && p.kind != Procedure::kContinuous) {
    throw UsageError("procedure.k_ladder: only valid for continuous");
  }
  if (!p.n_ladder.empty() && p.kind != Procedure::kPulsedSelective && p.kind != Procedure::kPulsedNonselective &&
      p.kind != Procedure::kKicked) {
    throw UsageError("procedure.n_ladder: only valid for pulsed or kicked procedures");
  }

  if (c.csv_path.empty()) c.csv_path = c.name + ".csv";
  if (c.summary_path.empty()) c.summary_path = c.name + "_summary.json";
  if (c.ladder_csv_path.empty() && (!p.n_ladder.empty() || !p.k_ladder.empty())) {
    c.ladder_csv_path = c.name + "_ladder.csv";
  }
}

json complex_to_json(cplx z) {
  if (z.imag() == 0.0) return z.real();
  return json::array({z.real(), z.imag()});
}

json amplitudes_to_json(const std::vector<cplx>& v) {
  json out = json::array();
  for (const auto& z : v) out.push_back(complex_to_json(z));
  return out;
}

json family_to_json(const FamilySpec& f) {
  if (f.control) return "control";
  json spans = json::array();
  for (const auto& span : f.spans) {
    json s = json::array();
    for (const auto& e : span) {
      if (const int* label = std::get_if<int>(&e)) {
        s.push_back(*label);
      } else {
        s.push_back(amplitudes_to_json(std::get<std::vector<cplx>>(e)));
      }
    }
    spans.push_back(std::move(s));
  }
  return json{{"spans", spans}};
}

ExperimentConfig from_document(const json& doc) {
  require_keys(doc, "config", {"name", "model", "initial_state", "procedure", "time", "outputs"});
  ExperimentConfig c;
  if (doc.contains("name")) {
    if (!doc["name"].is_string()) throw UsageError("name: expected a string");
    c.name = doc["name"].get<std::string>();
  }

  if (!doc.contains("model")) throw UsageError("config: missing 'model'");
  const json& model = doc["model"];
  require_keys(model, "model", {"name", "params"});
  if (!model.contains("name") || !model["name"].is_string()) throw UsageError("model.name: expected a string");
  c.model = model["name"].get<std::string>();
  if (model.contains("params")) {
    const json& params = model["params"];
    require_keys(params, "model.params", {"omega", "omega_prime", "gamma_big", "gamma_small", "omega_big"});
    auto read = [&](const char* key, std::optional<double>& slot) {
      if (params.contains(key)) slot = get_number(params[key], std::string("model.params.") + key);
    };
    read("omega", c.params.omega);
    read("omega_prime", c.params.omega_prime);
    read("gamma_big", c.params.gamma_big);
    read("gamma_small", c.params.gamma_small);
    read("omega_big", c.params.omega_big);
  }

  c.initial_state = 1;
  bool have_state = false;
  if (doc.contains("initial_state")) {
    const json& s = doc["initial_state"];
    if (s.is_number_integer()) {
      c.initial_state = s.get<int>();
    } else {
      require_keys(s, "initial_state", {"label", "amplitudes"});
      if (s.contains("label") == s.contains("amplitudes")) {
        throw UsageError("initial_state: give exactly one of 'label' or 'amplitudes'");
      }
      if (s.contains("label")) {
        c.initial_state = get_int(s["label"], "initial_state.label");
      } else {
        c.initial_state = get_amplitudes(s["amplitudes"], "initial_state.amplitudes");
      }
    }
    have_state = true;
  }

  if (!doc.contains("procedure")) throw UsageError("config: missing 'procedure'");
  const json& proc = doc["procedure"];
  require_keys(proc, "procedure", {"kind", "n", "n_ladder", "k", "k_ladder", "projector", "kick", "tau", "fit_window"});
  if (!proc.contains("kind") || !proc["kind"].is_string()) throw UsageError("procedure.kind: expected a string");
  auto& p = c.procedure;
  p.kind = procedure_from(proc["kind"].get<std::string>());
  if (proc.contains("n")) p.n = get_int(proc["n"], "procedure.n");
  if (proc.contains("n_ladder")) {
    if (!proc["n_ladder"].is_array()) throw UsageError("procedure.n_ladder: expected a list");
    for (const auto& v : proc["n_ladder"]) p.n_ladder.push_back(get_int(v, "procedure.n_ladder"));
  }
  if (proc.contains("k")) p.k = get_number(proc["k"], "procedure.k");
  if (proc.contains("k_ladder")) {
    if (!proc["k_ladder"].is_array()) throw UsageError("procedure.k_ladder: expected a list");
    for (const auto& v : proc["k_ladder"]) p.k_ladder.push_back(get_number(v, "procedure.k_ladder"));
  }
  if (proc.contains("projector")) p.projector = get_family(proc["projector"], "procedure.projector");
  if (proc.contains("kick")) {
    const json& k = proc["kick"];
    require_keys(k, "procedure.kick", {"theta", "spans", "phases"});
    if (k.contains("theta")) p.kick.theta = get_number(k["theta"], "procedure.kick.theta");
    if (k.contains("spans")) p.kick.family = get_family(json{{"spans", k["spans"]}}, "procedure.kick");
    if (k.contains("phases")) {
      if (!k["phases"].is_array()) throw UsageError("procedure.kick.phases: expected a list");
      for (const auto& v : k["phases"]) p.kick.phases.push_back(get_number(v, "procedure.kick.phases"));
    }
    if (p.kick.theta && k.contains("spans")) throw UsageError("procedure.kick: give 'theta' or 'spans', not both");
  }
  if (proc.contains("tau")) p.tau = get_number(proc["tau"], "procedure.tau");
  if (proc.contains("fit_window")) {
    const json& w = proc["fit_window"];
    if (!w.is_array() || w.size() != 2) throw UsageError("procedure.fit_window: expected [start, stop]");
    p.fit_window = std::make_pair(get_number(w[0], "procedure.fit_window"), get_number(w[1], "procedure.fit_window"));
  }

  if (!doc.contains("time")) throw UsageError("config: missing 'time'");
  const json& time = doc["time"];
  require_keys(time, "time", {"t_max", "samples"});
  if (!time.contains("t_max") || !time.contains("samples")) throw UsageError("time: need 't_max' and 'samples'");
  c.t_max = get_number(time["t_max"], "time.t_max");
  c.samples = get_int(time["samples"], "time.samples");

  if (doc.contains("outputs")) {
    const json& out = doc["outputs"];
    require_keys(out, "outputs", {"csv_path", "summary_path", "ladder_csv_path"});
    auto read = [&](const char* key, std::string& slot) {
      if (!out.contains(key)) return;
      if (!out[key].is_string()) throw UsageError(std::string("outputs.") + key + ": expected a string");
      slot = out[key].get<std::string>();
    };
    read("csv_path", c.csv_path);
    read("summary_path", c.summary_path);
    read("ladder_csv_path", c.ladder_csv_path);
  }

  if (!have_state) {
    try {
      c.initial_state = models::model_info(c.model).first_label;
    } catch (const std::invalid_argument& e) {
      throw UsageError(std::string("model: ") + e.what());
    }
  }
  validate(c);
  return c;
}

}  // namespace

const char* to_string(Procedure p) {
  for (const auto& entry : kProcedures) {
    if (entry.kind == p) return entry.name;
  }
  return "unknown";
}

json config_document(const ExperimentConfig& c) {
  json doc;
  doc["name"] = c.name;
  json params = json::object();
  auto put = [&](const char* key, const std::optional<double>& v) {
    if (v) params[key] = *v;
  };
  put("omega", c.params.omega);
  put("omega_prime", c.params.omega_prime);
  put("gamma_big", c.params.gamma_big);
  put("gamma_small", c.params.gamma_small);
  put("omega_big", c.params.omega_big);
  doc["model"] = json{{"name", c.model}, {"params", params}};
  if (const int* label = std::get_if<int>(&c.initial_state)) {
    doc["initial_state"] = json{{"label", *label}};
  } else {
    doc["initial_state"] = json{{"amplitudes", amplitudes_to_json(std::get<std::vector<cplx>>(c.initial_state))}};
  }

  const auto& p = c.procedure;
  json proc;
  proc["kind"] = to_string(p.kind);
  proc["n"] = p.n;
  if (!p.n_ladder.empty()) proc["n_ladder"] = p.n_ladder;
  if (p.k) proc["k"] = *p.k;
  if (!p.k_ladder.empty()) proc["k_ladder"] = p.k_ladder;
  if (!p.projector.empty()) proc["projector"] = family_to_json(p.projector);
  if (p.kick.theta || !p.kick.family.spans.empty()) {
    json kick = json::object();
    if (p.kick.theta) kick["theta"] = *p.kick.theta;
    if (!p.kick.family.spans.empty()) {
      kick["spans"] = family_to_json(p.kick.family)["spans"];
      kick["phases"] = p.kick.phases;
    }
    proc["kick"] = kick;
  }
  if (p.tau) proc["tau"] = *p.tau;
  if (p.fit_window) proc["fit_window"] = json::array({p.fit_window->first, p.fit_window->second});
  doc["procedure"] = proc;

  doc["time"] = json{{"t_max", c.t_max}, {"samples", c.samples}};
  json out;
  out["csv_path"] = c.csv_path;
  out["summary_path"] = c.summary_path;
  if (!c.ladder_csv_path.empty()) out["ladder_csv_path"] = c.ladder_csv_path;
  doc["outputs"] = out;
  return doc;
}

json parse_json(const std::string& text, const std::string& where) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw UsageError(where + ": " + e.what());
  }
}

std::string read_file(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + file.string() + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

ExperimentConfig ExperimentConfig::parse(const std::string& json_text) {
  return from_document(parse_json(json_text, "config"));
}

ExperimentConfig ExperimentConfig::load(const std::filesystem::path& file) { return parse(read_file(file)); }

std::string ExperimentConfig::to_json(int indent) const { return config_document(*this).dump(indent); }

json parse_override_value(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error&) {
    return text;
  }
}

ExperimentConfig apply_overrides(const ExperimentConfig& config, const std::vector<std::string>& overrides) {
  json doc = config_document(config);
  for (const auto& item : overrides) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0 || item[0] != '/') {
      throw UsageError("override '" + item + "': expected /json/pointer=value");
    }
    try {
      doc[json::json_pointer(item.substr(0, eq))] = parse_override_value(item.substr(eq + 1));
    } catch (const json::exception& e) {
      throw UsageError("override '" + item + "': " + e.what());
    }
  }
  return from_document(doc);
}

}  // namespace zeno::runner
