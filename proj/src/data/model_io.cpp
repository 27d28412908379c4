// Copyright 2026 The tproc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include <json.hpp>

#include "tproc/data.hpp"
#include "tproc/decimal.hpp"
#include "tproc/error.hpp"

namespace tproc {

namespace {

using nlohmann::ordered_json;

double num(const ordered_json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_string()) {
    throw Error(errc::kParseError, std::string("model field '") + key + "' must be a decimal string");
  }
  return parse_decimal(j.at(key).get<std::string>());
}

std::string str(const ordered_json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_string()) {
    throw Error(errc::kParseError, std::string("model field '") + key + "' must be a string");
  }
  return j.at(key).get<std::string>();
}

const ordered_json& arr(const ordered_json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_array()) {
    throw Error(errc::kParseError, std::string("model field '") + key + "' must be an array");
  }
  return j.at(key);
}

}  // namespace

std::string model_to_json(const FittedModel& m) {
  ordered_json j;
  j["schema_version"] = kModelSchemaVersion;
  j["team_id"] = m.team_id;
  j["variant"] = std::string(variant_name(m.variant.kind));
  j["kappa"] = format_decimal(m.variant.kappa);
  j["n_games"] = m.n_games;
  j["alpha0"] = format_decimal(m.alpha0);
  j["sigma2"] = format_decimal(m.sigma2);
  j["tau2"] = format_decimal(m.tau2);
  ordered_json coef = ordered_json::array();
  for (std::size_t i = 0; i < m.stat_ids.size(); ++i) {
    coef.push_back({{"stat_id", m.stat_ids[i]}, {"alpha", format_decimal(m.alpha.at(i))}});
  }
  j["coefficients"] = coef;
  ordered_json scaler = ordered_json::array();
  for (const auto& [id, s] : m.scaler.entries()) {
    scaler.push_back({{"stat_id", id}, {"m", format_decimal(s.m)}, {"v", format_decimal(s.v)}});
  }
  j["scaler"] = scaler;
  ordered_json inf = ordered_json::array();
  for (const auto& row : m.inference) {
    inf.push_back({{"name", row.name},
                   {"estimate", format_decimal(row.estimate)},
                   {"std_error", format_decimal(row.std_error)},
                   {"t_value", format_decimal(row.t_value)},
                   {"p_value", format_decimal(row.p_value)}});
  }
  j["inference"] = inf;
  return j.dump(2) + "\n";
}

FittedModel model_from_json(std::string_view text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(errc::kParseError, std::string("model file is not valid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("schema_version") || !j.at("schema_version").is_number_integer()) {
    throw Error(errc::kParseError, "model file lacks an integer schema_version");
  }
  const int version = j.at("schema_version").get<int>();
  if (version != kModelSchemaVersion) {
    throw Error(errc::kVersionMismatch, "model schema_version " + std::to_string(version) + ", expected " +
                                            std::to_string(kModelSchemaVersion));
  }
  FittedModel m;
  m.team_id = str(j, "team_id");
  m.variant.kind = parse_variant_kind(str(j, "variant"));
  m.variant.kappa = num(j, "kappa");
  if (!j.contains("n_games") || !j.at("n_games").is_number_integer()) {
    throw Error(errc::kParseError, "model field 'n_games' must be an integer");
  }
  m.n_games = j.at("n_games").get<int>();
  m.alpha0 = num(j, "alpha0");
  m.sigma2 = num(j, "sigma2");
  m.tau2 = num(j, "tau2");
  for (const auto& c : arr(j, "coefficients")) {
    m.stat_ids.push_back(str(c, "stat_id"));
    m.alpha.push_back(num(c, "alpha"));
  }
  for (const auto& s : arr(j, "scaler")) m.scaler.add(str(s, "stat_id"), {num(s, "m"), num(s, "v")});
  if (j.contains("inference")) {
    for (const auto& r : arr(j, "inference")) {
      m.inference.push_back({str(r, "name"), num(r, "estimate"), num(r, "std_error"), num(r, "t_value"),
                             num(r, "p_value")});
    }
  }
  m.validate();
  return m;
}

void save_model(const FittedModel& model, const std::filesystem::path& path) {
  write_text_file(path, model_to_json(model));
}

FittedModel load_model(const std::filesystem::path& path) { return model_from_json(read_text_file(path)); }

std::map<std::string, double> load_tfs_table(const std::filesystem::path& path) {
  const CsvTable t = CsvTable::read_file(path);
  const auto c_id = t.column("team_id");
  const auto c_tfs = t.column("tfs");
  std::map<std::string, double> out;
  for (std::size_t i = 0; i < t.rows(); ++i) {
    if (!out.emplace(t.text(i, c_id), t.decimal(i, c_tfs)).second) {
      throw Error(errc::kParseError, t.where(i, c_id) + ": duplicate team '" + t.text(i, c_id) + "'");
    }
  }
  return out;
}

void write_tfs_table(const std::map<std::string, double>& table, std::ostream& out) {
  const std::vector<std::string> h{"team_id", "tfs"};
  write_csv_row(out, h);
  for (const auto& [id, tfs] : table) {
    const std::vector<std::string> row{id, format_decimal(tfs)};
    write_csv_row(out, row);
  }
}

}  // namespace tproc
