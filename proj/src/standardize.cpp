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

#include "tproc/standardize.hpp"

#include <algorithm>
#include <cmath>

#include "tproc/error.hpp"
#include "tproc/kernels.hpp"

namespace tproc {

std::vector<double> grid_times(int grid_R) {
  if (grid_R < 1) throw Error(errc::kInvalidConfig, "grid_R must be positive");
  std::vector<double> t(static_cast<std::size_t>(grid_R) + 1);
  for (int r = 0; r <= grid_R; ++r) {
    t[static_cast<std::size_t>(r)] = static_cast<double>(r) / grid_R;
  }
  return t;
}

StatPath make_grid_path(std::string stat_id, std::vector<double> values) {
  if (values.size() < 2) throw Error(errc::kInvalidInput, "a path needs at least two grid points");
  StatPath p;
  p.stat_id = std::move(stat_id);
  p.times = grid_times(static_cast<int>(values.size()) - 1);
  p.values = std::move(values);
  return p;
}

void Standardizer::add(std::string stat_id, StatScale scale) {
  if (!(scale.v > 0.0) || !std::isfinite(scale.v) || !std::isfinite(scale.m)) {
    throw Error(errc::kDegenerateStat, "scale for '" + stat_id + "' needs finite m and v > 0");
  }
  if (contains(stat_id)) {
    throw Error(errc::kInvalidInput, "duplicate scaler entry '" + stat_id + "'");
  }
  entries_.emplace_back(std::move(stat_id), scale);
}

bool Standardizer::contains(const std::string& stat_id) const noexcept {
  return std::any_of(entries_.begin(), entries_.end(),
                     [&](const auto& e) { return e.first == stat_id; });
}

const StatScale& Standardizer::at(const std::string& stat_id) const {
  for (const auto& [id, scale] : entries_) {
    if (id == stat_id) return scale;
  }
  throw Error(errc::kMissingScaler, "no scaler for stat '" + stat_id + "'");
}

StatScale fit_scale(std::span<const double> finals) {
  if (finals.size() < 2) {
    throw Error(errc::kTooFewGames, "need at least two games to estimate a scale");
  }
  double sum = 0.0;
  for (double x : finals) sum += x;
  const double n = static_cast<double>(finals.size());
  const double mean = sum / n;
  double ss = 0.0;
  for (double x : finals) ss += (x - mean) * (x - mean);
  const double sd = std::sqrt(ss / (n - 1.0));
  if (!(sd > 0.0)) {
    throw Error(errc::kDegenerateStat, "all final values are identical");
  }
  return {mean, sd};
}

Standardizer fit_standardizer(std::span<const StatFinals> finals) {
  Standardizer out;
  for (const auto& f : finals) {
    try {
      out.add(f.stat_id, fit_scale(f.values));
    } catch (const Error& e) {
      throw Error(e.category(), "stat '" + f.stat_id + "': " + e.detail());
    }
  }
  return out;
}

StatPath standardize_path(const StatPath& raw, const Standardizer& scaler) {
  const StatScale& s = scaler.at(raw.stat_id);
  StatPath out{raw.stat_id, raw.times, std::vector<double>(raw.values.size())};
  kernels::standardize(raw.values, raw.times, s.m, s.v, out.values);
  return out;
}

StatPath standardize_player_path(const StatPath& raw, const Standardizer& scaler, int roster_size) {
  if (roster_size < 1) throw Error(errc::kEmptyRoster, "roster size must be at least 1");
  const StatScale& s = scaler.at(raw.stat_id);
  StatPath out{raw.stat_id, raw.times, std::vector<double>(raw.values.size())};
  kernels::standardize(raw.values, raw.times, s.m / roster_size, s.v, out.values);
  return out;
}

double standardize_value(double raw, double t, const StatScale& scale) noexcept {
  return (raw - scale.m * t) / scale.v;
}

}  // namespace tproc
