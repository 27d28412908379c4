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

#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

namespace tproc {

/// Uniform game-time grid t_r = r / R, r = 0..R.
std::vector<double> grid_times(int grid_R);

/// A cumulative statistic sampled on a time grid over [0, 1]. Raw paths hold
/// non-decreasing counts starting at 0; standardized paths hold reals that
/// start at 0.
struct StatPath {
  std::string stat_id;
  std::vector<double> times;
  std::vector<double> values;

  std::size_t size() const noexcept { return values.size(); }
  double final_value() const { return values.back(); }
};

StatPath make_grid_path(std::string stat_id, std::vector<double> values);

/// Scale of one statistic: mean and standard deviation of its final value.
struct StatScale {
  double m = 0.0;
  double v = 1.0;

  friend bool operator==(const StatScale&, const StatScale&) = default;
};

/// Per-stat (m, v) pairs in declaration order.
class Standardizer {
 public:
  Standardizer() = default;

  void add(std::string stat_id, StatScale scale);
  bool contains(const std::string& stat_id) const noexcept;
  /// Throws MissingScaler for an unknown id.
  const StatScale& at(const std::string& stat_id) const;
  const std::vector<std::pair<std::string, StatScale>>& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }

  friend bool operator==(const Standardizer&, const Standardizer&) = default;

 private:
  std::vector<std::pair<std::string, StatScale>> entries_;
};

/// Sample mean and (n - 1) standard deviation of one stat's final values.
/// Throws TooFewGames for fewer than two values and DegenerateStat when all
/// values are equal.
StatScale fit_scale(std::span<const double> finals);

struct StatFinals {
  std::string stat_id;
  std::vector<double> values;
};

Standardizer fit_standardizer(std::span<const StatFinals> finals);

/// (raw(t) - m t) / v pointwise. The result is 0 at t = 0 and the ordinary
/// z-score of the final value at t = 1.
StatPath standardize_path(const StatPath& raw, const Standardizer& scaler);

/// Player-level variant: the team mean is split evenly across the J players
/// listed for the game, (raw(t) - (m / J) t) / v, so player paths sum to the
/// team path.
StatPath standardize_player_path(const StatPath& raw, const Standardizer& scaler, int roster_size);

/// Single-point versions used by the live session; same arithmetic as the
/// path kernels.
double standardize_value(double raw, double t, const StatScale& scale) noexcept;

}  // namespace tproc
