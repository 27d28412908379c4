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

#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tproc/game.hpp"
#include "tproc/model.hpp"
#include "tproc/process.hpp"

namespace tproc {

// Thresholds here are per-step increments theta of mT on the game grid. A
// rate threshold delta on dmT/dt corresponds to theta = delta / R.

/// "Interval on Fire": grid steps [t_r, t_{r+1}) whose mT increment is
/// strictly above the threshold.
struct IofResult {
  double threshold_theta = 0.0;
  std::vector<int> steps;            // r indices, ascending
  std::vector<Interval> intervals;   // [t_r, t_{r+1}) for each step
  double total_length = 0.0;         // (#steps) / R
  double increment_sum = 0.0;        // sum of the qualifying increments

  bool contains_step(int r) const noexcept;
};

/// theta from the k-th largest per-step increment, truncated toward zero to
/// three significant digits and lowered one 3-digit unit at a time until the
/// top k steps are all strictly above it. Throws TooFewRises when fewer than
/// k increments are positive.
double select_delta(const ProcessPath& path, int k_target = 4);

/// Truncation helper, exposed for tests: largest 3-significant-digit decimal
/// that does not exceed x (x > 0).
double truncate_3sig(double x);
/// Next 3-significant-digit decimal strictly below x (x a 3-digit value).
double lower_3sig(double x);

IofResult iof(const ProcessPath& path, double theta);

/// Optional end-game weighting w(t) = 1/sqrt(1 - t) inside the X-index.
enum class XWeight { None, InverseSqrtRemaining };

/// Measure of span ∩ IoF, optionally weighted. The weighted integral is
/// evaluated in closed form, 2(sqrt(1 - lo) - sqrt(1 - hi)) per piece.
double x_index(const OnCourtSpan& span, const IofResult& iof_result, XWeight weight = XWeight::None);

/// h in STATS X = h(X). The default is linear with the game's own theta as
/// slope, h(x) = theta_k x.
class StatsXTransform {
 public:
  using Fn = std::function<double(double x, double game_theta)>;

  static StatsXTransform linear_game_theta();
  static StatsXTransform linear(double slope);
  static StatsXTransform zero();
  /// Checks h(0) = 0, monotone non-decreasing, bounded and continuous on a
  /// 1e-3 grid over [0, 1] for each listed theta. Throws InvalidTransform.
  static StatsXTransform custom(std::string name, Fn fn, std::vector<double> probe_thetas = {1.0});

  double operator()(double x, double game_theta) const { return fn_(x, game_theta); }
  const std::string& name() const noexcept { return name_; }

 private:
  StatsXTransform(std::string name, Fn fn) : name_(std::move(name)), fn_(std::move(fn)) {}
  void validate(std::span<const double> probe_thetas) const;

  std::string name_;
  Fn fn_;
};

enum class PtsDenominator { AllGames, Appearances };

/// One game's player evaluations with the threshold that produced them.
struct GameEvaluation {
  std::string game_id;
  double theta = 0.0;
  std::vector<PlayerGameEval> players;
};

/// Fills x_index, x_weighted, stats_x on the evaluations from the game's
/// on-court spans.
void apply_flow(GameEvaluation& eval, const GameRecord& game, const IofResult& iof_result,
                const StatsXTransform& h);

struct PlayerTotal {
  std::string player_id;
  int appearances = 0;
  int denominator = 0;
  double pts = 0.0;
  double mean_pcs = 0.0;
  double mean_stats_x = 0.0;
};

/// PTS_j = (1/n) sum_k [PCS_kj + h(X_kj)]. Games a player missed add 0; n
/// is every game (AllGames) or only the player's games (Appearances).
/// Results are ordered by player id.
std::vector<PlayerTotal> player_totals(std::span<const GameEvaluation> games, const StatsXTransform& h,
                                       PtsDenominator denominator = PtsDenominator::AllGames);

struct StoppingTimes {
  std::optional<double> reversal_time;  // first t_r with increment <= -theta
  std::optional<double> pw_drop_time;   // first t_r with PW <= epsilon
};

StoppingTimes stopping_times(const ProcessPath& path, double theta, double epsilon);

/// Lower bound mT(1) - mT(0) > theta (#IoF steps) - sum over other steps of
/// |increment|. Returns the right-hand side.
double iof_lower_bound(const ProcessPath& path, const IofResult& iof_result);

}  // namespace tproc
