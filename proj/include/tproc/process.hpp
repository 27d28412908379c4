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
#include <vector>

#include "tproc/game.hpp"
#include "tproc/model.hpp"
#include "tproc/tscore.hpp"

namespace tproc {

/// Our fitted model against a given opponent strength.
struct MatchContext {
  FittedModel model;
  double opponent_tfs = 1.0;
  int grid_R = 40;

  const TScoreVariant& variant() const noexcept { return model.variant; }
  double draw() const noexcept { return draw_benchmark(model.variant); }
  /// T(alpha0, beta0): the starting level of the modified process.
  double initial_level() const;
  void validate() const;
};

/// What the current-information anchor T_* blends with the pre-game level.
/// RealizedScore is T(a(t), b(t)); ModifiedProcess uses mT(t) itself.
enum class PwAnchor { RealizedScore, ModifiedProcess };

/// One replayed (or live) game on the grid t_r = r/R.
struct ProcessPath {
  std::vector<double> times;
  std::vector<double> mt;
  std::vector<double> t_star;
  std::vector<double> pw;
  std::vector<double> score_a;
  std::vector<double> score_b;

  std::size_t size() const noexcept { return times.size(); }
  int grid_R() const noexcept { return static_cast<int>(times.size()) - 1; }

  friend bool operator==(const ProcessPath&, const ProcessPath&) = default;
};

/// Builds a path from a bare mT series (e.g. digitized chart values).
ProcessPath path_from_levels(std::vector<double> mt);

/// mT(t_r) = T(alpha0, beta0) + sum_i alpha_i S_i(t_r). The Brownian noise
/// term is unobservable and replayed at its point value 0. Fills times, mt
/// and the score paths. Throws GridMismatch if the game is on another grid.
ProcessPath mt_path(const MatchContext& ctx, const GameRecord& game);

/// (1 - t) T(alpha0, beta0) + t T(a, b)
double t_star(const MatchContext& ctx, double t, ScorePair s);
/// Same blend with an arbitrary current level in place of T(a, b).
double t_star_from_level(const MatchContext& ctx, double t, double level);

/// 1 - Phi((c - T_*) / sqrt((1 - t)(tau2 + sigma2))) for t < 1. At t = 1 the
/// limit: 1 if T(a, b) > c, 0 if below, 0.5 on a tie. Throws
/// DegenerateModel when t < 1 and tau2 + sigma2 = 0.
double win_probability(const MatchContext& ctx, double t, ScorePair s);
/// Closed form for a given anchor value; requires t < 1.
double win_probability_given_t_star(const MatchContext& ctx, double t, double t_star_value);

/// dPW/dS_i = phi(z) alpha_i / s(t), z = (c - T_*) / s(t). Requires t < 1.
std::vector<double> pw_sensitivity(const MatchContext& ctx, double t, ScorePair s);
std::vector<double> pw_sensitivity_given_t_star(const MatchContext& ctx, double t, double t_star_value);

/// Fills t_star and pw on a path that already has mt and scores. The last
/// point (t = 1) always follows the endpoint rule on the final score.
void fill_win_probability(const MatchContext& ctx, ProcessPath& path, PwAnchor anchor);

/// mt_path followed by fill_win_probability.
ProcessPath replay(const MatchContext& ctx, const GameRecord& game, PwAnchor anchor);

/// Conditional law of the predicted T-score at horizon u given time t:
/// N(T_*, (u - t)(tau2 + sigma2)).
struct PredictiveNormal {
  double mean = 0.0;
  double variance = 0.0;
};
PredictiveNormal predicted_t_score(const MatchContext& ctx, double t, ScorePair s, double horizon);

}  // namespace tproc
