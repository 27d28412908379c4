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
#include <vector>

#include "tproc/game.hpp"
#include "tproc/standardize.hpp"
#include "tproc/tscore.hpp"

namespace tproc {

struct CoefficientInference {
  std::string name;
  double estimate = 0.0;
  double std_error = 0.0;
  double t_value = 0.0;
  double p_value = 0.0;

  friend bool operator==(const CoefficientInference&, const CoefficientInference&) = default;
};

/// A team's fitted linear T-score model:
///   T = alpha0 + sum_i alpha_i * S_i(1) + eps,  eps ~ (0, sigma2).
/// alpha0 is the Team Fundamental Score (TFS).
struct FittedModel {
  std::string team_id;
  TScoreVariant variant;
  double alpha0 = 0.0;
  std::vector<double> alpha;
  double sigma2 = 0.0;
  /// Always sum_i alpha_i^2; validate() rejects anything else.
  double tau2 = 0.0;
  Standardizer scaler;
  /// Intercept first (named "TFS"), then one row per stat.
  std::vector<CoefficientInference> inference;
  int n_games = 0;
  std::vector<std::string> stat_ids;

  /// sqrt(tau2 + sigma2): the per-unit-time spread of the modified process.
  double diffusion_scale() const noexcept;
  void validate() const;

  friend bool operator==(const FittedModel&, const FittedModel&) = default;
};

double sum_of_squares(std::span<const double> alpha) noexcept;

/// Plain OLS with an intercept column prepended to `columns`.
struct OlsResult {
  std::vector<double> coef;  // intercept first
  std::vector<double> std_error;
  std::vector<double> t_value;
  std::vector<double> p_value;
  double rss = 0.0;
  double sigma2 = 0.0;
  int dof = 0;
};

/// Rank-revealing orthogonal (column-pivoted Householder QR) solve. A column
/// whose pivot falls below 1e-10 of the largest column norm makes the design
/// rank deficient; the error names those columns. Needs n >= p + 2 rows.
OlsResult solve_ols(const std::vector<std::vector<double>>& columns, std::span<const double> y,
                    std::span<const std::string> column_names);

/// Two-sided Student-t p-value for statistic t with `dof` degrees of freedom.
double student_t_two_sided_p(double t, int dof);

/// Least-squares fit of one team's games. Games are ordered by game_id first
/// so the result does not depend on input order.
FittedModel fit(std::span<const GameRecord> games, const TScoreVariant& variant,
                std::span<const std::string> stat_ids);

/// Standardized final values S_i(1) of the model's stats for one game.
std::vector<double> standardized_finals(const FittedModel& model, const GameRecord& game);

struct TeamScores {
  double tfs = 0.0;
  double tss = 0.0;
  double predicted_t = 0.0;
};

TeamScores team_scores(const FittedModel& model, const GameRecord& game);

/// Per-player, per-game evaluation. pss/pcs come from player_scores; the
/// flow fields are filled by the flow module.
struct PlayerGameEval {
  std::string player_id;
  double pss = 0.0;
  double pcs = 0.0;
  double x_index = 0.0;
  double x_weighted = 0.0;
  double stats_x = 0.0;
  double minutes_fraction = 0.0;
};

/// Reallocates alpha0 across J players by their deviation from the mean PSS:
///   pcs_j = alpha0/J + alpha0 (pss_j - tss/J) / D,  D = sum_j |pss_j - tss/J|
/// with pcs_j = alpha0/J when D is zero to rounding. The values always sum to alpha0.
std::vector<double> contribution_scores(double alpha0, std::span<const double> pss);

/// PSS and PCS for every player listed in the game. Throws EmptyRoster.
std::vector<PlayerGameEval> player_scores(const FittedModel& model, const GameRecord& game);

}  // namespace tproc
