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

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "tproc/game.hpp"
#include "tproc/process.hpp"
#include "tproc/rng.hpp"

namespace tproc {

/// Compound Poisson law: Poisson(intensity) events over a game, each carrying
/// 1, 2 or 3 points with the given weights.
struct ScoringLaw {
  double intensity = 1.0;
  std::array<double, 3> point_dist{0.0, 1.0, 0.0};

  void validate() const;
  double mark_mean() const noexcept;
  double mark_second_moment() const noexcept;
  /// Exact (m, v) of the final value: m = lambda E[X], v^2 = lambda E[X^2].
  StatScale final_scale() const noexcept;
  static ScoringLaw counting(double intensity);
};

/// Event times are i.i.d. uniform given a Poisson count, so the count
/// marginal is exact at any intensity.
StatPath simulate_stat_path(const ScoringLaw& law, Rng& rng, int grid_R);

/// Final value only (no grid), for large replication counts.
double simulate_final_value(const ScoringLaw& law, Rng& rng);

/// One team's generating truth. alpha follows kBasketballStats order.
struct TeamTruth {
  std::string team_id;
  double alpha0 = 1.0;
  std::vector<double> alpha;
  double sigma = 0.05;
};

struct LeagueConfig {
  std::vector<TeamTruth> teams;
  int games_per_team = 60;
  int grid_R = 40;
  int roster = 10;
  TScoreVariant variant;
  /// Round points against to integers. Off, the realized T-scores equal the
  /// generating equation to rounding error.
  bool integer_scores = true;
  std::uint64_t seed = 0;

  void validate() const;
};

/// Rates of the basketball stats in a simulated game.
struct BasketballRates {
  double scoring_events = 45.0;
  std::array<double, 3> point_dist{0.20, 0.55, 0.25};
  double offensive_rebounds = 10.0;
  double defensive_rebounds = 25.0;
  double assists = 18.0;
  double turnovers = 12.0;
  double fouls_drawn = 19.0;
};

/// Games from each team's perspective. Per team: raw stat paths are drawn,
/// the team's scaler is fitted on them, T-scores follow
///   T = alpha0 + sum_i alpha_i S_i(1) + sigma Z,
/// and points against are solved from T with points for = PTs. Stat events
/// are credited to on-court players by fixed shares, so player paths sum to
/// the team path at every grid point. Opponents cycle round-robin.
std::vector<GameRecord> simulate_league(const LeagueConfig& config, const BasketballRates& rates = {});

struct MonteCarloEstimate {
  double estimate = 0.0;
  /// Binomial standard error at the Agresti-Coull proportion (x + 2) / (n + 4).
  double std_error = 0.0;
};

/// Fraction of sampled pT(1 | t) above the draw value, with
///   pT(1 | t) = T_* + sqrt(1 - t) (sigma Z_0 + sum_i alpha_i Z_i).
/// Paths are drawn in fixed chunks, each from its own (seed, chunk) stream,
/// so the result does not depend on the number of worker threads.
MonteCarloEstimate monte_carlo_pw(const MatchContext& ctx, double t, ScorePair s, std::size_t n_paths,
                                  std::uint64_t seed, unsigned threads = 0);
MonteCarloEstimate monte_carlo_pw_given_t_star(const MatchContext& ctx, double t, double t_star_value,
                                               std::size_t n_paths, std::uint64_t seed, unsigned threads = 0);

}  // namespace tproc
