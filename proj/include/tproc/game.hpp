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
#include <string>
#include <string_view>
#include <vector>

#include "tproc/standardize.hpp"
#include "tproc/tscore.hpp"

namespace tproc {

/// The eight box-score stats the basketball model uses, in coefficient order.
inline constexpr std::array<std::string_view, 8> kBasketballStats = {
    "PTs", "FGM", "3FGM", "OR", "DR", "AS", "TO", "FD"};

/// Reserved stat ids carrying the score paths in team_paths.csv.
inline constexpr std::string_view kScoreFor = "score_for";
inline constexpr std::string_view kScoreAgainst = "score_against";

/// Half-open [lo, hi) slice of game time.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double length() const noexcept { return hi - lo; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

struct OnCourtSpan {
  std::string player_id;
  std::vector<Interval> intervals;

  double total() const noexcept;
  /// Intervals must be non-empty, inside [0, 1] and pairwise disjoint.
  void validate() const;
};

struct PlayerRecord {
  std::string player_id;
  std::vector<StatPath> stats;
  OnCourtSpan span;

  const StatPath* find_stat(std::string_view stat_id) const noexcept;
};

struct GameRecord {
  std::string game_id;
  std::string team_id;
  std::string opponent_id;
  int grid_R = 40;
  std::vector<StatPath> team_stats;
  std::vector<PlayerRecord> players;
  std::vector<double> score_for;
  std::vector<double> score_against;
  ScorePair final_score;

  const StatPath* find_team_stat(std::string_view stat_id) const noexcept;
  /// Throws InvalidInput if the stat is absent.
  const StatPath& team_stat(std::string_view stat_id) const;

  /// Enforces the record invariants (monotone raw paths from 0, players
  /// summing to the team, score paths ending at the declared final). Throws
  /// ConsistencyError naming the game, stat and first offending grid index.
  void validate() const;
};

}  // namespace tproc
