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

#include "tproc/game.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "tproc/error.hpp"

namespace tproc {

namespace {

[[noreturn]] void inconsistent(const GameRecord& g, std::string_view what, std::size_t r) {
  throw Error(errc::kConsistencyError, "game '" + g.game_id + "' " + std::string(what) +
                                           " at grid index " + std::to_string(r));
}

void check_raw_path(const GameRecord& g, std::span<const double> values, std::string_view label) {
  const auto expected = static_cast<std::size_t>(g.grid_R) + 1;
  if (values.size() != expected) {
    throw Error(errc::kConsistencyError, "game '" + g.game_id + "' " + std::string(label) +
                                             " has " + std::to_string(values.size()) +
                                             " grid points, expected " + std::to_string(expected));
  }
  if (values[0] != 0.0) inconsistent(g, std::string(label) + " does not start at 0", 0);
  for (std::size_t r = 0; r < values.size(); ++r) {
    if (!std::isfinite(values[r]) || values[r] < 0.0) {
      inconsistent(g, std::string(label) + " is negative or non-finite", r);
    }
    if (r > 0 && values[r] < values[r - 1]) {
      inconsistent(g, std::string(label) + " decreases", r);
    }
  }
}

bool sums_match(double team, double players, bool integral) {
  if (integral) return team == players;
  return std::abs(team - players) <= 1e-9 * std::max(1.0, std::abs(team));
}

}  // namespace

double OnCourtSpan::total() const noexcept {
  double sum = 0.0;
  for (const auto& iv : intervals) sum += iv.length();
  return sum;
}

void OnCourtSpan::validate() const {
  std::vector<Interval> sorted = intervals;
  std::sort(sorted.begin(), sorted.end(), [](const Interval& x, const Interval& y) { return x.lo < y.lo; });
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const auto& iv = sorted[i];
    if (!(iv.lo >= 0.0) || !(iv.hi <= 1.0) || !(iv.lo < iv.hi)) {
      throw Error(errc::kConsistencyError,
                  "player '" + player_id + "' has an on-court interval outside [0,1] or empty");
    }
    if (i > 0 && sorted[i - 1].hi > iv.lo) {
      throw Error(errc::kConsistencyError, "player '" + player_id + "' has overlapping on-court intervals");
    }
  }
}

const StatPath* PlayerRecord::find_stat(std::string_view stat_id) const noexcept {
  for (const auto& s : stats) {
    if (s.stat_id == stat_id) return &s;
  }
  return nullptr;
}

const StatPath* GameRecord::find_team_stat(std::string_view stat_id) const noexcept {
  for (const auto& s : team_stats) {
    if (s.stat_id == stat_id) return &s;
  }
  return nullptr;
}

const StatPath& GameRecord::team_stat(std::string_view stat_id) const {
  if (const auto* p = find_team_stat(stat_id)) return *p;
  throw Error(errc::kInvalidInput, "game '" + game_id + "' has no stat '" + std::string(stat_id) + "'");
}

void GameRecord::validate() const {
  if (grid_R < 2) throw Error(errc::kConsistencyError, "game '" + game_id + "' needs grid_R >= 2");
  if (!(final_score.a >= 0.0) || !(final_score.b >= 0.0)) {
    throw Error(errc::kConsistencyError, "game '" + game_id + "' has a negative final score");
  }
  std::set<std::string> seen;
  for (const auto& s : team_stats) {
    if (!seen.insert(s.stat_id).second) {
      throw Error(errc::kConsistencyError, "game '" + game_id + "' repeats stat '" + s.stat_id + "'");
    }
    check_raw_path(*this, s.values, "stat '" + s.stat_id + "'");
  }
  check_raw_path(*this, score_for, kScoreFor);
  check_raw_path(*this, score_against, kScoreAgainst);
  if (score_for.back() != final_score.a) {
    inconsistent(*this, "score_for does not match the declared final", score_for.size() - 1);
  }
  if (score_against.back() != final_score.b) {
    inconsistent(*this, "score_against does not match the declared final", score_against.size() - 1);
  }

  if (players.empty()) return;

  std::set<std::string> ids;
  for (const auto& p : players) {
    if (!ids.insert(p.player_id).second) {
      throw Error(errc::kConsistencyError, "game '" + game_id + "' repeats player '" + p.player_id + "'");
    }
    p.span.validate();
    for (const auto& s : p.stats) {
      if (find_team_stat(s.stat_id) == nullptr) {
        throw Error(errc::kConsistencyError, "game '" + game_id + "' player '" + p.player_id +
                                                 "' has stat '" + s.stat_id + "' missing at team level");
      }
      check_raw_path(*this, s.values, "player '" + p.player_id + "' stat '" + s.stat_id + "'");
    }
  }

  for (const auto& team : team_stats) {
    const std::size_t n = team.values.size();
    std::vector<double> sum(n, 0.0);
    bool integral = std::all_of(team.values.begin(), team.values.end(),
                                [](double x) { return x == std::floor(x); });
    for (const auto& p : players) {
      if (const auto* s = p.find_stat(team.stat_id)) {
        for (std::size_t r = 0; r < n; ++r) {
          sum[r] += s->values[r];
          integral = integral && s->values[r] == std::floor(s->values[r]);
        }
      }
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (!sums_match(team.values[r], sum[r], integral)) {
        inconsistent(*this, "player totals for stat '" + team.stat_id + "' differ from the team value", r);
      }
    }
  }
}

}  // namespace tproc
