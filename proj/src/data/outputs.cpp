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
#include "tproc/data.hpp"
#include "tproc/decimal.hpp"

namespace tproc {

namespace {

std::string opt(const std::optional<double>& v) { return v ? format_decimal(*v) : std::string(); }

}  // namespace

void write_replay_series(const ProcessPath& path, const IofResult& iof_result, std::ostream& out) {
  const std::vector<std::string> h{"t_index", "t", "a", "b", "mT", "T_star", "PW", "iof"};
  write_csv_row(out, h);
  for (std::size_t r = 0; r < path.size(); ++r) {
    // The flag marks the step that starts at t_r.
    const bool fire = iof_result.contains_step(static_cast<int>(r));
    const std::vector<std::string> row{std::to_string(r),
                                       format_decimal(path.times[r]),
                                       format_decimal(path.score_a.at(r)),
                                       format_decimal(path.score_b.at(r)),
                                       format_decimal(path.mt[r]),
                                       format_decimal(path.t_star.at(r)),
                                       format_decimal(path.pw.at(r)),
                                       fire ? "1" : "0"};
    write_csv_row(out, row);
  }
}

void write_iof_summary_header(std::ostream& out) {
  const std::vector<std::string> h{"game_id",     "theta",       "n_steps",         "steps",   "length",
                                   "increment_sum", "lower_bound", "reversal_time", "epsilon", "pw_drop_time"};
  write_csv_row(out, h);
}

void write_iof_summary_row(const ReplaySummary& s, std::ostream& out) {
  std::string steps;
  for (int r : s.iof.steps) steps += (steps.empty() ? "" : " ") + std::to_string(r);
  const std::vector<std::string> row{s.game_id,
                                     format_decimal(s.theta),
                                     std::to_string(s.iof.steps.size()),
                                     steps,
                                     format_decimal(s.iof.total_length),
                                     format_decimal(s.iof.increment_sum),
                                     format_decimal(s.lower_bound),
                                     opt(s.stops.reversal_time),
                                     format_decimal(s.epsilon),
                                     opt(s.stops.pw_drop_time)};
  write_csv_row(out, row);
}

void write_player_games(std::span<const GameEvaluation> games, std::ostream& out) {
  const std::vector<std::string> h{"game_id", "player_id", "minutes_fraction", "pss",
                                   "pcs",     "x_index",   "x_weighted",       "stats_x"};
  write_csv_row(out, h);
  for (const auto& g : games) {
    for (const auto& p : g.players) {
      const std::vector<std::string> row{g.game_id,
                                         p.player_id,
                                         format_decimal(p.minutes_fraction),
                                         format_decimal(p.pss),
                                         format_decimal(p.pcs),
                                         format_decimal(p.x_index),
                                         format_decimal(p.x_weighted),
                                         format_decimal(p.stats_x)};
      write_csv_row(out, row);
    }
  }
}

void write_player_totals(std::span<const PlayerTotal> totals, std::ostream& out) {
  const std::vector<std::string> h{"player_id", "appearances", "denominator", "mean_pcs", "mean_stats_x", "pts"};
  write_csv_row(out, h);
  for (const auto& t : totals) {
    const std::vector<std::string> row{t.player_id,
                                       std::to_string(t.appearances),
                                       std::to_string(t.denominator),
                                       format_decimal(t.mean_pcs),
                                       format_decimal(t.mean_stats_x),
                                       format_decimal(t.pts)};
    write_csv_row(out, row);
  }
}

}  // namespace tproc
