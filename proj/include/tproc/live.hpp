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

#include <cstdint>
#include <map>
#include <mutex>
#include <set>
#include <string>
#include <vector>

#include "tproc/flow.hpp"
#include "tproc/process.hpp"

namespace tproc {

enum class EventType {
  ScoreFor,      // points in {1, 2, 3}: PTs += p, FGM += 1 for 2 and 3, 3FGM += 1 for 3
  ScoreAgainst,  // points in {1, 2, 3}
  RebDef,
  RebOff,
  Assist,
  Turnover,
  FoulDrawn,
  Stat,          // direct adjustment of one stat by a real amount (feed corrections)
  SubIn,
  SubOut,
  Tick,          // close the current grid step
  Undo,
};

std::string_view event_name(EventType type) noexcept;
EventType parse_event_type(std::string_view name);

struct LiveEvent {
  EventType type = EventType::Tick;
  int points = 0;
  std::string player;
  std::string stat_id;
  double amount = 0.0;
};

struct LiveConfig {
  FittedModel model;
  double opponent_tfs = 1.0;
  int grid_R = 40;
  double theta = 0.0;    // IoF threshold applied as the game runs
  double epsilon = 0.1;  // PW drop alert level
  PwAnchor anchor = PwAnchor::RealizedScore;

  void validate() const;
};

/// Everything known at the current grid step. path holds the recorded grid
/// points t_0..t_r; events since the last TICK accumulate into stats and the
/// score but are not on the path until the next TICK.
struct LiveGameState {
  std::uint64_t seq = 0;
  int r = 0;
  double a = 0.0;
  double b = 0.0;
  std::map<std::string, double> stats;
  std::set<std::string> on_court;
  ProcessPath path;
  /// dPW/dS_i at each recorded point; empty at t = 1.
  std::vector<std::vector<double>> sensitivity;
  std::vector<int> iof_steps;
  std::size_t events = 0;

  double t() const noexcept;
  friend bool operator==(const LiveGameState&, const LiveGameState&) = default;
};

/// Event-sourced session: the state is always fold(initial, log), so UNDO
/// drops the last logged event and refolds, which is exact.
class LiveSession {
 public:
  explicit LiveSession(LiveConfig config);

  /// Applies one event and returns the new state. Rejected events leave the
  /// state untouched. Errors: IllegalSub, ClockExhausted, NothingToUndo,
  /// InvalidInput.
  LiveGameState apply(const LiveEvent& event);
  LiveGameState snapshot() const;
  const LiveConfig& config() const noexcept { return config_; }
  const MatchContext& context() const noexcept { return ctx_; }

 private:
  LiveGameState fold() const;

  LiveConfig config_;
  MatchContext ctx_;
  mutable std::mutex mu_;
  std::vector<LiveEvent> log_;
  LiveGameState state_;
  std::uint64_t seq_ = 0;
};

/// Events that reproduce a recorded game on its grid: per step, the score
/// changes as SCORE_FOR/SCORE_AGAINST of 1 to 3 points, stat residuals as
/// STAT adjustments, then a TICK.
std::vector<LiveEvent> events_from_game(const GameRecord& game, const std::vector<std::string>& stat_ids);

}  // namespace tproc
