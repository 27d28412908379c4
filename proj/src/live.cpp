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
#include "tproc/live.hpp"

#include <array>
#include <cmath>

#include "tproc/error.hpp"

namespace tproc {

namespace {

constexpr std::array<std::pair<EventType, std::string_view>, 12> kEventNames{{
    {EventType::ScoreFor, "SCORE_FOR"},
    {EventType::ScoreAgainst, "SCORE_AGAINST"},
    {EventType::RebDef, "REB_DEF"},
    {EventType::RebOff, "REB_OFF"},
    {EventType::Assist, "ASSIST"},
    {EventType::Turnover, "TURNOVER"},
    {EventType::FoulDrawn, "FOUL_DRAWN"},
    {EventType::Stat, "STAT"},
    {EventType::SubIn, "SUB_IN"},
    {EventType::SubOut, "SUB_OUT"},
    {EventType::Tick, "TICK"},
    {EventType::Undo, "UNDO"},
}};

int checked_points(const LiveEvent& e) {
  if (e.points < 1 || e.points > 3) {
    throw Error(errc::kInvalidInput, std::string(event_name(e.type)) + " needs points in {1, 2, 3}");
  }
  return e.points;
}

void bump(LiveGameState& s, const std::string& stat, double amount) {
  auto it = s.stats.find(stat);
  if (it == s.stats.end()) throw Error(errc::kInvalidInput, "unknown stat '" + stat + "'");
  it->second += amount;
}

}  // namespace

std::string_view event_name(EventType type) noexcept {
  for (const auto& [t, name] : kEventNames) {
    if (t == type) return name;
  }
  return "UNKNOWN";
}

EventType parse_event_type(std::string_view name) {
  for (const auto& [t, n] : kEventNames) {
    if (n == name) return t;
  }
  throw Error(errc::kInvalidInput, "unknown event type '" + std::string(name) + "'");
}

void LiveConfig::validate() const {
  model.validate();
  if (grid_R < 2) throw Error(errc::kInvalidConfig, "grid_R must be at least 2");
  if (!std::isfinite(opponent_tfs)) throw Error(errc::kInvalidConfig, "opponent TFS must be finite");
  if (!std::isfinite(theta)) throw Error(errc::kInvalidConfig, "theta must be finite");
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) throw Error(errc::kInvalidConfig, "epsilon must lie in [0, 1]");
}

double LiveGameState::t() const noexcept { return path.times.empty() ? 0.0 : path.times.back(); }

namespace {

struct Folder {
  const LiveConfig& cfg;
  const MatchContext& ctx;
  std::vector<double> grid;

  LiveGameState initial() const {
    LiveGameState s;
    for (const auto& id : kBasketballStats) s.stats.emplace(std::string(id), 0.0);
    for (const auto& id : cfg.model.stat_ids) s.stats.emplace(id, 0.0);
    record(s);
    return s;
  }

  // Same operation order as mt_path (standardize, then axpy onto T0) so live
  // and batch levels agree bit-for-bit.
  void record(LiveGameState& s) const {
    const auto r = static_cast<std::size_t>(s.r);
    const double t = grid[r];
    double mt = ctx.initial_level();
    for (std::size_t i = 0; i < cfg.model.stat_ids.size(); ++i) {
      const auto& id = cfg.model.stat_ids[i];
      const StatScale& sc = cfg.model.scaler.at(id);
      const double z = (s.stats.at(id) - sc.m * t) / sc.v;
      mt += cfg.model.alpha[i] * z;
    }
    const ScorePair score{s.a, s.b};
    const double level = cfg.anchor == PwAnchor::RealizedScore ? t_score(ctx.variant(), score) : mt;
    const double ts = t_star_from_level(ctx, t, level);
    const bool last = s.r == cfg.grid_R;
    s.path.times.push_back(t);
    s.path.mt.push_back(mt);
    s.path.t_star.push_back(ts);
    s.path.pw.push_back(last ? win_probability(ctx, 1.0, score) : win_probability_given_t_star(ctx, t, ts));
    s.path.score_a.push_back(s.a);
    s.path.score_b.push_back(s.b);
    s.sensitivity.push_back(last ? std::vector<double>{} : pw_sensitivity_given_t_star(ctx, t, ts));
    if (r > 0 && s.path.mt[r] - s.path.mt[r - 1] > cfg.theta) s.iof_steps.push_back(s.r - 1);
  }

  void apply(LiveGameState& s, const LiveEvent& e) const {
    if (s.r >= cfg.grid_R) throw Error(errc::kClockExhausted, "the game clock has reached t = 1");
    switch (e.type) {
      case EventType::ScoreFor: {
        const int p = checked_points(e);
        s.a += p;
        bump(s, "PTs", p);
        if (p >= 2) bump(s, "FGM", 1.0);
        if (p == 3) bump(s, "3FGM", 1.0);
        break;
      }
      case EventType::ScoreAgainst:
        s.b += checked_points(e);
        break;
      case EventType::RebDef:
        bump(s, "DR", 1.0);
        break;
      case EventType::RebOff:
        bump(s, "OR", 1.0);
        break;
      case EventType::Assist:
        bump(s, "AS", 1.0);
        break;
      case EventType::Turnover:
        bump(s, "TO", 1.0);
        break;
      case EventType::FoulDrawn:
        bump(s, "FD", 1.0);
        break;
      case EventType::Stat: {
        if (!std::isfinite(e.amount)) throw Error(errc::kInvalidInput, "STAT amount must be finite");
        auto it = s.stats.find(e.stat_id);
        if (it == s.stats.end()) throw Error(errc::kInvalidInput, "unknown stat '" + e.stat_id + "'");
        if (it->second + e.amount < 0.0) {
          throw Error(errc::kInvalidInput, "STAT would make '" + e.stat_id + "' negative");
        }
        it->second += e.amount;
        break;
      }
      case EventType::SubIn:
        if (e.player.empty()) throw Error(errc::kInvalidInput, "SUB_IN needs a player");
        if (!s.on_court.insert(e.player).second) {
          throw Error(errc::kIllegalSub, "player '" + e.player + "' is already on court");
        }
        break;
      case EventType::SubOut:
        if (e.player.empty()) throw Error(errc::kInvalidInput, "SUB_OUT needs a player");
        if (s.on_court.erase(e.player) == 0) {
          throw Error(errc::kIllegalSub, "player '" + e.player + "' is not on court");
        }
        break;
      case EventType::Tick:
        s.r += 1;
        record(s);
        break;
      case EventType::Undo:
        throw Error(errc::kInvalidInput, "UNDO is not a loggable event");
    }
  }
};

}  // namespace

LiveSession::LiveSession(LiveConfig config) : config_(std::move(config)) {
  config_.validate();
  ctx_ = MatchContext{config_.model, config_.opponent_tfs, config_.grid_R};
  state_ = fold();
}

LiveGameState LiveSession::fold() const {
  const Folder f{config_, ctx_, grid_times(config_.grid_R)};
  LiveGameState s = f.initial();
  for (const auto& e : log_) f.apply(s, e);
  s.events = log_.size();
  return s;
}

LiveGameState LiveSession::apply(const LiveEvent& event) {
  std::lock_guard lock(mu_);
  if (event.type == EventType::Undo) {
    if (log_.empty()) throw Error(errc::kNothingToUndo, "no event to undo");
    log_.pop_back();
    state_ = fold();
  } else {
    const Folder f{config_, ctx_, grid_times(config_.grid_R)};
    LiveGameState next = state_;
    f.apply(next, event);
    log_.push_back(event);
    next.events = log_.size();
    state_ = std::move(next);
  }
  state_.seq = ++seq_;
  return state_;
}

LiveGameState LiveSession::snapshot() const {
  std::lock_guard lock(mu_);
  return state_;
}

std::vector<LiveEvent> events_from_game(const GameRecord& game, const std::vector<std::string>& stat_ids) {
  std::vector<LiveEvent> out;
  std::map<std::string, double> live;
  for (const auto& id : kBasketballStats) live[std::string(id)] = 0.0;
  for (const auto& id : stat_ids) live[id] = 0.0;

  auto scores = [&](double delta, EventType type) {
    if (delta != std::floor(delta) || delta < 0.0) {
      throw Error(errc::kInvalidInput, "game '" + game.game_id + "' has a non-integer score step");
    }
    auto left = static_cast<long>(delta);
    while (left > 0) {
      const int p = static_cast<int>(std::min(3L, left));
      out.push_back({type, p, {}, {}, 0.0});
      if (type == EventType::ScoreFor) {
        live["PTs"] += p;
        if (p >= 2) live["FGM"] += 1.0;
        if (p == 3) live["3FGM"] += 1.0;
      }
      left -= p;
    }
  };

  for (int r = 1; r <= game.grid_R; ++r) {
    const auto i = static_cast<std::size_t>(r);
    scores(game.score_for[i] - game.score_for[i - 1], EventType::ScoreFor);
    scores(game.score_against[i] - game.score_against[i - 1], EventType::ScoreAgainst);
    for (const auto& id : stat_ids) {
      const double target = game.team_stat(id).values[i];
      const double delta = target - live[id];
      if (delta != 0.0) {
        out.push_back({EventType::Stat, 0, {}, id, delta});
        live[id] += delta;
      }
    }
    out.push_back({EventType::Tick, 0, {}, {}, 0.0});
  }
  return out;
}

}  // namespace tproc
