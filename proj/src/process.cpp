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

#include "tproc/process.hpp"

#include <cmath>

#include "tproc/error.hpp"
#include "tproc/kernels.hpp"
#include "tproc/normal.hpp"

namespace tproc {

namespace {

void check_time(double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw Error(errc::kInvalidInput, "time must lie in [0, 1]");
}

double spread(const MatchContext& ctx, double t) {
  const double var = ctx.model.tau2 + ctx.model.sigma2;
  if (!(var > 0.0)) {
    throw Error(errc::kDegenerateModel, "tau2 + sigma2 is zero; win probability is undefined before t = 1");
  }
  return std::sqrt((1.0 - t) * var);
}

double endpoint(const MatchContext& ctx, ScorePair s) {
  const double t = t_score(ctx.variant(), s);
  const double c = ctx.draw();
  if (t > c) return 1.0;
  if (t < c) return 0.0;
  return 0.5;
}

}  // namespace

double MatchContext::initial_level() const {
  return t_score(model.variant, {model.alpha0, opponent_tfs});
}

void MatchContext::validate() const {
  model.validate();
  if (grid_R < 2) throw Error(errc::kInvalidConfig, "grid_R must be at least 2");
  if (!std::isfinite(opponent_tfs)) throw Error(errc::kInvalidConfig, "opponent TFS must be finite");
}

ProcessPath path_from_levels(std::vector<double> mt) {
  if (mt.size() < 2) throw Error(errc::kInvalidInput, "a path needs at least two grid points");
  ProcessPath p;
  p.times = grid_times(static_cast<int>(mt.size()) - 1);
  p.mt = std::move(mt);
  return p;
}

ProcessPath mt_path(const MatchContext& ctx, const GameRecord& game) {
  if (game.grid_R != ctx.grid_R) {
    throw Error(errc::kGridMismatch, "game '" + game.game_id + "' uses R=" + std::to_string(game.grid_R) +
                                         " but the match context uses R=" + std::to_string(ctx.grid_R));
  }
  ProcessPath path;
  path.times = grid_times(ctx.grid_R);
  path.mt.assign(path.times.size(), ctx.initial_level());
  std::vector<double> standardized(path.times.size());
  for (std::size_t i = 0; i < ctx.model.stat_ids.size(); ++i) {
    const auto& id = ctx.model.stat_ids[i];
    const StatPath& raw = game.team_stat(id);
    if (raw.values.size() != path.times.size()) {
      throw Error(errc::kGridMismatch, "stat '" + id + "' is not on the game grid");
    }
    const StatScale& s = ctx.model.scaler.at(id);
    kernels::standardize(raw.values, path.times, s.m, s.v, standardized);
    kernels::axpy(ctx.model.alpha[i], standardized, path.mt);
  }
  path.score_a = game.score_for;
  path.score_b = game.score_against;
  return path;
}

double t_star_from_level(const MatchContext& ctx, double t, double level) {
  check_time(t);
  return (1.0 - t) * ctx.initial_level() + t * level;
}

double t_star(const MatchContext& ctx, double t, ScorePair s) {
  return t_star_from_level(ctx, t, t_score(ctx.variant(), s));
}

double win_probability_given_t_star(const MatchContext& ctx, double t, double t_star_value) {
  check_time(t);
  if (t >= 1.0) throw Error(errc::kInvalidInput, "closed form needs t < 1");
  const double z = (ctx.draw() - t_star_value) / spread(ctx, t);
  return normal_sf(z);
}

double win_probability(const MatchContext& ctx, double t, ScorePair s) {
  check_time(t);
  if (t == 1.0) return endpoint(ctx, s);
  return win_probability_given_t_star(ctx, t, t_star(ctx, t, s));
}

std::vector<double> pw_sensitivity_given_t_star(const MatchContext& ctx, double t, double t_star_value) {
  check_time(t);
  if (t >= 1.0) throw Error(errc::kInvalidInput, "sensitivity needs t < 1");
  const double s = spread(ctx, t);
  const double density = normal_pdf((ctx.draw() - t_star_value) / s);
  std::vector<double> out;
  out.reserve(ctx.model.alpha.size());
  for (double a : ctx.model.alpha) out.push_back(density * a / s);
  return out;
}

std::vector<double> pw_sensitivity(const MatchContext& ctx, double t, ScorePair s) {
  return pw_sensitivity_given_t_star(ctx, t, t_star(ctx, t, s));
}

void fill_win_probability(const MatchContext& ctx, ProcessPath& path, PwAnchor anchor) {
  const std::size_t n = path.size();
  if (path.score_a.size() != n || path.score_b.size() != n || path.mt.size() != n) {
    throw Error(errc::kGridMismatch, "path series lengths differ");
  }
  path.t_star.resize(n);
  path.pw.resize(n);
  for (std::size_t r = 0; r < n; ++r) {
    const double t = path.times[r];
    const ScorePair s{path.score_a[r], path.score_b[r]};
    const double level = anchor == PwAnchor::RealizedScore ? t_score(ctx.variant(), s) : path.mt[r];
    path.t_star[r] = t_star_from_level(ctx, t, level);
    path.pw[r] = r + 1 == n ? endpoint(ctx, s) : win_probability_given_t_star(ctx, t, path.t_star[r]);
  }
}

ProcessPath replay(const MatchContext& ctx, const GameRecord& game, PwAnchor anchor) {
  ProcessPath path = mt_path(ctx, game);
  fill_win_probability(ctx, path, anchor);
  return path;
}

PredictiveNormal predicted_t_score(const MatchContext& ctx, double t, ScorePair s, double horizon) {
  check_time(t);
  check_time(horizon);
  if (horizon < t) throw Error(errc::kInvalidInput, "horizon precedes the evaluation time");
  return {t_star(ctx, t, s), (horizon - t) * (ctx.model.tau2 + ctx.model.sigma2)};
}

}  // namespace tproc
