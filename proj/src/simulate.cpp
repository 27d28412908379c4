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
#include "tproc/simulate.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <thread>

#include "tproc/error.hpp"
#include "tproc/kernels.hpp"

namespace tproc {

namespace {

constexpr std::size_t kChunk = 4096;
constexpr int kQuarters = 4;

std::size_t grid_bucket(double u, int grid_R) {
  const auto r = static_cast<long>(std::ceil(u * grid_R));
  return static_cast<std::size_t>(std::clamp(r, 1L, static_cast<long>(grid_R)));
}

std::vector<double> cumulate(const std::vector<double>& buckets) {
  std::vector<double> out(buckets.size());
  double acc = 0.0;
  for (std::size_t r = 0; r < buckets.size(); ++r) {
    acc += buckets[r];
    out[r] = acc;
  }
  return out;
}

// Four quarter-long lineups of five. The starters play the odd quarters;
// two starters and three bench players the even ones.
std::array<std::vector<int>, kQuarters> lineups(int roster) {
  std::array<std::vector<int>, kQuarters> out;
  const int bench = roster - 5;
  for (int q = 0; q < kQuarters; ++q) {
    if (q % 2 == 0 || bench <= 0) {
      out[static_cast<std::size_t>(q)] = {0, 1, 2, 3, 4};
    } else {
      out[static_cast<std::size_t>(q)] = {0, 1};
      for (int k = 0; k < 3; ++k) out[static_cast<std::size_t>(q)].push_back(5 + (3 * (q / 2) + k) % bench);
    }
  }
  return out;
}

struct StatBuckets {
  // [stat][player][grid index]
  std::vector<std::vector<std::vector<double>>> v;
};

enum StatIndex : std::size_t { kPts, kFgm, k3fgm, kOr, kDr, kAs, kTo, kFd, kStatCount };

GameRecord draw_game(const LeagueConfig& cfg, const BasketballRates& rates, Rng& rng) {
  const int big_r = cfg.grid_R;
  const auto lu = lineups(cfg.roster);
  const auto n_players = static_cast<std::size_t>(cfg.roster);
  StatBuckets b;
  b.v.assign(kStatCount, std::vector<std::vector<double>>(n_players, std::vector<double>(static_cast<std::size_t>(big_r) + 1, 0.0)));

  auto credit = [&](double u) {
    const auto q = static_cast<std::size_t>(std::min(kQuarters - 1, static_cast<int>(u * kQuarters)));
    const auto& on = lu[q];
    std::vector<double> shares;
    for (int p : on) shares.push_back(1.0 / (1.0 + p));
    return static_cast<std::size_t>(on[rng.categorical(shares)]);
  };

  const std::uint64_t scoring = rng.poisson(rates.scoring_events);
  for (std::uint64_t e = 0; e < scoring; ++e) {
    const double u = rng.uniform_open();
    const auto mark = static_cast<int>(rng.categorical(rates.point_dist)) + 1;
    const std::size_t p = credit(u);
    const std::size_t r = grid_bucket(u, big_r);
    b.v[kPts][p][r] += mark;
    if (mark >= 2) b.v[kFgm][p][r] += 1.0;
    if (mark == 3) b.v[k3fgm][p][r] += 1.0;
  }
  const std::array<std::pair<StatIndex, double>, 5> counts{{{kOr, rates.offensive_rebounds},
                                                            {kDr, rates.defensive_rebounds},
                                                            {kAs, rates.assists},
                                                            {kTo, rates.turnovers},
                                                            {kFd, rates.fouls_drawn}}};
  for (const auto& [stat, mean] : counts) {
    const std::uint64_t n = rng.poisson(mean);
    for (std::uint64_t e = 0; e < n; ++e) {
      const double u = rng.uniform_open();
      b.v[stat][credit(u)][grid_bucket(u, big_r)] += 1.0;
    }
  }

  GameRecord g;
  g.grid_R = big_r;
  const auto times = grid_times(big_r);
  for (std::size_t i = 0; i < kStatCount; ++i) {
    std::vector<double> team(static_cast<std::size_t>(big_r) + 1, 0.0);
    for (std::size_t p = 0; p < n_players; ++p) {
      for (std::size_t r = 0; r < team.size(); ++r) team[r] += b.v[i][p][r];
    }
    g.team_stats.push_back({std::string(kBasketballStats[i]), times, cumulate(team)});
  }
  for (std::size_t p = 0; p < n_players; ++p) {
    PlayerRecord rec;
    rec.player_id = "P" + std::to_string(p + 1);
    if (p + 1 < 10) rec.player_id.insert(1, "0");
    rec.span.player_id = rec.player_id;
    for (int q = 0; q < kQuarters; ++q) {
      const auto& on = lu[static_cast<std::size_t>(q)];
      if (std::find(on.begin(), on.end(), static_cast<int>(p)) == on.end()) continue;
      const double lo = static_cast<double>(q) / kQuarters;
      const double hi = static_cast<double>(q + 1) / kQuarters;
      if (!rec.span.intervals.empty() && rec.span.intervals.back().hi == lo) {
        rec.span.intervals.back().hi = hi;
      } else {
        rec.span.intervals.push_back({lo, hi});
      }
    }
    if (rec.span.intervals.empty()) continue;
    for (std::size_t i = 0; i < kStatCount; ++i) {
      rec.stats.push_back({std::string(kBasketballStats[i]), times, cumulate(b.v[i][p])});
    }
    g.players.push_back(std::move(rec));
  }
  return g;
}

double points_against(const TScoreVariant& variant, double a, double target, bool integer) {
  const double c = draw_benchmark(variant);
  double b = 0.0;
  try {
    b = solve_points_against(variant, a, target);
  } catch (const Error&) {
    b = target > c ? 0.0 : a + 1.0;
  }
  if (!integer) return b;
  b = std::round(b);
  if (target > c && b >= a) b = std::max(0.0, a - 1.0);
  if (target < c && b <= a) b = a + 1.0;
  if (target == c) b = a;
  return b;
}

std::vector<double> against_path(double b, bool integer, int grid_R, Rng& rng) {
  std::vector<double> buckets(static_cast<std::size_t>(grid_R) + 1, 0.0);
  if (integer) {
    for (long k = 0; k < static_cast<long>(b); ++k) buckets[grid_bucket(rng.uniform_open(), grid_R)] += 1.0;
    return cumulate(buckets);
  }
  auto times = grid_times(grid_R);
  for (auto& t : times) t *= b;
  times.back() = b;
  return times;
}

}  // namespace

void ScoringLaw::validate() const {
  if (!(intensity > 0.0) || !std::isfinite(intensity)) throw Error(errc::kInvalidConfig, "intensity must be positive");
  double total = 0.0;
  for (double w : point_dist) {
    if (!(w >= 0.0)) throw Error(errc::kInvalidConfig, "point weights must be non-negative");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12) throw Error(errc::kInvalidConfig, "point weights must sum to 1");
}

double ScoringLaw::mark_mean() const noexcept {
  return point_dist[0] + 2.0 * point_dist[1] + 3.0 * point_dist[2];
}

double ScoringLaw::mark_second_moment() const noexcept {
  return point_dist[0] + 4.0 * point_dist[1] + 9.0 * point_dist[2];
}

StatScale ScoringLaw::final_scale() const noexcept {
  return {intensity * mark_mean(), std::sqrt(intensity * mark_second_moment())};
}

ScoringLaw ScoringLaw::counting(double intensity) { return {intensity, {1.0, 0.0, 0.0}}; }

StatPath simulate_stat_path(const ScoringLaw& law, Rng& rng, int grid_R) {
  law.validate();
  if (grid_R < 1) throw Error(errc::kInvalidConfig, "grid_R must be positive");
  std::vector<double> buckets(static_cast<std::size_t>(grid_R) + 1, 0.0);
  const std::uint64_t n = rng.poisson(law.intensity);
  for (std::uint64_t e = 0; e < n; ++e) {
    const double u = rng.uniform_open();
    buckets[grid_bucket(u, grid_R)] += static_cast<double>(rng.categorical(law.point_dist) + 1);
  }
  return make_grid_path("sim", cumulate(buckets));
}

double simulate_final_value(const ScoringLaw& law, Rng& rng) {
  law.validate();
  const std::uint64_t n = rng.poisson(law.intensity);
  double total = 0.0;
  for (std::uint64_t e = 0; e < n; ++e) total += static_cast<double>(rng.categorical(law.point_dist) + 1);
  return total;
}

void LeagueConfig::validate() const {
  variant.validate();
  if (teams.empty()) throw Error(errc::kInvalidConfig, "league needs at least one team");
  if (games_per_team < 2) throw Error(errc::kInvalidConfig, "games_per_team must be at least 2");
  if (grid_R < 2) throw Error(errc::kInvalidConfig, "grid_R must be at least 2");
  if (roster < 5) throw Error(errc::kInvalidConfig, "roster must hold at least five players");
  for (const auto& t : teams) {
    if (t.alpha.size() != kBasketballStats.size()) {
      throw Error(errc::kInvalidConfig, "team '" + t.team_id + "' needs one coefficient per basketball stat");
    }
    if (!(t.sigma >= 0.0)) throw Error(errc::kInvalidConfig, "sigma must be non-negative");
  }
}

std::vector<GameRecord> simulate_league(const LeagueConfig& cfg, const BasketballRates& rates) {
  cfg.validate();
  std::vector<GameRecord> out;
  const std::size_t n_teams = cfg.teams.size();
  for (std::size_t ti = 0; ti < n_teams; ++ti) {
    const TeamTruth& truth = cfg.teams[ti];
    Rng rng(cfg.seed, ti);
    std::vector<GameRecord> games;
    for (int k = 0; k < cfg.games_per_team; ++k) games.push_back(draw_game(cfg, rates, rng));

    std::vector<StatFinals> finals;
    for (const auto& id : kBasketballStats) {
      StatFinals f{std::string(id), {}};
      for (const auto& g : games) f.values.push_back(g.team_stat(id).final_value());
      finals.push_back(std::move(f));
    }
    const Standardizer scaler = fit_standardizer(finals);

    for (int k = 0; k < cfg.games_per_team; ++k) {
      GameRecord& g = games[static_cast<std::size_t>(k)];
      char idx[16];
      std::snprintf(idx, sizeof idx, "%04d", k + 1);
      g.game_id = truth.team_id + "-" + idx;
      g.team_id = truth.team_id;
      g.opponent_id = n_teams == 1 ? "OPP" : cfg.teams[(ti + 1 + static_cast<std::size_t>(k) % (n_teams - 1)) % n_teams].team_id;
      double target = truth.alpha0;
      for (std::size_t i = 0; i < kBasketballStats.size(); ++i) {
        const auto& id = std::string(kBasketballStats[i]);
        target += truth.alpha[i] * standardize_value(g.team_stat(id).final_value(), 1.0, scaler.at(id));
      }
      target += truth.sigma * rng.normal();
      const double a = g.team_stat("PTs").final_value();
      const double b = points_against(cfg.variant, a, target, cfg.integer_scores);
      g.score_for = g.team_stat("PTs").values;
      g.score_against = against_path(b, cfg.integer_scores, cfg.grid_R, rng);
      g.final_score = {a, b};
      g.validate();
      out.push_back(std::move(g));
    }
  }
  return out;
}

MonteCarloEstimate monte_carlo_pw_given_t_star(const MatchContext& ctx, double t, double t_star_value,
                                               std::size_t n_paths, std::uint64_t seed, unsigned threads) {
  if (!(t >= 0.0 && t < 1.0)) throw Error(errc::kInvalidInput, "Monte Carlo PW needs t in [0, 1)");
  if (n_paths == 0) throw Error(errc::kInvalidInput, "n_paths must be positive");
  const double root = std::sqrt(1.0 - t);
  std::vector<double> weights{ctx.model.sigma2 >= 0.0 ? std::sqrt(ctx.model.sigma2) * root : 0.0};
  for (double a : ctx.model.alpha) weights.push_back(a * root);
  const double c = ctx.draw();

  const std::size_t n_chunks = (n_paths + kChunk - 1) / kChunk;
  std::vector<std::size_t> hits(n_chunks, 0);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    std::vector<double> normals;
    for (std::size_t ci = next++; ci < n_chunks; ci = next++) {
      const std::size_t m = std::min(kChunk, n_paths - ci * kChunk);
      Rng rng(seed, ci);
      normals.resize(weights.size() * m);
      for (double& z : normals) z = rng.normal();
      hits[ci] = kernels::count_weighted_exceed(t_star_value, weights, normals, m, c);
    }
  };
  unsigned n_threads = threads != 0 ? threads : std::max(1u, std::thread::hardware_concurrency());
  n_threads = static_cast<unsigned>(std::min<std::size_t>(n_threads, n_chunks));
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < n_threads; ++i) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();

  std::size_t total = 0;
  for (std::size_t h : hits) total += h;
  const double n = static_cast<double>(n_paths);
  const double p = static_cast<double>(total) / n;
  // Agresti-Coull adjusted proportion.
  const double adj = (static_cast<double>(total) + 2.0) / (n + 4.0);
  return {p, std::sqrt(adj * (1.0 - adj) / n)};
}

MonteCarloEstimate monte_carlo_pw(const MatchContext& ctx, double t, ScorePair s, std::size_t n_paths,
                                  std::uint64_t seed, unsigned threads) {
  return monte_carlo_pw_given_t_star(ctx, t, t_star(ctx, t, s), n_paths, seed, threads);
}

}  // namespace tproc
