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
#include <CLI11.hpp>
#include <csignal>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "tproc/data.hpp"
#include "tproc/decimal.hpp"
#include "tproc/error.hpp"
#include "tproc/flow.hpp"
#include "tproc/model.hpp"
#include "tproc/process.hpp"
#include "tproc/service.hpp"
#include "tproc/simulate.hpp"

namespace fs = std::filesystem;
using namespace tproc;

namespace {

struct ThresholdOpts {
  std::string theta;
  int k_target = 4;
};

struct OpponentOpts {
  std::string opponent_tfs;
  std::string tfs_table;
};

double parse_number(const std::string& s, const char* what) {
  try {
    return parse_decimal(s);
  } catch (const Error&) {
    throw Error(errc::kInvalidConfig, std::string(what) + " is not a number: '" + s + "'");
  }
}

PwAnchor parse_anchor(const std::string& s) {
  if (s == "score") return PwAnchor::RealizedScore;
  if (s == "mt") return PwAnchor::ModifiedProcess;
  throw Error(errc::kInvalidConfig, "--pw-anchor must be 'score' or 'mt'");
}

StatsXTransform parse_h(const std::string& s) {
  if (s == "linear-theta") return StatsXTransform::linear_game_theta();
  if (s == "zero") return StatsXTransform::zero();
  if (s.rfind("linear:", 0) == 0) return StatsXTransform::linear(parse_number(s.substr(7), "--stats-x slope"));
  throw Error(errc::kInvalidConfig, "--stats-x must be linear-theta, zero or linear:<slope>");
}

PtsDenominator parse_denominator(const std::string& s) {
  if (s == "all_games") return PtsDenominator::AllGames;
  if (s == "appearances") return PtsDenominator::Appearances;
  throw Error(errc::kInvalidConfig, "--pts-denominator must be all_games or appearances");
}

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

class OpponentLookup {
 public:
  explicit OpponentLookup(const OpponentOpts& o) {
    if (o.opponent_tfs.empty() == o.tfs_table.empty()) {
      throw Error(errc::kInvalidConfig, "give exactly one of --opponent-tfs and --tfs-table");
    }
    if (!o.opponent_tfs.empty()) {
      fixed_ = parse_number(o.opponent_tfs, "--opponent-tfs");
    } else {
      table_ = load_tfs_table(o.tfs_table);
    }
  }

  double operator()(const GameRecord& g) const {
    if (fixed_) return *fixed_;
    auto it = table_.find(g.opponent_id);
    if (it == table_.end()) {
      throw Error(errc::kNotFound, "no TFS for opponent '" + g.opponent_id + "' of game '" + g.game_id + "'");
    }
    return it->second;
  }

 private:
  std::optional<double> fixed_;
  std::map<std::string, double> table_;
};

double threshold_for(const ThresholdOpts& o, const ProcessPath& path) {
  if (!o.theta.empty()) return parse_number(o.theta, "--theta");
  return select_delta(path, o.k_target);
}

std::vector<GameRecord> select_games(std::vector<GameRecord> games, const std::string& only) {
  if (only.empty()) return games;
  std::vector<GameRecord> out;
  for (auto& g : games) {
    if (g.game_id == only) out.push_back(std::move(g));
  }
  if (out.empty()) throw Error(errc::kNotFound, "no game '" + only + "' in the bundle");
  return out;
}

std::ofstream open_out(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(errc::kIoError, "cannot write '" + path.string() + "'");
  return out;
}

// ---- fit -------------------------------------------------------------------

struct FitOpts {
  std::string games;
  std::string out;
  std::string team;
  std::string variant = "symratio";
  std::string stats;
  std::string tfs_out;
};

int run_fit(const FitOpts& o) {
  const TScoreVariant variant = parse_variant(o.variant);
  std::vector<std::string> stats = split_csv(o.stats);
  if (stats.empty()) {
    for (const auto& s : kBasketballStats) stats.emplace_back(s);
  }
  const auto games = load_game_bundle(o.games);
  std::map<std::string, std::vector<GameRecord>> by_team;
  for (const auto& g : games) by_team[g.team_id].push_back(g);

  std::map<std::string, double> tfs;
  if (o.team == "all") {
    for (const auto& [team, list] : by_team) {
      const FittedModel m = fit(list, variant, stats);
      save_model(m, fs::path(o.out) / ((team.empty() ? std::string("team") : team) + ".json"));
      tfs[team] = m.alpha0;
    }
  } else {
    std::string team = o.team;
    if (team.empty()) {
      if (by_team.size() != 1) throw Error(errc::kInvalidConfig, "bundle holds several teams; pass --team <id> or --team all");
      team = by_team.begin()->first;
    }
    auto it = by_team.find(team);
    if (it == by_team.end()) throw Error(errc::kNotFound, "no games for team '" + team + "'");
    const FittedModel m = fit(it->second, variant, stats);
    save_model(m, o.out);
    tfs[team] = m.alpha0;
  }
  if (!o.tfs_out.empty()) {
    auto out = open_out(o.tfs_out);
    write_tfs_table(tfs, out);
  }
  return 0;
}

// ---- replay ----------------------------------------------------------------

struct ReplayOpts {
  std::string games;
  std::string model;
  std::string out;
  std::string game;
  std::string anchor = "score";
  std::string epsilon = "0.1";
  ThresholdOpts threshold;
  OpponentOpts opponent;
};

int run_replay(const ReplayOpts& o) {
  const FittedModel model = load_model(o.model);
  const OpponentLookup opponent(o.opponent);
  const PwAnchor anchor = parse_anchor(o.anchor);
  const double epsilon = parse_number(o.epsilon, "--epsilon");
  const auto games = select_games(load_game_bundle(o.games), o.game);
  const fs::path out_dir(o.out);
  fs::create_directories(out_dir);
  auto summary = open_out(out_dir / "iof_summary.csv");
  write_iof_summary_header(summary);
  for (const auto& g : games) {
    const MatchContext ctx{model, opponent(g), g.grid_R};
    ctx.validate();
    const ProcessPath path = replay(ctx, g, anchor);
    const double theta = threshold_for(o.threshold, path);
    ReplaySummary s;
    s.game_id = g.game_id;
    s.theta = theta;
    s.iof = iof(path, theta);
    s.lower_bound = iof_lower_bound(path, s.iof);
    s.epsilon = epsilon;
    s.stops = stopping_times(path, theta, epsilon);
    auto series = open_out(out_dir / (g.game_id + ".csv"));
    write_replay_series(path, s.iof, series);
    write_iof_summary_row(s, summary);
  }
  return 0;
}

// ---- evaluate --------------------------------------------------------------

struct EvaluateOpts {
  std::string games;
  std::string model;
  std::string out;
  std::string h = "linear-theta";
  std::string denominator = "all_games";
  std::string anchor = "score";
  ThresholdOpts threshold;
  OpponentOpts opponent;
};

int run_evaluate(const EvaluateOpts& o) {
  const FittedModel model = load_model(o.model);
  const OpponentLookup opponent(o.opponent);
  const StatsXTransform h = parse_h(o.h);
  const PtsDenominator denom = parse_denominator(o.denominator);
  const auto games = load_game_bundle(o.games);
  std::vector<GameEvaluation> evals;
  for (const auto& g : games) {
    const MatchContext ctx{model, opponent(g), g.grid_R};
    ctx.validate();
    const ProcessPath path = replay(ctx, g, parse_anchor(o.anchor));
    const IofResult fire = iof(path, threshold_for(o.threshold, path));
    GameEvaluation e{g.game_id, fire.threshold_theta, player_scores(model, g)};
    apply_flow(e, g, fire, h);
    evals.push_back(std::move(e));
  }
  const fs::path out_dir(o.out);
  auto pg = open_out(out_dir / "player_games.csv");
  write_player_games(evals, pg);
  auto pt = open_out(out_dir / "player_totals.csv");
  write_player_totals(player_totals(evals, h, denom), pt);
  return 0;
}

// ---- simulate --------------------------------------------------------------

struct SimulateOpts {
  std::uint64_t seed = 0;
  std::string lambda = "45";
  int games = 60;
  int teams = 4;
  int grid_R = 40;
  std::string sigma = "0.05";
  std::string variant = "symratio";
  std::string out;
};

int run_simulate(const SimulateOpts& o) {
  if (o.teams < 1) throw Error(errc::kInvalidConfig, "--teams must be positive");
  LeagueConfig cfg;
  cfg.games_per_team = o.games;
  cfg.grid_R = o.grid_R;
  cfg.seed = o.seed;
  cfg.variant = parse_variant(o.variant);
  const double sigma = parse_number(o.sigma, "--sigma");
  const std::vector<double> alpha{0.06, 0.0, 0.02, 0.01, 0.056, 0.015, -0.03, 0.01};
  for (int k = 0; k < o.teams; ++k) {
    const double spread = o.teams == 1 ? 0.0 : static_cast<double>(k) / (o.teams - 1);
    cfg.teams.push_back({"T" + std::to_string(k + 1), 1.14 - 0.27 * spread, alpha, sigma});
  }
  BasketballRates rates;
  rates.scoring_events = parse_number(o.lambda, "--lambda");
  if (!(rates.scoring_events > 0.0)) throw Error(errc::kInvalidConfig, "--lambda must be positive");
  const auto games = simulate_league(cfg, rates);

  const fs::path out_dir(o.out);
  save_game_bundle(games, out_dir);
  nlohmann::ordered_json truth;
  truth["seed"] = std::to_string(o.seed);
  truth["variant"] = format_variant(cfg.variant);
  truth["scoring_events"] = format_decimal(rates.scoring_events);
  auto& teams = truth["teams"] = nlohmann::ordered_json::array();
  std::map<std::string, double> tfs;
  for (const auto& t : cfg.teams) {
    nlohmann::ordered_json a = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < t.alpha.size(); ++i) a[std::string(kBasketballStats[i])] = format_decimal(t.alpha[i]);
    teams.push_back({{"team_id", t.team_id},
                     {"alpha0", format_decimal(t.alpha0)},
                     {"sigma", format_decimal(t.sigma)},
                     {"alpha", a}});
    tfs[t.team_id] = t.alpha0;
  }
  write_text_file(out_dir / "truth.json", truth.dump(2) + "\n");
  auto tfs_out = open_out(out_dir / "tfs_truth.csv");
  write_tfs_table(tfs, tfs_out);
  return 0;
}

// ---- serve -----------------------------------------------------------------

struct ServeOpts {
  std::vector<std::string> models;
  std::string host = "127.0.0.1";
  int port = 8080;
};

Service* g_service = nullptr;

int run_serve(const ServeOpts& o) {
  std::map<std::string, FittedModel> models;
  for (const auto& spec : o.models) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos) throw Error(errc::kInvalidConfig, "--model expects name=path");
    models.emplace(spec.substr(0, eq), load_model(spec.substr(eq + 1)));
  }
  Service service(std::move(models));
  g_service = &service;
  std::signal(SIGINT, [](int) {
    if (g_service != nullptr) g_service->stop();
  });
  std::signal(SIGTERM, [](int) {
    if (g_service != nullptr) g_service->stop();
  });
  int port = o.port;
  if (port == 0) {
    port = service.bind_to_any_port(o.host);
    if (port < 0) throw Error(errc::kIoError, "cannot bind " + o.host);
  }
  std::cout << "listening on " << o.host << ":" << port << std::endl;
  const bool ok = o.port == 0 ? service.listen_after_bind() : service.listen(o.host, port);
  g_service = nullptr;
  if (!ok) throw Error(errc::kIoError, "cannot listen on " + o.host + ":" + std::to_string(port));
  return 0;
}

void add_threshold(CLI::App* cmd, ThresholdOpts& t) {
  cmd->add_option("--theta", t.theta, "IoF per-step threshold (default: select from the path)");
  cmd->add_option("--k", t.k_target, "rank used by threshold selection")->check(CLI::PositiveNumber);
}

void add_opponent(CLI::App* cmd, OpponentOpts& o) {
  cmd->add_option("--opponent-tfs", o.opponent_tfs, "opponent TFS for every game");
  cmd->add_option("--tfs-table", o.tfs_table, "CSV of team_id,tfs looked up by opponent_id");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"T-score / T-process toolkit"};
  app.require_subcommand(1);

  FitOpts fit_o;
  auto* fit_cmd = app.add_subcommand("fit", "fit a team model from a game bundle");
  fit_cmd->add_option("--games", fit_o.games, "game bundle directory")->required();
  fit_cmd->add_option("--out", fit_o.out, "model file (directory with --team all)")->required();
  fit_cmd->add_option("--team", fit_o.team, "team id, or 'all'");
  fit_cmd->add_option("--variant", fit_o.variant, "diff|symratio|logratio|reldiff|normalized[:kappa=x]");
  fit_cmd->add_option("--stats", fit_o.stats, "comma-separated stat ids");
  fit_cmd->add_option("--tfs-out", fit_o.tfs_out, "write fitted TFS per team");

  ReplayOpts rep_o;
  auto* rep_cmd = app.add_subcommand("replay", "replay games: mT, T*, PW and IoF");
  rep_cmd->add_option("--games", rep_o.games)->required();
  rep_cmd->add_option("--model", rep_o.model)->required();
  rep_cmd->add_option("--out", rep_o.out)->required();
  rep_cmd->add_option("--game", rep_o.game, "only this game id");
  rep_cmd->add_option("--pw-anchor", rep_o.anchor, "score (T(a,b)) or mt");
  rep_cmd->add_option("--epsilon", rep_o.epsilon, "PW drop level");
  add_threshold(rep_cmd, rep_o.threshold);
  add_opponent(rep_cmd, rep_o.opponent);

  EvaluateOpts ev_o;
  auto* ev_cmd = app.add_subcommand("evaluate", "player PSS, PCS, X-index, STATS X and PTS");
  ev_cmd->add_option("--games", ev_o.games)->required();
  ev_cmd->add_option("--model", ev_o.model)->required();
  ev_cmd->add_option("--out", ev_o.out)->required();
  ev_cmd->add_option("--stats-x", ev_o.h, "linear-theta|zero|linear:<slope>");
  ev_cmd->add_option("--pts-denominator", ev_o.denominator, "all_games|appearances");
  ev_cmd->add_option("--pw-anchor", ev_o.anchor, "score or mt");
  add_threshold(ev_cmd, ev_o.threshold);
  add_opponent(ev_cmd, ev_o.opponent);

  SimulateOpts sim_o;
  auto* sim_cmd = app.add_subcommand("simulate", "write a synthetic league bundle");
  sim_cmd->add_option("--seed", sim_o.seed);
  sim_cmd->add_option("--lambda", sim_o.lambda, "scoring events per game");
  sim_cmd->add_option("--games", sim_o.games, "games per team");
  sim_cmd->add_option("--teams", sim_o.teams);
  sim_cmd->add_option("--grid-R", sim_o.grid_R);
  sim_cmd->add_option("--sigma", sim_o.sigma);
  sim_cmd->add_option("--variant", sim_o.variant);
  sim_cmd->add_option("--out", sim_o.out)->required();

  ServeOpts srv_o;
  auto* srv_cmd = app.add_subcommand("serve", "run the live session service");
  srv_cmd->add_option("--model", srv_o.models, "name=path, repeatable")->required();
  srv_cmd->add_option("--host", srv_o.host);
  srv_cmd->add_option("--port", srv_o.port, "0 picks a free port");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*fit_cmd) return run_fit(fit_o);
    if (*rep_cmd) return run_replay(rep_o);
    if (*ev_cmd) return run_evaluate(ev_o);
    if (*sim_cmd) return run_simulate(sim_o);
    if (*srv_cmd) return run_serve(srv_o);
  } catch (const Error& e) {
    std::cerr << "error: " << e.category() << ": " << e.detail() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: Internal: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
