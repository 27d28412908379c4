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
// Acceptance checks. Each prints one PASS/FAIL line; the exit status is
// non-zero if any check fails.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "tproc/data.hpp"
#include "tproc/decimal.hpp"
#include "tproc/error.hpp"
#include "tproc/flow.hpp"
#include "tproc/model.hpp"
#include "tproc/normal.hpp"
#include "tproc/process.hpp"
#include "tproc/simulate.hpp"

using namespace tproc;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fixture(const std::string& rel) { return std::string(TPROC_FIXTURE_DIR) + "/" + rel; }

std::string num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

const std::vector<double> kAlpha{0.06, 0.0, 0.02, 0.01, 0.056, 0.015, -0.03, 0.01};

std::vector<std::string> basketball_ids() {
  std::vector<std::string> ids;
  for (auto s : kBasketballStats) ids.emplace_back(s);
  return ids;
}

MatchContext chiba_context(double beta0) {
  return MatchContext{load_model(fixture("chiba_model.json")), beta0, 40};
}

ProcessPath digitized(const std::string& name) {
  const CsvTable t = CsvTable::read_file(fixture(name + "/digitized.csv"));
  std::vector<double> mt;
  for (std::size_t i = 0; i < t.rows(); ++i) mt.push_back(t.decimal(i, t.column("mT")));
  return path_from_levels(mt);
}

Outcome table4() {
  const std::vector<std::pair<double, double>> rows = {
      {1.088059, 1.045995}, {1.086108, 1.047706}, {1.05268, 1.077015},
      {0.977479, 1.142951}, {0.952111, 1.165194}, {0.874814, 1.232967}};
  double worst = 0.0;
  for (const auto& [beta0, expected] : rows) {
    worst = std::max(worst, std::abs(t_score({TScoreKind::SymmetricRatio, 0.0}, {1.140517, beta0}) - expected));
  }
  return {worst <= 1e-6, "max_abs_err=" + num(worst)};
}

Outcome iof_fixtures() {
  struct Case {
    std::string name;
    double theta;
    std::vector<int> steps;
  };
  const std::vector<Case> cases{{"ryukyu_loss", 0.0148, {13, 22, 26, 34}}, {"tokyo_win", 0.0242, {8, 13, 15, 25}}};
  bool ok = true;
  std::string detail;
  for (const auto& c : cases) {
    const ProcessPath p = digitized(c.name);
    const double theta = select_delta(p, 4);
    const IofResult f = iof(p, theta);
    std::vector<Interval> expected;
    for (int r : c.steps) expected.push_back({r / 40.0, (r + 1) / 40.0});
    const bool this_ok = theta == c.theta && f.steps == c.steps && f.intervals == expected;
    ok = ok && this_ok;
    detail += c.name + ":theta=" + format_decimal(theta) + ",steps=" + std::to_string(f.steps.size()) + " ";
  }
  return {ok, detail};
}

Outcome monte_carlo() {
  const MatchContext ctx = chiba_context(1.088059);
  const double c = ctx.draw();
  double worst = 0.0;
  int failures = 0;
  std::uint64_t seed = 1000;
  for (double t : {0.0, 0.25, 0.5, 0.75, 0.9}) {
    for (double d : {-0.2, -0.1, 0.0, 0.1, 0.2}) {
      const double ts = c + d;
      const double exact = win_probability_given_t_star(ctx, t, ts);
      const MonteCarloEstimate mc = monte_carlo_pw_given_t_star(ctx, t, ts, 100000, seed++);
      const double z = std::abs(mc.estimate - exact) / mc.std_error;
      worst = std::max(worst, z);
      if (std::abs(mc.estimate - exact) > 3.0 * mc.std_error) ++failures;
    }
  }
  return {failures == 0, "cells_outside_3se=" + std::to_string(failures) + " max_z=" + num(worst)};
}

Outcome anchor() {
  double lo = -10.0;
  double hi = 10.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (0.5 * std::erfc(-mid / std::sqrt(2.0)) < 0.633112548 ? lo : hi) = mid;
  }
  const double scale = (1.045995 - 1.0) / (0.5 * (lo + hi));
  MatchContext ctx = chiba_context(1.088059);
  ctx.model.alpha.assign(ctx.model.alpha.size(), 0.0);
  ctx.model.tau2 = 0.0;
  ctx.model.sigma2 = scale * scale;
  const double pw = win_probability_given_t_star(ctx, 0.0, 1.045995);
  const MatchContext shipped = chiba_context(1.088059);
  const double pw_model = win_probability_given_t_star(shipped, 0.0, 1.045995);
  const double end_loss = win_probability(shipped, 1.0, {73, 88});
  const double end_win = win_probability(shipped, 1.0, {94, 66});
  const bool ok = std::abs(scale - 0.13524) <= 5e-6 && std::abs(pw - 0.6331) <= 5e-4 &&
                  std::abs(pw_model - 0.6331) <= 5e-4 && end_loss == 0.0 && end_win == 1.0;
  return {ok, "scale=" + num(scale) + " pw=" + num(pw) + " pw_model=" + num(pw_model) + " endpoints=" +
                  num(end_loss) + "," + num(end_win)};
}

Outcome fit_recovery() {
  LeagueConfig cfg;
  cfg.teams = {{"R", 1.14, kAlpha, 0.05}};
  cfg.games_per_team = 400;
  cfg.seed = 20240601;
  const auto games = simulate_league(cfg);
  const auto ids = basketball_ids();
  const FittedModel m = fit(games, cfg.variant, ids);
  double worst = 0.0;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    const double se = m.inference[i + 1].std_error;
    worst = std::max(worst, std::abs(m.alpha[i] - kAlpha[i]) / se);
  }
  double ss = 0.0;
  for (double a : m.alpha) ss += a * a;
  const double tau_rel = std::abs(m.tau2 - ss) / ss;
  return {worst <= 4.0 && tau_rel <= 1e-12, "max_abs_z=" + num(worst) + " tau2_rel_err=" + num(tau_rel)};
}

double spearman(const std::vector<double>& x, const std::vector<double>& y) {
  auto ranks = [](const std::vector<double>& v) {
    std::vector<std::size_t> idx(v.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    std::vector<double> r(v.size());
    for (std::size_t k = 0; k < idx.size(); ++k) r[idx[k]] = static_cast<double>(k);
    return r;
  };
  const auto rx = ranks(x);
  const auto ry = ranks(y);
  const double n = static_cast<double>(x.size());
  double d2 = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) d2 += (rx[i] - ry[i]) * (rx[i] - ry[i]);
  return 1.0 - 6.0 * d2 / (n * (n * n - 1.0));
}

Outcome tfs_strength() {
  const std::vector<double> truth{1.14, 1.09, 0.95, 0.87};
  const int reps = 100;
  std::vector<double> rho(reps, 0.0);
  const auto ids = basketball_ids();
  auto one = [&](int rep) {
    LeagueConfig cfg;
    for (std::size_t k = 0; k < truth.size(); ++k) {
      cfg.teams.push_back({"T" + std::to_string(k + 1), truth[k], kAlpha, 0.05});
    }
    cfg.games_per_team = 60;
    cfg.seed = 5000 + static_cast<std::uint64_t>(rep);
    const auto games = simulate_league(cfg);
    std::map<std::string, std::vector<GameRecord>> by_team;
    for (const auto& g : games) by_team[g.team_id].push_back(g);
    std::vector<double> fitted;
    for (std::size_t k = 0; k < truth.size(); ++k) {
      fitted.push_back(fit(by_team.at("T" + std::to_string(k + 1)), cfg.variant, ids).alpha0);
    }
    rho[static_cast<std::size_t>(rep)] = spearman(fitted, truth);
  };
  const unsigned n_threads = std::max(1u, std::thread::hardware_concurrency());
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < n_threads; ++w) {
    pool.emplace_back([&, w] {
      for (int rep = static_cast<int>(w); rep < reps; rep += static_cast<int>(n_threads)) one(rep);
    });
  }
  for (auto& th : pool) th.join();
  const auto good = std::count_if(rho.begin(), rho.end(), [](double r) { return r >= 0.9; });
  return {good >= 95, "replications_with_rho>=0.9=" + std::to_string(good) + "/" + std::to_string(reps) +
                          " min_rho=" + num(*std::min_element(rho.begin(), rho.end()))};
}

Outcome conservation() {
  std::mt19937_64 gen(77);
  std::uniform_int_distribution<int> roster(1, 15);
  std::normal_distribution<double> z(0.0, 0.3);
  std::uniform_real_distribution<double> a0(0.5, 1.5);
  double worst_sum = 0.0;
  double worst_weight = 0.0;
  for (int rep = 0; rep < 10000; ++rep) {
    const int j = roster(gen);
    const double alpha0 = a0(gen);
    std::vector<double> pss(static_cast<std::size_t>(j));
    for (auto& x : pss) x = z(gen);
    const auto pcs = contribution_scores(alpha0, pss);
    const double sum = std::accumulate(pcs.begin(), pcs.end(), 0.0);
    worst_sum = std::max(worst_sum, std::abs(sum - alpha0) / alpha0);
    if (j > 1) {
      double w = 0.0;
      for (double p : pcs) w += std::abs(p - alpha0 / j) / alpha0;
      worst_weight = std::max(worst_weight, std::abs(w - 1.0));
    }
  }
  bool flat_ok = true;
  for (int j = 1; j <= 15; ++j) {
    const std::vector<double> flat(static_cast<std::size_t>(j), 0.37);
    for (double p : contribution_scores(1.140517, flat)) flat_ok = flat_ok && p == 1.140517 / j;
  }
  return {worst_sum <= 1e-12 && worst_weight <= 1e-12 && flat_ok,
          "max_sum_rel_err=" + num(worst_sum) + " max_weight_err=" + num(worst_weight) +
              " equal_split=" + (flat_ok ? "ok" : "bad")};
}

Outcome diffusion() {
  const ScoringLaw law{1e4, {0.2, 0.55, 0.25}};
  const StatScale sc = law.final_scale();
  const int reps = 10000;
  Rng rng(31337, 0);
  double s1 = 0.0;
  double s2 = 0.0;
  for (int k = 0; k < reps; ++k) {
    const StatPath p = simulate_stat_path(law, rng, 4);
    const double inc = ((p.values[2] - p.values[1]) - sc.m * 0.25) / sc.v;
    s1 += inc;
    s2 += inc * inc;
  }
  const double mean = s1 / reps;
  const double var = (s2 - reps * mean * mean) / (reps - 1);
  const double se = std::sqrt(var / reps);

  Rng unit(31337, 1);
  const TScoreVariant normalized{TScoreKind::Normalized, 0.0};
  double t1 = 0.0;
  double t2 = 0.0;
  for (int k = 0; k < reps; ++k) {
    const double a = static_cast<double>(unit.poisson(1e3));
    const double b = static_cast<double>(unit.poisson(1e3));
    const double t = t_score(normalized, {a, b});
    t1 += t;
    t2 += t * t;
  }
  const double tm = t1 / reps;
  const double tvar = (t2 - reps * tm * tm) / (reps - 1);
  const bool ok = std::abs(mean) <= 3.0 * se && var >= 0.2375 && var <= 0.2625 && tvar >= 0.9 && tvar <= 1.1;
  return {ok, "increment_mean=" + num(mean) + " se=" + num(se) + " increment_var=" + num(var) +
                  " normalized_T_var=" + num(tvar)};
}

Outcome iof_inequality() {
  int checked = 0;
  int violations = 0;
  auto check = [&](const ProcessPath& p) {
    const double theta = select_delta(p, 4);
    const IofResult f = iof(p, theta);
    ++checked;
    if (!(f.increment_sum > theta * static_cast<double>(f.steps.size()))) ++violations;
  };
  const auto loss = load_game_bundle(fixture("ryukyu_loss"));
  const auto win = load_game_bundle(fixture("tokyo_win"));
  check(replay(chiba_context(1.088059), loss[0], PwAnchor::ModifiedProcess));
  check(replay(chiba_context(1.072536900503705), win[0], PwAnchor::ModifiedProcess));
  check(digitized("ryukyu_loss"));
  check(digitized("tokyo_win"));

  LeagueConfig cfg;
  cfg.teams = {{"S", 1.05, kAlpha, 0.05}};
  cfg.games_per_team = 1000;
  cfg.seed = 99;
  const auto games = simulate_league(cfg);
  const MatchContext ctx{fit(games, cfg.variant, basketball_ids()), 1.0, 40};
  int simulated = 0;
  for (const auto& g : games) {
    check(mt_path(ctx, g));
    ++simulated;
  }
  return {violations == 0 && simulated == 1000,
          "paths=" + std::to_string(checked) + " violations=" + std::to_string(violations)};
}

Outcome sensitivity() {
  const MatchContext ctx = chiba_context(1.088059);
  std::mt19937_64 gen(2718);
  std::uniform_real_distribution<double> ut(0.0, 0.95);
  std::uniform_real_distribution<double> pace(50.0, 110.0);
  const double h = 1e-5;
  double worst = 0.0;
  for (int rep = 0; rep < 100; ++rep) {
    const double t = ut(gen);
    const ScorePair s{pace(gen) * t, pace(gen) * t};
    const double ts = t_star(ctx, t, s);
    const auto sens = pw_sensitivity(ctx, t, s);
    for (std::size_t i = 0; i < sens.size(); ++i) {
      const double a = ctx.model.alpha[i];
      // Differenced on the smaller tail: PW(x) = 1 - PW(2c - x).
      const double x = ts > ctx.draw() ? 2.0 * ctx.draw() - ts : ts;
      const double fd = (win_probability_given_t_star(ctx, t, x + a * h) -
                         win_probability_given_t_star(ctx, t, x - a * h)) / (2.0 * h);
      worst = std::max(worst, std::abs(sens[i] - fd) / std::abs(fd));
    }
  }
  return {worst <= 1e-6, "max_rel_err=" + num(worst)};
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string("\"") + TPROC_CLI + "\" " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::map<std::string, std::string> tree(const fs::path& dir) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::recursive_directory_iterator(dir)) {
    if (e.is_regular_file()) out[fs::relative(e.path(), dir).string()] = read_text_file(e.path());
  }
  return out;
}

Outcome determinism() {
  const fs::path root = fs::current_path() / "acceptance_work";
  fs::remove_all(root);
  auto q = [](const fs::path& p) { return "\"" + p.string() + "\""; };
  int failures = 0;
  for (const char* tag : {"a", "b"}) {
    const fs::path d = root / tag;
    failures += run_cli("simulate --seed 2024 --teams 4 --games 40 --out " + q(d / "league")) != 0;
    failures += run_cli("fit --games " + q(d / "league") + " --team all --out " + q(d / "models") + " --tfs-out " +
                        q(d / "tfs.csv")) != 0;
    failures += run_cli("replay --games " + q(d / "league") + " --model " + q(d / "models" / "T1.json") +
                        " --tfs-table " + q(d / "tfs.csv") + " --out " + q(d / "replay")) != 0;
    failures += run_cli("replay --games " + q(fixture("ryukyu_loss")) + " --model " + q(fixture("chiba_model.json")) +
                        " --tfs-table " + q(fixture("tfs.csv")) + " --pw-anchor mt --out " + q(d / "fixture")) != 0;
  }
  if (failures != 0) return {false, "cli_failures=" + std::to_string(failures)};
  const auto a = tree(root / "a");
  const auto b = tree(root / "b");
  std::size_t bytes = 0;
  for (const auto& [k, v] : a) bytes += v.size();
  return {a == b, "files=" + std::to_string(a.size()) + " bytes=" + std::to_string(bytes)};
}

}  // namespace

int main() {
  struct Check {
    const char* name;
    std::function<Outcome()> fn;
    double budget_s;  // 0: no runtime bound
  };
  const std::vector<Check> checks{
      {"table4_reproduction", table4, 1.0},
      {"delta_selection_and_iof", iof_fixtures, 1.0},
      {"closed_form_vs_monte_carlo", monte_carlo, 30.0},
      {"pw_anchor_and_endpoints", anchor, 0.0},
      {"fit_recovery", fit_recovery, 10.0},
      {"tfs_strength_spearman", tfs_strength, 0.0},
      {"pcs_conservation", conservation, 0.0},
      {"diffusion_limit", diffusion, 0.0},
      {"iof_inequality", iof_inequality, 0.0},
      {"pw_sensitivity_finite_difference", sensitivity, 0.0},
      {"cli_determinism", determinism, 0.0},
  };
  int failed = 0;
  for (const auto& c : checks) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::string timing = num(secs) + "s";
    if (c.budget_s > 0.0) {
      timing += " budget " + num(c.budget_s) + "s";
      if (secs >= c.budget_s) {
        o.pass = false;
        o.detail += " over_budget";
      }
    }
    std::printf("%s %-34s %s (%s)\n", o.pass ? "PASS" : "FAIL", c.name, o.detail.c_str(), timing.c_str());
    std::fflush(stdout);
    failed += o.pass ? 0 : 1;
  }
  std::printf("%d/%zu acceptance checks passed\n", static_cast<int>(checks.size()) - failed, checks.size());
  return failed == 0 ? 0 : 1;
}
