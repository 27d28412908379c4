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
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "helpers.hpp"
#include "tproc/error.hpp"
#include "tproc/model.hpp"

using namespace tproc;

namespace {

GameRecord final_only_game(const std::string& id, const std::vector<std::string>& stats,
                           const std::vector<double>& finals, ScorePair score) {
  GameRecord g;
  g.game_id = id;
  g.team_id = "T";
  g.grid_R = 2;
  for (std::size_t i = 0; i < stats.size(); ++i) {
    g.team_stats.push_back(make_grid_path(stats[i], {0.0, finals[i] / 2, finals[i]}));
  }
  g.score_for = {0.0, score.a / 2, score.a};
  g.score_against = {0.0, score.b / 2, score.b};
  g.final_score = score;
  return g;
}

// Inverse by Gauss-Jordan elimination with partial pivoting.
std::vector<std::vector<double>> invert(std::vector<std::vector<double>> a) {
  const std::size_t n = a.size();
  std::vector<std::vector<double>> inv(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1.0;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r) {
      if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
    }
    std::swap(a[c], a[piv]);
    std::swap(inv[c], inv[piv]);
    const double d = a[c][c];
    for (std::size_t k = 0; k < n; ++k) {
      a[c][k] /= d;
      inv[c][k] /= d;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c) continue;
      const double f = a[r][c];
      for (std::size_t k = 0; k < n; ++k) {
        a[r][k] -= f * a[c][k];
        inv[r][k] -= f * inv[c][k];
      }
    }
  }
  return inv;
}

// Two-sided p-value by Simpson integration of the t density on [0, |t|].
double simpson_t_p(double t, int dof) {
  const double nu = dof;
  const double logc = std::lgamma((nu + 1) / 2) - std::lgamma(nu / 2) - 0.5 * std::log(nu * M_PI);
  auto f = [&](double x) { return std::exp(logc - (nu + 1) / 2 * std::log1p(x * x / nu)); };
  const int n = 20000;
  const double h = std::abs(t) / n;
  double s = f(0) + f(std::abs(t));
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(i * h);
  return 1.0 - 2.0 * s * h / 3.0;
}

}  // namespace

TEST_CASE("student t p-values against frozen reference values") {
  CHECK(student_t_two_sided_p(2.0, 10) == doctest::Approx(0.07338803477074039).epsilon(1e-12));
  CHECK(student_t_two_sided_p(0.5, 3) == doctest::Approx(0.651447964848151).epsilon(1e-12));
  CHECK(student_t_two_sided_p(-1.7, 58) == doctest::Approx(0.09448823211322299).epsilon(1e-12));
  CHECK(student_t_two_sided_p(4.2, 391) == doctest::Approx(3.308702493178185e-05).epsilon(1e-10));
  CHECK(student_t_two_sided_p(0.0, 5) == 1.0);
  CHECK_THROWS_AS(student_t_two_sided_p(1.0, 0), Error);
}

TEST_CASE("student t p-values against numerical integration") {
  for (int dof : {1, 2, 7, 30, 200}) {
    for (double t : {0.3, 1.1, 2.5, 3.9}) {
      CHECK(student_t_two_sided_p(t, dof) == doctest::Approx(simpson_t_p(t, dof)).epsilon(1e-9));
    }
  }
}

TEST_CASE("OLS agrees with the normal equations") {
  std::mt19937_64 gen(21);
  std::normal_distribution<double> z(0.0, 1.0);
  const int n = 50;
  std::vector<std::vector<double>> cols(3, std::vector<double>(n));
  std::vector<double> y(n);
  for (int i = 0; i < n; ++i) {
    for (auto& c : cols) c[i] = z(gen);
    y[i] = 0.7 + 0.3 * cols[0][i] - 0.2 * cols[1][i] + 0.05 * cols[2][i] + 0.1 * z(gen);
  }
  const std::vector<std::string> names{"x1", "x2", "x3"};
  const OlsResult res = solve_ols(cols, y, names);

  const std::size_t p = 4;
  auto xrow = [&](int i, std::size_t j) { return j == 0 ? 1.0 : cols[j - 1][i]; };
  std::vector<std::vector<double>> xtx(p, std::vector<double>(p, 0.0));
  std::vector<double> xty(p, 0.0);
  for (int i = 0; i < n; ++i) {
    for (std::size_t a = 0; a < p; ++a) {
      xty[a] += xrow(i, a) * y[i];
      for (std::size_t b = 0; b < p; ++b) xtx[a][b] += xrow(i, a) * xrow(i, b);
    }
  }
  const auto inv = invert(xtx);
  std::vector<double> beta(p, 0.0);
  for (std::size_t a = 0; a < p; ++a) {
    for (std::size_t b = 0; b < p; ++b) beta[a] += inv[a][b] * xty[b];
  }
  double rss = 0.0;
  for (int i = 0; i < n; ++i) {
    double fit = 0.0;
    for (std::size_t a = 0; a < p; ++a) fit += beta[a] * xrow(i, a);
    rss += (y[i] - fit) * (y[i] - fit);
  }
  const double s2 = rss / (n - static_cast<int>(p));
  CHECK(res.dof == n - 4);
  CHECK(res.sigma2 == doctest::Approx(s2).epsilon(1e-10));
  for (std::size_t a = 0; a < p; ++a) {
    CHECK(res.coef[a] == doctest::Approx(beta[a]).epsilon(1e-10));
    CHECK(res.std_error[a] == doctest::Approx(std::sqrt(s2 * inv[a][a])).epsilon(1e-9));
    CHECK(res.t_value[a] == doctest::Approx(res.coef[a] / res.std_error[a]).epsilon(1e-14));
  }
}

TEST_CASE("rank deficiency names the dependent column") {
  const std::vector<double> x1{1, 2, 3, 4, 5, 6};
  std::vector<double> x2;
  for (double v : x1) x2.push_back(2.0 * v + 1.0);
  const std::vector<double> y{1, 3, 2, 5, 4, 6};
  const std::vector<std::string> names{"PTs", "FGM"};
  try {
    solve_ols({x1, x2}, y, names);
    FAIL("expected RankDeficient");
  } catch (const Error& e) {
    CHECK(e.category() == "RankDeficient");
    const bool named = e.detail().find("PTs") != std::string::npos || e.detail().find("FGM") != std::string::npos ||
                       e.detail().find("intercept") != std::string::npos;
    CHECK(named);
  }
}

TEST_CASE("fit needs d + 2 games") {
  const std::vector<std::string> ids{"PTs", "DR"};
  std::vector<GameRecord> games;
  for (int k = 0; k < 3; ++k) {
    games.push_back(final_only_game("g" + std::to_string(k), ids, {80.0 + k, 20.0 + k * k}, {80.0 + k, 75}));
  }
  CHECK_THROWS_WITH_AS(fit(games, {}, ids), doctest::Contains("TooFewGames"), Error);
}

TEST_CASE("fit recovers an exact linear relation and ignores game order") {
  const std::vector<std::string> ids{"PTs", "DR"};
  std::mt19937_64 gen(5);
  std::uniform_int_distribution<int> pts(60, 110);
  std::uniform_int_distribution<int> dr(15, 40);
  std::vector<GameRecord> games;
  for (int k = 0; k < 30; ++k) {
    const double p = pts(gen);
    const double d = dr(gen);
    games.push_back(final_only_game("g" + std::to_string(100 + k), ids, {p, d}, {p, 0.5 * p + 0.9 * d}));
  }
  const TScoreVariant diff{TScoreKind::Difference, 0.0};
  const FittedModel m = fit(games, diff, ids);
  // T = a - b = 0.5 PTs - 0.9 DR, expressed on standardized stats.
  const StatScale sp = m.scaler.at("PTs");
  const StatScale sd = m.scaler.at("DR");
  CHECK(m.alpha[0] == doctest::Approx(0.5 * sp.v).epsilon(1e-9));
  CHECK(m.alpha[1] == doctest::Approx(-0.9 * sd.v).epsilon(1e-9));
  CHECK(m.alpha0 == doctest::Approx(0.5 * sp.m - 0.9 * sd.m).epsilon(1e-9));
  CHECK(m.sigma2 < 1e-20);
  CHECK(m.tau2 == sum_of_squares(m.alpha));
  CHECK(m.inference.front().name == "TFS");
  CHECK(m.n_games == 30);
  CHECK_NOTHROW(m.validate());

  std::vector<GameRecord> shuffled = games;
  std::shuffle(shuffled.begin(), shuffled.end(), gen);
  CHECK(fit(shuffled, diff, ids) == m);
}

TEST_CASE("model validation") {
  FittedModel m = testing::toy_model(1.0, {0.1, 0.2}, 0.01);
  CHECK_NOTHROW(m.validate());
  CHECK(m.diffusion_scale() == doctest::Approx(std::sqrt(0.05 + 0.01)));
  m.tau2 += 1e-6;
  CHECK_THROWS_AS(m.validate(), Error);
  m = testing::toy_model(1.0, {0.1, 0.2}, 0.01);
  m.sigma2 = -1.0;
  CHECK_THROWS_AS(m.validate(), Error);
  m = testing::toy_model(1.0, {0.1, 0.2}, 0.01);
  m.stat_ids.pop_back();
  CHECK_THROWS_AS(m.validate(), Error);
}

TEST_CASE("team scores split T into TFS and TSS") {
  const FittedModel m = testing::toy_model(1.1, {0.2, -0.1}, 0.01, {"PTs", "TO"});
  const GameRecord g = final_only_game("g", {"PTs", "TO"}, {14.0, 6.0}, {90, 80});
  const TeamScores s = team_scores(m, g);
  CHECK(s.tfs == 1.1);
  CHECK(s.tss == doctest::Approx(0.2 * 2.0 - 0.1 * -2.0));
  CHECK(s.predicted_t == doctest::Approx(1.1 + 0.6));
}

TEST_CASE("contribution scores") {
  const std::vector<double> pss{0.3, -0.1, 0.05, 0.0};
  const auto pcs = contribution_scores(1.2, pss);
  double sum = 0.0;
  for (double x : pcs) sum += x;
  CHECK(sum == doctest::Approx(1.2).epsilon(1e-14));
  CHECK(pcs[0] > pcs[2]);
  CHECK(pcs[2] > pcs[3]);
  CHECK(pcs[3] > pcs[1]);

  const std::vector<double> flat{0.2, 0.2, 0.2};
  for (double x : contribution_scores(0.9, flat)) CHECK(x == 0.9 / 3);
  CHECK_THROWS_WITH_AS(contribution_scores(1.0, std::vector<double>{}), doctest::Contains("EmptyRoster"), Error);
}

TEST_CASE("property: player scores sum to the team score") {
  const FittedModel m = testing::toy_model(1.05, {0.3, 0.1}, 0.01, {"PTs", "AS"});
  std::mt19937_64 gen(9);
  std::uniform_int_distribution<int> u(0, 12);
  for (int rep = 0; rep < 200; ++rep) {
    const int j = 1 + rep % 12;
    GameRecord g;
    g.game_id = "g";
    g.grid_R = 2;
    std::vector<double> team(2, 0.0);
    for (int k = 0; k < j; ++k) {
      PlayerRecord p;
      p.player_id = "p" + std::to_string(k);
      const double a = u(gen);
      const double b = u(gen);
      team[0] += a;
      team[1] += b;
      p.stats.push_back(make_grid_path("PTs", {0, a, a}));
      p.stats.push_back(make_grid_path("AS", {0, b, b}));
      g.players.push_back(std::move(p));
    }
    g.team_stats.push_back(make_grid_path("PTs", {0, team[0], team[0]}));
    g.team_stats.push_back(make_grid_path("AS", {0, team[1], team[1]}));
    const auto eval = player_scores(m, g);
    double pss = 0.0;
    double pcs = 0.0;
    for (const auto& e : eval) {
      pss += e.pss;
      pcs += e.pcs;
    }
    CHECK(pss == doctest::Approx(team_scores(m, g).tss).epsilon(1e-12));
    CHECK(pcs == doctest::Approx(1.05).epsilon(1e-12));
  }
}
