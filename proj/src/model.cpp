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

#include "tproc/model.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <boost/math/distributions/students_t.hpp>
#include <cmath>
#include <limits>
#include <numeric>

#include "tproc/error.hpp"

namespace tproc {

double FittedModel::diffusion_scale() const noexcept { return std::sqrt(tau2 + sigma2); }

double sum_of_squares(std::span<const double> alpha) noexcept {
  double s = 0.0;
  for (double a : alpha) s += a * a;
  return s;
}

void FittedModel::validate() const {
  variant.validate();
  if (alpha.size() != stat_ids.size()) {
    throw Error(errc::kInvalidInput, "model has " + std::to_string(alpha.size()) + " coefficients for " +
                                         std::to_string(stat_ids.size()) + " stats");
  }
  for (const auto& id : stat_ids) {
    if (!scaler.contains(id)) throw Error(errc::kMissingScaler, "model has no scaler for '" + id + "'");
  }
  if (!(sigma2 >= 0.0) || !std::isfinite(sigma2)) {
    throw Error(errc::kInvalidInput, "sigma2 must be finite and non-negative");
  }
  const double recomputed = sum_of_squares(alpha);
  if (std::abs(recomputed - tau2) > 1e-12 * std::max(std::abs(recomputed), 1e-300)) {
    throw Error(errc::kInvalidInput, "tau2 does not equal the sum of squared coefficients");
  }
  if (n_games != 0 && n_games < static_cast<int>(alpha.size()) + 2) {
    throw Error(errc::kTooFewGames, "model claims fewer games than coefficients allow");
  }
}

double student_t_two_sided_p(double t, int dof) {
  if (dof < 1) throw Error(errc::kTooFewGames, "no residual degrees of freedom");
  if (std::isnan(t)) return std::numeric_limits<double>::quiet_NaN();
  if (std::isinf(t)) return 0.0;
  const boost::math::students_t dist(static_cast<double>(dof));
  return 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(t)));
}

OlsResult solve_ols(const std::vector<std::vector<double>>& columns, std::span<const double> y,
                    std::span<const std::string> column_names) {
  const auto n = static_cast<Eigen::Index>(y.size());
  const auto p = static_cast<Eigen::Index>(columns.size()) + 1;
  if (n < p + 1) {
    throw Error(errc::kTooFewGames, "need at least " + std::to_string(p + 1) + " observations for " +
                                        std::to_string(p) + " coefficients, got " + std::to_string(n));
  }
  Eigen::MatrixXd x(n, p);
  x.col(0).setOnes();
  for (Eigen::Index j = 1; j < p; ++j) {
    const auto& col = columns[static_cast<std::size_t>(j - 1)];
    if (static_cast<Eigen::Index>(col.size()) != n) {
      throw Error(errc::kInvalidInput, "design column length differs from response length");
    }
    x.col(j) = Eigen::Map<const Eigen::VectorXd>(col.data(), n);
  }
  const Eigen::Map<const Eigen::VectorXd> yv(y.data(), n);

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(x);
  qr.setThreshold(1e-10);
  if (qr.rank() < p) {
    std::string names;
    const auto& perm = qr.colsPermutation().indices();
    for (Eigen::Index k = qr.rank(); k < p; ++k) {
      const auto j = static_cast<std::size_t>(perm(k));
      const std::string name =
          j == 0 ? "intercept" : (j - 1 < column_names.size() ? column_names[j - 1] : "column " + std::to_string(j));
      names += (names.empty() ? "" : ", ") + name;
    }
    throw Error(errc::kRankDeficient, "design matrix is rank deficient; dependent columns: " + names);
  }

  const Eigen::VectorXd beta = qr.solve(yv);
  const Eigen::VectorXd resid = yv - x * beta;

  OlsResult out;
  out.dof = static_cast<int>(n - p);
  out.rss = resid.squaredNorm();
  out.sigma2 = out.rss / out.dof;

  // (X^T X)^{-1} = P R^{-1} R^{-T} P^T
  const Eigen::MatrixXd r = qr.matrixR().topLeftCorner(p, p).triangularView<Eigen::Upper>();
  const Eigen::MatrixXd r_inv =
      r.triangularView<Eigen::Upper>().solve(Eigen::MatrixXd::Identity(p, p));
  const Eigen::VectorXd diag_perm = (r_inv * r_inv.transpose()).diagonal();
  const Eigen::VectorXd diag = qr.colsPermutation() * diag_perm;

  out.coef.assign(beta.data(), beta.data() + p);
  for (Eigen::Index j = 0; j < p; ++j) {
    const double se = std::sqrt(out.sigma2 * diag(j));
    const double t = beta(j) / se;
    out.std_error.push_back(se);
    out.t_value.push_back(t);
    out.p_value.push_back(se > 0.0 ? student_t_two_sided_p(t, out.dof) : 0.0);
  }
  return out;
}

std::vector<double> standardized_finals(const FittedModel& model, const GameRecord& game) {
  std::vector<double> s;
  s.reserve(model.stat_ids.size());
  for (const auto& id : model.stat_ids) {
    const StatScale& scale = model.scaler.at(id);
    s.push_back(standardize_value(game.team_stat(id).final_value(), 1.0, scale));
  }
  return s;
}

FittedModel fit(std::span<const GameRecord> games, const TScoreVariant& variant,
                std::span<const std::string> stat_ids) {
  variant.validate();
  const std::size_t d = stat_ids.size();
  if (games.size() < d + 2) {
    throw Error(errc::kTooFewGames, "fitting " + std::to_string(d) + " stats needs at least " +
                                        std::to_string(d + 2) + " games, got " + std::to_string(games.size()));
  }
  std::vector<const GameRecord*> order;
  order.reserve(games.size());
  for (const auto& g : games) order.push_back(&g);
  std::sort(order.begin(), order.end(),
            [](const GameRecord* x, const GameRecord* y) { return x->game_id < y->game_id; });
  for (std::size_t k = 1; k < order.size(); ++k) {
    if (order[k]->game_id == order[k - 1]->game_id) {
      throw Error(errc::kInvalidInput, "duplicate game id '" + order[k]->game_id + "'");
    }
    if (order[k]->team_id != order[0]->team_id) {
      throw Error(errc::kInvalidInput, "fit expects games of a single team");
    }
  }

  std::vector<StatFinals> finals;
  for (const auto& id : stat_ids) {
    StatFinals f{id, {}};
    for (const auto* g : order) f.values.push_back(g->team_stat(id).final_value());
    finals.push_back(std::move(f));
  }

  FittedModel model;
  model.team_id = order[0]->team_id;
  model.variant = variant;
  model.stat_ids.assign(stat_ids.begin(), stat_ids.end());
  model.scaler = fit_standardizer(finals);
  model.n_games = static_cast<int>(order.size());

  std::vector<std::vector<double>> columns(d);
  std::vector<double> y;
  for (const auto* g : order) {
    const auto s = standardized_finals(model, *g);
    for (std::size_t i = 0; i < d; ++i) columns[i].push_back(s[i]);
    y.push_back(t_score(variant, g->final_score));
  }

  const OlsResult ols = solve_ols(columns, y, stat_ids);
  model.alpha0 = ols.coef[0];
  model.alpha.assign(ols.coef.begin() + 1, ols.coef.end());
  model.sigma2 = ols.sigma2;
  model.tau2 = sum_of_squares(model.alpha);
  for (std::size_t j = 0; j < ols.coef.size(); ++j) {
    model.inference.push_back({j == 0 ? std::string("TFS") : model.stat_ids[j - 1], ols.coef[j],
                               ols.std_error[j], ols.t_value[j], ols.p_value[j]});
  }
  return model;
}

TeamScores team_scores(const FittedModel& model, const GameRecord& game) {
  const auto s = standardized_finals(model, game);
  double tss = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) tss += model.alpha[i] * s[i];
  return {model.alpha0, tss, model.alpha0 + tss};
}

std::vector<double> contribution_scores(double alpha0, std::span<const double> pss) {
  if (pss.empty()) throw Error(errc::kEmptyRoster, "no players to allocate");
  const double j_count = static_cast<double>(pss.size());
  const double tss = std::accumulate(pss.begin(), pss.end(), 0.0);
  const double mean = tss / j_count;
  std::vector<double> dev(pss.size());
  double drift = 0.0;
  double scale = 0.0;
  for (std::size_t j = 0; j < pss.size(); ++j) {
    dev[j] = pss[j] - mean;
    drift += dev[j];
    scale += std::abs(pss[j]);
  }
  // Second centering pass; deviations at rounding level count as D = 0.
  double d = 0.0;
  for (double& x : dev) {
    x -= drift / j_count;
    d += std::abs(x);
  }
  std::vector<double> pcs(pss.size(), alpha0 / j_count);
  if (d > 64.0 * std::numeric_limits<double>::epsilon() * scale) {
    for (std::size_t j = 0; j < pss.size(); ++j) {
      pcs[j] += alpha0 * (dev[j] / d);
    }
  }
  return pcs;
}

std::vector<PlayerGameEval> player_scores(const FittedModel& model, const GameRecord& game) {
  if (game.players.empty()) {
    throw Error(errc::kEmptyRoster, "game '" + game.game_id + "' lists no players");
  }
  const int roster = static_cast<int>(game.players.size());
  std::vector<PlayerGameEval> out;
  std::vector<double> pss;
  for (const auto& p : game.players) {
    double score = 0.0;
    for (std::size_t i = 0; i < model.stat_ids.size(); ++i) {
      const StatScale& s = model.scaler.at(model.stat_ids[i]);
      const StatPath* path = p.find_stat(model.stat_ids[i]);
      const double raw = path != nullptr ? path->final_value() : 0.0;
      score += model.alpha[i] * ((raw - s.m / roster) / s.v);
    }
    pss.push_back(score);
    PlayerGameEval e;
    e.player_id = p.player_id;
    e.pss = score;
    e.minutes_fraction = p.span.total();
    out.push_back(std::move(e));
  }
  const auto pcs = contribution_scores(model.alpha0, pss);
  for (std::size_t j = 0; j < out.size(); ++j) out[j].pcs = pcs[j];
  return out;
}

}  // namespace tproc
