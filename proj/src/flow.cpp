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

#include "tproc/flow.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <functional>

#include "tproc/decimal.hpp"
#include "tproc/error.hpp"
#include "tproc/kernels.hpp"

namespace tproc {

namespace {

std::vector<double> step_increments(const ProcessPath& path) {
  if (path.mt.size() < 2) throw Error(errc::kInvalidInput, "path needs at least two points");
  std::vector<double> inc(path.mt.size() - 1);
  kernels::increments(path.mt, inc);
  return inc;
}

// Leading three decimal digits and the decimal exponent of x > 0, read off
// the shortest round-trip representation so that e.g. 0.0148 gives 148, -4
// rather than falling victim to binary error in x * 10^k.
std::pair<int, int> leading_digits(double x) {
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x, std::chars_format::scientific);
  if (ec != std::errc{}) throw Error(errc::kInvalidInput, "cannot format threshold");
  const std::string_view s(buf.data(), static_cast<std::size_t>(end - buf.data()));
  const auto e_pos = s.find('e');
  std::string digits;
  for (char ch : s.substr(0, e_pos)) {
    if (ch >= '0' && ch <= '9') digits += ch;
  }
  digits.resize(3, '0');
  int exponent = 0;
  auto exp_text = s.substr(e_pos + 1);
  if (!exp_text.empty() && exp_text.front() == '+') exp_text.remove_prefix(1);
  std::from_chars(exp_text.data(), exp_text.data() + exp_text.size(), exponent);
  return {std::stoi(digits), exponent};
}

double from_digits(int mantissa, int exponent) {
  return parse_decimal(std::to_string(mantissa) + "e" + std::to_string(exponent - 2));
}

}  // namespace

bool IofResult::contains_step(int r) const noexcept {
  return std::binary_search(steps.begin(), steps.end(), r);
}

double truncate_3sig(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) throw Error(errc::kInvalidInput, "truncation needs a positive value");
  auto [mantissa, exponent] = leading_digits(x);
  return from_digits(mantissa, exponent);
}

double lower_3sig(double x) {
  auto [mantissa, exponent] = leading_digits(truncate_3sig(x));
  if (mantissa > 100) return from_digits(mantissa - 1, exponent);
  return from_digits(999, exponent - 1);
}

double select_delta(const ProcessPath& path, int k_target) {
  if (k_target < 1) throw Error(errc::kInvalidConfig, "k_target must be positive");
  const auto inc = step_increments(path);
  const auto k = static_cast<std::size_t>(k_target);
  if (kernels::count_above(inc, 0.0) < k) {
    throw Error(errc::kTooFewRises, "fewer than " + std::to_string(k_target) + " rising steps");
  }
  std::vector<double> sorted = inc;
  std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(k - 1), sorted.end(),
                   std::greater<>());
  double theta = truncate_3sig(sorted[k - 1]);
  while (kernels::count_above(inc, theta) < k) {
    theta = lower_3sig(theta);
  }
  return theta;
}

IofResult iof(const ProcessPath& path, double theta) {
  const auto inc = step_increments(path);
  const int big_r = static_cast<int>(inc.size());
  IofResult out;
  out.threshold_theta = theta;
  for (int r = 0; r < big_r; ++r) {
    const double d = inc[static_cast<std::size_t>(r)];
    if (d > theta) {
      out.steps.push_back(r);
      out.intervals.push_back({path.times[static_cast<std::size_t>(r)], path.times[static_cast<std::size_t>(r) + 1]});
      out.increment_sum += d;
    }
  }
  out.total_length = static_cast<double>(out.steps.size()) / big_r;
  return out;
}

double x_index(const OnCourtSpan& span, const IofResult& iof_result, XWeight weight) {
  double x = 0.0;
  for (const auto& on : span.intervals) {
    for (const auto& fire : iof_result.intervals) {
      const double lo = std::max(on.lo, fire.lo);
      const double hi = std::min(on.hi, fire.hi);
      if (!(hi > lo)) continue;
      if (weight == XWeight::None) {
        x += hi - lo;
      } else {
        x += 2.0 * (std::sqrt(1.0 - lo) - std::sqrt(1.0 - hi));
      }
    }
  }
  return x;
}

StatsXTransform StatsXTransform::linear_game_theta() {
  return StatsXTransform("linear(theta)", [](double x, double theta) { return theta * x; });
}

StatsXTransform StatsXTransform::linear(double slope) {
  if (!(slope >= 0.0) || !std::isfinite(slope)) {
    throw Error(errc::kInvalidTransform, "linear STATS X slope must be finite and non-negative");
  }
  return StatsXTransform("linear(" + format_decimal(slope) + ")", [slope](double x, double) { return slope * x; });
}

StatsXTransform StatsXTransform::zero() {
  return StatsXTransform("zero", [](double, double) { return 0.0; });
}

StatsXTransform StatsXTransform::custom(std::string name, Fn fn, std::vector<double> probe_thetas) {
  StatsXTransform h(std::move(name), std::move(fn));
  h.validate(probe_thetas);
  return h;
}

void StatsXTransform::validate(std::span<const double> probe_thetas) const {
  constexpr int kGrid = 1000;
  for (double theta : probe_thetas) {
    auto fail = [&](const std::string& why) {
      throw Error(errc::kInvalidTransform, "h '" + name_ + "' " + why + " (theta=" + format_decimal(theta) + ")");
    };
    if (fn_(0.0, theta) != 0.0) fail("does not vanish at 0");
    double prev = 0.0;
    for (int i = 1; i <= kGrid; ++i) {
      const double x = static_cast<double>(i) / kGrid;
      const double y = fn_(x, theta);
      if (!std::isfinite(y)) fail("is unbounded on [0,1]");
      if (y < prev) fail("is not monotone non-decreasing");
      // A jump that does not shrink when the bracket is halved 40 times is a
      // discontinuity, not a steep slope.
      const double jump = y - prev;
      if (jump > 1e-12) {
        double lo = static_cast<double>(i - 1) / kGrid;
        double hi = x;
        double width_jump = jump;
        for (int it = 0; it < 40; ++it) {
          const double mid = 0.5 * (lo + hi);
          const double left = fn_(mid, theta) - fn_(lo, theta);
          const double right = fn_(hi, theta) - fn_(mid, theta);
          if (left >= right) {
            hi = mid;
            width_jump = left;
          } else {
            lo = mid;
            width_jump = right;
          }
        }
        if (width_jump > 0.5 * jump) fail("is discontinuous near x=" + format_decimal(lo));
      }
      prev = y;
    }
  }
}

void apply_flow(GameEvaluation& eval, const GameRecord& game, const IofResult& iof_result,
                const StatsXTransform& h) {
  eval.theta = iof_result.threshold_theta;
  for (auto& p : eval.players) {
    const OnCourtSpan* span = nullptr;
    for (const auto& rec : game.players) {
      if (rec.player_id == p.player_id) span = &rec.span;
    }
    if (span == nullptr) {
      throw Error(errc::kInvalidInput, "player '" + p.player_id + "' not in game '" + game.game_id + "'");
    }
    p.minutes_fraction = span->total();
    p.x_index = x_index(*span, iof_result);
    p.x_weighted = x_index(*span, iof_result, XWeight::InverseSqrtRemaining);
    p.stats_x = h(p.x_index, eval.theta);
  }
}

std::vector<PlayerTotal> player_totals(std::span<const GameEvaluation> games, const StatsXTransform& h,
                                       PtsDenominator denominator) {
  struct Acc {
    int appearances = 0;
    double pcs = 0.0;
    double stats_x = 0.0;
  };
  std::map<std::string, Acc> acc;
  for (const auto& g : games) {
    for (const auto& p : g.players) {
      auto& a = acc[p.player_id];
      a.appearances += 1;
      a.pcs += p.pcs;
      a.stats_x += h(p.x_index, g.theta);
    }
  }
  std::vector<PlayerTotal> out;
  for (const auto& [id, a] : acc) {
    PlayerTotal t;
    t.player_id = id;
    t.appearances = a.appearances;
    t.denominator = denominator == PtsDenominator::AllGames ? static_cast<int>(games.size()) : a.appearances;
    t.mean_pcs = a.pcs / t.denominator;
    t.mean_stats_x = a.stats_x / t.denominator;
    t.pts = (a.pcs + a.stats_x) / t.denominator;
    out.push_back(std::move(t));
  }
  return out;
}

StoppingTimes stopping_times(const ProcessPath& path, double theta, double epsilon) {
  StoppingTimes out;
  const auto inc = step_increments(path);
  for (std::size_t r = 0; r < inc.size(); ++r) {
    if (inc[r] <= -theta) {
      out.reversal_time = path.times[r];
      break;
    }
  }
  for (std::size_t r = 0; r < path.pw.size(); ++r) {
    if (path.pw[r] <= epsilon) {
      out.pw_drop_time = path.times[r];
      break;
    }
  }
  return out;
}

double iof_lower_bound(const ProcessPath& path, const IofResult& iof_result) {
  const auto inc = step_increments(path);
  double other = 0.0;
  for (std::size_t r = 0; r < inc.size(); ++r) {
    if (!iof_result.contains_step(static_cast<int>(r))) other += std::abs(inc[r]);
  }
  return iof_result.threshold_theta * static_cast<double>(iof_result.steps.size()) - other;
}

}  // namespace tproc
