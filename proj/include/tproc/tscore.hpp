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

#include <string>
#include <string_view>

namespace tproc {

/// The five T-score families. Each maps a (for, against) score pair onto the
/// real line so that wins sit above, and losses below, a fixed draw value.
enum class TScoreKind {
  Difference,          // a - b, draw at 0
  SymmetricRatio,      // 2 - b/a if a >= b, a/b otherwise; draw at 1
  LogRatio,            // log((a + k) / (b + k)), draw at 0
  RelativeDifference,  // (a - b) / (a + b + k), draw at 0
  Normalized,          // (a - b) / sqrt(a + b + k), draw at 0
};

struct TScoreVariant {
  TScoreKind kind = TScoreKind::SymmetricRatio;
  /// Stabilizer for LogRatio, RelativeDifference and Normalized; ignored by
  /// the other kinds. Must be non-negative.
  double kappa = 0.0;

  void validate() const;
  friend bool operator==(const TScoreVariant&, const TScoreVariant&) = default;
};

/// Points for (a) and against (b). Real-valued so team-strength values can be
/// fed through the same functions.
struct ScorePair {
  double a = 0.0;
  double b = 0.0;
};

double draw_benchmark(const TScoreVariant& variant) noexcept;

/// T(a, b). Throws DomainError for negative scores and for LogRatio with
/// kappa = 0 at a zero score. Tied scores always return the draw benchmark
/// exactly, including (0, 0).
double t_score(const TScoreVariant& variant, ScorePair s);

/// Points against that give `target` for a fixed points-for value, i.e. the
/// inverse of b -> T(a, b). Throws DomainError if no non-negative b exists.
double solve_points_against(const TScoreVariant& variant, double a, double target);

/// Config/CLI names: diff, symratio, logratio, reldiff, normalized.
std::string_view variant_name(TScoreKind kind) noexcept;
TScoreKind parse_variant_kind(std::string_view name);
/// Parses "symratio" or "logratio:kappa=0.5" / "logratio,kappa=0.5".
TScoreVariant parse_variant(std::string_view spec);
std::string format_variant(const TScoreVariant& variant);

}  // namespace tproc
