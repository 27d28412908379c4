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

#include "tproc/tscore.hpp"

#include <charconv>
#include <cmath>
#include <string>

#include "tproc/decimal.hpp"
#include "tproc/error.hpp"

namespace tproc {

void TScoreVariant::validate() const {
  if (!(kappa >= 0.0) || !std::isfinite(kappa)) {
    throw Error(errc::kInvalidConfig, "kappa must be a finite non-negative number");
  }
}

double draw_benchmark(const TScoreVariant& variant) noexcept {
  return variant.kind == TScoreKind::SymmetricRatio ? 1.0 : 0.0;
}

double t_score(const TScoreVariant& variant, ScorePair s) {
  const double a = s.a;
  const double b = s.b;
  if (!(a >= 0.0) || !(b >= 0.0)) {
    throw Error(errc::kDomainError, "scores must be non-negative");
  }
  const double k = variant.kappa;
  // Def of a T-score function: T(x, x) = c for every x >= 0, including the
  // 0/0 cases of the ratio forms.
  if (a == b && variant.kind != TScoreKind::LogRatio) {
    return draw_benchmark(variant);
  }
  switch (variant.kind) {
    case TScoreKind::Difference:
      return a - b;
    case TScoreKind::SymmetricRatio:
      return a >= b ? 2.0 - b / a : a / b;
    case TScoreKind::LogRatio:
      if (k == 0.0 && (a == 0.0 || b == 0.0)) {
        throw Error(errc::kDomainError, "logratio with kappa=0 is undefined at a zero score");
      }
      // Difference of logs keeps T(a,b) = -T(b,a) exact in floating point.
      return std::log(a + k) - std::log(b + k);
    case TScoreKind::RelativeDifference:
      return (a - b) / (a + b + k);
    case TScoreKind::Normalized:
      return (a - b) / std::sqrt(a + b + k);
  }
  return 0.0;
}

double solve_points_against(const TScoreVariant& variant, double a, double target) {
  if (!(a >= 0.0) || !std::isfinite(target)) {
    throw Error(errc::kDomainError, "invalid inversion input");
  }
  const double k = variant.kappa;
  double b = 0.0;
  switch (variant.kind) {
    case TScoreKind::Difference:
      b = a - target;
      break;
    case TScoreKind::SymmetricRatio:
      if (target >= 1.0) {
        b = a * (2.0 - target);
      } else if (target > 0.0) {
        b = a / target;
      } else {
        b = -1.0;
      }
      break;
    case TScoreKind::LogRatio:
      b = (a + k) * std::exp(-target) - k;
      break;
    case TScoreKind::RelativeDifference:
      b = target > -1.0 ? (a * (1.0 - target) - target * k) / (1.0 + target) : -1.0;
      break;
    case TScoreKind::Normalized: {
      const double root = 0.5 * (-target + std::sqrt(target * target + 4.0 * (2.0 * a + k)));
      b = root * root - a - k;
      break;
    }
  }
  if (!(b >= 0.0) || !std::isfinite(b)) {
    throw Error(errc::kDomainError, "no non-negative points-against value attains the target");
  }
  return b;
}

std::string_view variant_name(TScoreKind kind) noexcept {
  switch (kind) {
    case TScoreKind::Difference:
      return "diff";
    case TScoreKind::SymmetricRatio:
      return "symratio";
    case TScoreKind::LogRatio:
      return "logratio";
    case TScoreKind::RelativeDifference:
      return "reldiff";
    case TScoreKind::Normalized:
      return "normalized";
  }
  return "symratio";
}

TScoreKind parse_variant_kind(std::string_view name) {
  for (auto kind : {TScoreKind::Difference, TScoreKind::SymmetricRatio, TScoreKind::LogRatio,
                    TScoreKind::RelativeDifference, TScoreKind::Normalized}) {
    if (variant_name(kind) == name) return kind;
  }
  throw Error(errc::kInvalidConfig, "unknown T-score variant '" + std::string(name) + "'");
}

TScoreVariant parse_variant(std::string_view spec) {
  TScoreVariant v;
  const auto sep = spec.find_first_of(":,");
  v.kind = parse_variant_kind(spec.substr(0, sep));
  if (sep != std::string_view::npos) {
    auto rest = spec.substr(sep + 1);
    constexpr std::string_view key = "kappa=";
    if (rest.substr(0, key.size()) != key) {
      throw Error(errc::kInvalidConfig, "expected kappa=<float> in '" + std::string(spec) + "'");
    }
    v.kappa = parse_decimal(rest.substr(key.size()));
  }
  v.validate();
  return v;
}

std::string format_variant(const TScoreVariant& variant) {
  std::string out(variant_name(variant.kind));
  if (variant.kappa != 0.0) {
    out += ":kappa=" + format_decimal(variant.kappa);
  }
  return out;
}

}  // namespace tproc
