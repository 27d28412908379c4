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

#include "tproc/normal.hpp"

#include <cmath>

namespace tproc {

namespace {
constexpr double kInvSqrt2 = 0.70710678118654752440;
}  // namespace

double normal_pdf(double x) noexcept {
  constexpr double kInvSqrt2Pi = 0.39894228040143267794;
  return kInvSqrt2Pi * std::exp(-0.5 * x * x);
}

// Phi(x) = erfc(-x/sqrt2)/2. erfc keeps full relative accuracy in the lower
// tail; for x > 0 the result is near 1 and absolute accuracy is what matters.
double normal_cdf(double x) noexcept { return 0.5 * std::erfc(-x * kInvSqrt2); }

double normal_sf(double x) noexcept { return normal_cdf(-x); }

}  // namespace tproc
