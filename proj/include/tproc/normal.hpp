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

namespace tproc {

/// Standard normal density.
double normal_pdf(double x) noexcept;

/// Standard normal CDF. normal_cdf(-x) and normal_sf(x) are the same
/// floating-point computation, so the tail relation is exact.
double normal_cdf(double x) noexcept;

/// Upper tail 1 - Phi(x), computed without cancellation.
double normal_sf(double x) noexcept;

}  // namespace tproc
