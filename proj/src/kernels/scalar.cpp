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

#include "tproc/kernels.hpp"

namespace tproc::kernels::scalar {

void standardize(std::span<const double> raw, std::span<const double> times, double m, double v,
                 std::span<double> out) noexcept {
  for (std::size_t i = 0; i < raw.size(); ++i) {
    out[i] = (raw[i] - m * times[i]) / v;
  }
}

void axpy(double a, std::span<const double> x, std::span<double> y) noexcept {
  for (std::size_t i = 0; i < x.size(); ++i) {
    y[i] = y[i] + a * x[i];
  }
}

void increments(std::span<const double> v, std::span<double> out) noexcept {
  for (std::size_t i = 0; i + 1 < v.size(); ++i) {
    out[i] = v[i + 1] - v[i];
  }
}

std::size_t count_above(std::span<const double> x, double threshold) noexcept {
  std::size_t n = 0;
  for (double value : x) {
    n += value > threshold ? 1 : 0;
  }
  return n;
}

std::size_t count_weighted_exceed(double base, std::span<const double> weights,
                                  std::span<const double> normals, std::size_t n,
                                  double threshold) noexcept {
  std::size_t hits = 0;
  for (std::size_t p = 0; p < n; ++p) {
    double acc = base;
    for (std::size_t k = 0; k < weights.size(); ++k) {
      acc = acc + weights[k] * normals[k * n + p];
    }
    hits += acc > threshold ? 1 : 0;
  }
  return hits;
}

}  // namespace tproc::kernels::scalar
