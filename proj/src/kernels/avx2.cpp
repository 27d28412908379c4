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

// Compiled with -mavx2 only. Reached solely through the dispatcher after a
// CPUID check. Tails fall through to the scalar reference.

#include <immintrin.h>

#include <bit>
#include <cstdint>

#include "tproc/kernels.hpp"

namespace tproc::kernels::avx2 {

namespace {
constexpr std::size_t kLanes = 4;
}  // namespace

void standardize(std::span<const double> raw, std::span<const double> times, double m, double v,
                 std::span<double> out) noexcept {
  const std::size_t n = raw.size();
  const __m256d vm = _mm256_set1_pd(m);
  const __m256d vv = _mm256_set1_pd(v);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256d r = _mm256_loadu_pd(raw.data() + i);
    const __m256d t = _mm256_loadu_pd(times.data() + i);
    const __m256d num = _mm256_sub_pd(r, _mm256_mul_pd(vm, t));
    _mm256_storeu_pd(out.data() + i, _mm256_div_pd(num, vv));
  }
  scalar::standardize(raw.subspan(i), times.subspan(i), m, v, out.subspan(i));
}

void axpy(double a, std::span<const double> x, std::span<double> y) noexcept {
  const std::size_t n = x.size();
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256d xv = _mm256_loadu_pd(x.data() + i);
    const __m256d yv = _mm256_loadu_pd(y.data() + i);
    _mm256_storeu_pd(y.data() + i, _mm256_add_pd(yv, _mm256_mul_pd(va, xv)));
  }
  scalar::axpy(a, x.subspan(i), y.subspan(i));
}

void increments(std::span<const double> v, std::span<double> out) noexcept {
  if (v.size() < 2) return;
  const std::size_t n = v.size() - 1;
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256d lo = _mm256_loadu_pd(v.data() + i);
    const __m256d hi = _mm256_loadu_pd(v.data() + i + 1);
    _mm256_storeu_pd(out.data() + i, _mm256_sub_pd(hi, lo));
  }
  scalar::increments(v.subspan(i), out.subspan(i));
}

std::size_t count_above(std::span<const double> x, double threshold) noexcept {
  const std::size_t n = x.size();
  const __m256d th = _mm256_set1_pd(threshold);
  std::size_t hits = 0;
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256d cmp = _mm256_cmp_pd(_mm256_loadu_pd(x.data() + i), th, _CMP_GT_OQ);
    hits += static_cast<std::size_t>(std::popcount(static_cast<unsigned>(_mm256_movemask_pd(cmp))));
  }
  return hits + scalar::count_above(x.subspan(i), threshold);
}

std::size_t count_weighted_exceed(double base, std::span<const double> weights,
                                  std::span<const double> normals, std::size_t n,
                                  double threshold) noexcept {
  const __m256d th = _mm256_set1_pd(threshold);
  const __m256d vbase = _mm256_set1_pd(base);
  std::size_t hits = 0;
  std::size_t p = 0;
  for (; p + kLanes <= n; p += kLanes) {
    __m256d acc = vbase;
    for (std::size_t k = 0; k < weights.size(); ++k) {
      const __m256d w = _mm256_set1_pd(weights[k]);
      const __m256d z = _mm256_loadu_pd(normals.data() + k * n + p);
      acc = _mm256_add_pd(acc, _mm256_mul_pd(w, z));
    }
    const __m256d cmp = _mm256_cmp_pd(acc, th, _CMP_GT_OQ);
    hits += static_cast<std::size_t>(std::popcount(static_cast<unsigned>(_mm256_movemask_pd(cmp))));
  }
  // Tail paths: same per-path arithmetic as the scalar reference.
  for (; p < n; ++p) {
    double acc = base;
    for (std::size_t k = 0; k < weights.size(); ++k) {
      acc = acc + weights[k] * normals[k * n + p];
    }
    hits += acc > threshold ? 1 : 0;
  }
  return hits;
}

}  // namespace tproc::kernels::avx2
