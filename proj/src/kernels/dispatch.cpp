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

#include <atomic>
#include <cstdlib>
#include <string_view>

#include "tproc/kernels.hpp"

namespace tproc::kernels {

namespace {

Isa detect_best() noexcept {
#if defined(TPROC_HAVE_AVX2)
  if (isa_supported(Isa::Avx2)) {
    const char* env = std::getenv("TPROC_ISA");
    if (env != nullptr && std::string_view(env) == "scalar") return Isa::Scalar;
    return Isa::Avx2;
  }
#endif
  return Isa::Scalar;
}

std::atomic<Isa>& current() noexcept {
  static std::atomic<Isa> isa{detect_best()};
  return isa;
}

bool use_avx2() noexcept {
#if defined(TPROC_HAVE_AVX2)
  return current().load(std::memory_order_relaxed) == Isa::Avx2;
#else
  return false;
#endif
}

}  // namespace

const char* isa_name(Isa isa) noexcept { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

bool isa_supported(Isa isa) noexcept {
  switch (isa) {
    case Isa::Scalar:
      return true;
    case Isa::Avx2:
#if defined(TPROC_HAVE_AVX2)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
  }
  return false;
}

Isa active_isa() noexcept { return current().load(std::memory_order_relaxed); }

void set_active_isa(Isa isa) noexcept {
  if (isa_supported(isa)) current().store(isa, std::memory_order_relaxed);
}

#if defined(TPROC_HAVE_AVX2)
#define TPROC_DISPATCH(fn, ...) (use_avx2() ? avx2::fn(__VA_ARGS__) : scalar::fn(__VA_ARGS__))
#else
#define TPROC_DISPATCH(fn, ...) scalar::fn(__VA_ARGS__)
#endif

void standardize(std::span<const double> raw, std::span<const double> times, double m, double v,
                 std::span<double> out) noexcept {
  TPROC_DISPATCH(standardize, raw, times, m, v, out);
}

void axpy(double a, std::span<const double> x, std::span<double> y) noexcept {
  TPROC_DISPATCH(axpy, a, x, y);
}

void increments(std::span<const double> v, std::span<double> out) noexcept {
  TPROC_DISPATCH(increments, v, out);
}

std::size_t count_above(std::span<const double> x, double threshold) noexcept {
  return TPROC_DISPATCH(count_above, x, threshold);
}

std::size_t count_weighted_exceed(double base, std::span<const double> weights,
                                  std::span<const double> normals, std::size_t n,
                                  double threshold) noexcept {
  return TPROC_DISPATCH(count_weighted_exceed, base, weights, normals, n, threshold);
}

#undef TPROC_DISPATCH

}  // namespace tproc::kernels
