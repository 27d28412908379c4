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

// Data-parallel inner loops. Every kernel has a scalar reference in
// kernels::scalar and, on x86-64, an AVX2 variant in kernels::avx2. The
// unqualified entry points dispatch once at startup on CPU support.
//
// All variants perform the same IEEE operations in the same order per
// element, so results are bit-identical across ISAs (the build uses
// -ffp-contract=off). Tests in tests/kernels_test.cpp hold them to that.

#pragma once

#include <cstddef>
#include <span>

namespace tproc::kernels {

enum class Isa { Scalar, Avx2 };

const char* isa_name(Isa isa) noexcept;
bool isa_supported(Isa isa) noexcept;

/// The ISA the dispatching entry points currently use. Defaults to the best
/// supported one; TPROC_ISA=scalar in the environment forces the reference.
Isa active_isa() noexcept;
/// Test hook. Ignored if the ISA is not supported on this CPU.
void set_active_isa(Isa isa) noexcept;

/// out[i] = (raw[i] - m * times[i]) / v
void standardize(std::span<const double> raw, std::span<const double> times, double m, double v,
                 std::span<double> out) noexcept;

/// y[i] += a * x[i]
void axpy(double a, std::span<const double> x, std::span<double> y) noexcept;

/// out[i] = v[i + 1] - v[i]; out.size() == v.size() - 1
void increments(std::span<const double> v, std::span<double> out) noexcept;

/// Number of i with x[i] > threshold.
std::size_t count_above(std::span<const double> x, double threshold) noexcept;

/// Number of paths p in [0, n) with
///   base + sum_k weights[k] * normals[k * n + p] > threshold,
/// the sum accumulated in k order starting from base.
std::size_t count_weighted_exceed(double base, std::span<const double> weights,
                                  std::span<const double> normals, std::size_t n,
                                  double threshold) noexcept;

namespace scalar {
void standardize(std::span<const double> raw, std::span<const double> times, double m, double v,
                 std::span<double> out) noexcept;
void axpy(double a, std::span<const double> x, std::span<double> y) noexcept;
void increments(std::span<const double> v, std::span<double> out) noexcept;
std::size_t count_above(std::span<const double> x, double threshold) noexcept;
std::size_t count_weighted_exceed(double base, std::span<const double> weights,
                                  std::span<const double> normals, std::size_t n,
                                  double threshold) noexcept;
}  // namespace scalar

#if defined(TPROC_HAVE_AVX2)
namespace avx2 {
void standardize(std::span<const double> raw, std::span<const double> times, double m, double v,
                 std::span<double> out) noexcept;
void axpy(double a, std::span<const double> x, std::span<double> y) noexcept;
void increments(std::span<const double> v, std::span<double> out) noexcept;
std::size_t count_above(std::span<const double> x, double threshold) noexcept;
std::size_t count_weighted_exceed(double base, std::span<const double> weights,
                                  std::span<const double> normals, std::size_t n,
                                  double threshold) noexcept;
}  // namespace avx2
#endif

}  // namespace tproc::kernels
