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

#include <cstdint>
#include <random>
#include <span>

namespace tproc {

/// mt19937_64 keyed by (seed, stream) through std::seed_seq. Both algorithms
/// are fully specified by the standard, and the variates below are computed
/// in-house rather than through <random> distributions (whose algorithms are
/// implementation-defined), so a given key yields the same numbers on every
/// conforming platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t next_u64() { return engine_(); }
  /// [0, 1) with 53 random bits.
  double uniform();
  /// (0, 1): never returns an endpoint.
  double uniform_open();
  /// Standard normal (Marsaglia polar; the second variate is cached).
  double normal();
  /// Inversion below mean 10, Hormann's PTRS above.
  std::uint64_t poisson(double mean);
  /// Index drawn with probability proportional to weights.
  std::size_t categorical(std::span<const double> weights);

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace tproc
