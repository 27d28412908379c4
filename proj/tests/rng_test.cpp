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
#include <doctest.h>

#include <cmath>
#include <vector>

#include "tproc/error.hpp"
#include "tproc/rng.hpp"

using namespace tproc;

TEST_CASE("streams are reproducible and distinct") {
  Rng a(7, 0);
  Rng b(7, 0);
  Rng c(7, 1);
  Rng d(8, 0);
  int same_c = 0;
  int same_d = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto x = a.next_u64();
    CHECK(x == b.next_u64());
    same_c += x == c.next_u64();
    same_d += x == d.next_u64();
  }
  CHECK(same_c == 0);
  CHECK(same_d == 0);
}

TEST_CASE("uniform ranges") {
  Rng r(1);
  for (int i = 0; i < 100000; ++i) {
    const double u = r.uniform();
    CHECK_FALSE(u < 0.0);
    CHECK_FALSE(u >= 1.0);
    const double v = r.uniform_open();
    CHECK_FALSE(v <= 0.0);
    CHECK_FALSE(v >= 1.0);
  }
}

TEST_CASE("normal moments") {
  Rng r(2);
  const int n = 200000;
  double s1 = 0.0;
  double s2 = 0.0;
  double s4 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double z = r.normal();
    s1 += z;
    s2 += z * z;
    s4 += z * z * z * z;
  }
  CHECK(std::abs(s1 / n) < 5.0 / std::sqrt(n));
  CHECK(std::abs(s2 / n - 1.0) < 5.0 * std::sqrt(2.0 / n));
  CHECK(std::abs(s4 / n - 3.0) < 5.0 * std::sqrt(96.0 / n));
}

TEST_CASE("poisson moments across both samplers") {
  for (double lambda : {0.3, 4.0, 9.9, 10.0, 45.0, 1e4}) {
    Rng r(3, static_cast<std::uint64_t>(lambda * 10));
    const int n = 100000;
    double s1 = 0.0;
    double s2 = 0.0;
    for (int i = 0; i < n; ++i) {
      const double k = static_cast<double>(r.poisson(lambda));
      s1 += k;
      s2 += k * k;
    }
    const double mean = s1 / n;
    const double var = s2 / n - mean * mean;
    INFO("lambda=", lambda);
    CHECK(std::abs(mean - lambda) < 5.0 * std::sqrt(lambda / n));
    CHECK(std::abs(var / lambda - 1.0) < 5.0 * std::sqrt(2.0 / n) + 5.0 / std::sqrt(lambda * n));
  }
  Rng r(4);
  CHECK(r.poisson(0.0) == 0);
  CHECK_THROWS_AS(r.poisson(-1.0), Error);
}

TEST_CASE("poisson probabilities in the transformed rejection regime") {
  Rng r(5);
  const double lambda = 20.0;
  const int n = 200000;
  std::vector<int> counts(80, 0);
  for (int i = 0; i < n; ++i) {
    const auto k = r.poisson(lambda);
    if (k < counts.size()) counts[k] += 1;
  }
  for (int k = 10; k <= 30; ++k) {
    const double p = std::exp(-lambda + k * std::log(lambda) - std::lgamma(k + 1.0));
    INFO("k=", k);
    CHECK(std::abs(counts[k] / double(n) - p) < 5.0 * std::sqrt(p * (1 - p) / n));
  }
}

TEST_CASE("categorical frequencies") {
  Rng r(6);
  const std::vector<double> w{0.2, 0.0, 0.55, 0.25};
  std::vector<int> counts(4, 0);
  const int n = 100000;
  for (int i = 0; i < n; ++i) counts[r.categorical(w)] += 1;
  CHECK(counts[1] == 0);
  for (std::size_t i = 0; i < w.size(); ++i) {
    CHECK(std::abs(counts[i] / double(n) - w[i]) < 5.0 * std::sqrt(w[i] * (1 - w[i]) / n) + 1e-12);
  }
  const std::vector<double> zero{0.0, 0.0};
  CHECK_THROWS_AS(r.categorical(zero), Error);
}
