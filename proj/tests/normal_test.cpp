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

#include <boost/math/special_functions/erf.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>

#include "tproc/normal.hpp"

using namespace tproc;
using Big = boost::multiprecision::cpp_bin_float_50;

namespace {

double oracle_cdf(double x) {
  const Big v = Big(0.5) * boost::math::erfc(-Big(x) / boost::multiprecision::sqrt(Big(2)));
  return static_cast<double>(v);
}

}  // namespace

TEST_CASE("normal primitives at reference points") {
  CHECK(normal_cdf(0.0) == 0.5);
  CHECK(std::abs(normal_cdf(1.959964) - 0.975) <= 1e-6);
  CHECK(normal_pdf(0.0) == doctest::Approx(0.3989423).epsilon(1e-7));
  CHECK(normal_pdf(0.0) == doctest::Approx(1.0 / std::sqrt(2.0 * M_PI)).epsilon(1e-15));
}

TEST_CASE("normal cdf against a 50-digit oracle on [-8, 8]") {
  double worst = 0.0;
  for (int i = -1600; i <= 1600; ++i) {
    const double x = i / 200.0;
    worst = std::max(worst, std::abs(normal_cdf(x) - oracle_cdf(x)));
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("survival function is the reflected cdf") {
  for (int i = -800; i <= 800; ++i) {
    const double x = i / 100.0;
    CHECK(normal_sf(x) == normal_cdf(-x));
    CHECK(std::abs(normal_cdf(-x) - (1.0 - normal_cdf(x))) <= 2e-16);
  }
}
