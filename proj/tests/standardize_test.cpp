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

#include "tproc/error.hpp"
#include "tproc/standardize.hpp"

using namespace tproc;

TEST_CASE("scale from finals") {
  const std::vector<double> a{80, 90, 100};
  const StatScale s = fit_scale(a);
  CHECK(s.m == 90.0);
  CHECK(s.v == 10.0);

  const std::vector<double> b{0, 2};
  const StatScale s2 = fit_scale(b);
  CHECK(s2.m == 1.0);
  CHECK(s2.v == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));

  const std::vector<double> flat{5, 5, 5};
  CHECK_THROWS_WITH_AS(fit_scale(flat), doctest::Contains("DegenerateStat"), Error);
  const std::vector<double> one{5};
  CHECK_THROWS_AS(fit_scale(one), Error);
}

TEST_CASE("standardizing a path") {
  Standardizer sc;
  sc.add("PTs", {90.0, 10.0});
  const auto times = grid_times(4);

  std::vector<double> pace;
  for (double t : times) pace.push_back(90.0 * t);
  const StatPath flat = standardize_path(make_grid_path("PTs", pace), sc);
  for (double x : flat.values) CHECK(x == 0.0);

  const StatPath z = standardize_path(make_grid_path("PTs", {0, 20, 50, 70, 100}), sc);
  CHECK(z.values.front() == 0.0);
  CHECK(z.values.back() == 1.0);

  CHECK_THROWS_WITH_AS(standardize_path(make_grid_path("AS", {0, 1, 2, 3, 4}), sc),
                       doctest::Contains("MissingScaler"), Error);
}

TEST_CASE("property: S v + m t recovers the raw path") {
  Standardizer sc;
  sc.add("DR", {27.0, 4.5});
  const std::vector<double> raw{0, 1, 3, 3, 6, 9, 12, 14, 20, 22, 30};
  const StatPath s = standardize_path(make_grid_path("DR", raw), sc);
  for (std::size_t r = 0; r < raw.size(); ++r) {
    CHECK(s.values[r] * 4.5 + 27.0 * s.times[r] == doctest::Approx(raw[r]).epsilon(1e-13));
  }
}

TEST_CASE("player paths sum to the team path") {
  Standardizer sc;
  sc.add("AS", {20.0, 4.0});
  const std::vector<double> p1{0, 2, 5, 6, 9};
  const std::vector<double> p2{0, 1, 1, 4, 7};
  const std::vector<double> p3{0, 0, 3, 3, 4};
  std::vector<double> team(5);
  for (int r = 0; r < 5; ++r) team[r] = p1[r] + p2[r] + p3[r];
  const auto t = standardize_path(make_grid_path("AS", team), sc);
  const auto a = standardize_player_path(make_grid_path("AS", p1), sc, 3);
  const auto b = standardize_player_path(make_grid_path("AS", p2), sc, 3);
  const auto c = standardize_player_path(make_grid_path("AS", p3), sc, 3);
  for (int r = 0; r < 5; ++r) CHECK(a.values[r] + b.values[r] + c.values[r] == doctest::Approx(t.values[r]).epsilon(1e-13));
}

TEST_CASE("standardizer bookkeeping") {
  Standardizer sc;
  sc.add("PTs", {1.0, 2.0});
  CHECK(sc.contains("PTs"));
  CHECK_FALSE(sc.contains("FGM"));
  CHECK_THROWS_AS(sc.add("PTs", {1.0, 2.0}), Error);
  CHECK_THROWS_AS(sc.add("FGM", {1.0, 0.0}), Error);
  const std::vector<StatFinals> finals{{"PTs", {80, 90, 100}}, {"AS", {10, 20, 30}}};
  const Standardizer fitted = fit_standardizer(finals);
  CHECK(fitted.at("AS").m == 20.0);
  CHECK(fitted.entries().front().first == "PTs");
}
