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

#include <string>
#include <vector>

#include "tproc/data.hpp"
#include "tproc/game.hpp"
#include "tproc/model.hpp"

namespace tproc::testing {

inline std::string fixture(const std::string& rel) { return std::string(TPROC_FIXTURE_DIR) + "/" + rel; }

/// Digitized mT / PW series shipped with a fixture.
struct Digitized {
  std::vector<double> mt;
  std::vector<double> pw;
};

inline Digitized load_digitized(const std::string& name) {
  const CsvTable t = CsvTable::read_file(fixture(name + "/digitized.csv"));
  Digitized d;
  for (std::size_t i = 0; i < t.rows(); ++i) {
    d.mt.push_back(t.decimal(i, t.column("mT")));
    d.pw.push_back(t.decimal(i, t.column("PW")));
  }
  return d;
}

inline FittedModel chiba_model() { return load_model(fixture("chiba_model.json")); }

/// Model on the given stats with unit scalers, for hand-checkable arithmetic.
inline FittedModel toy_model(double alpha0, std::vector<double> alpha, double sigma2,
                             std::vector<std::string> ids = {}) {
  FittedModel m;
  m.team_id = "toy";
  m.alpha0 = alpha0;
  m.alpha = std::move(alpha);
  m.sigma2 = sigma2;
  m.tau2 = sum_of_squares(m.alpha);
  if (ids.empty()) {
    for (std::size_t i = 0; i < m.alpha.size(); ++i) ids.push_back("S" + std::to_string(i + 1));
  }
  m.stat_ids = ids;
  for (const auto& id : ids) m.scaler.add(id, {10.0, 2.0});
  return m;
}

}  // namespace tproc::testing
