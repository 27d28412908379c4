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

#include <cstdlib>
#include <filesystem>
#include <map>
#include <sys/wait.h>

#include "helpers.hpp"
#include "tproc/data.hpp"

using namespace tproc;
namespace fs = std::filesystem;

namespace {

const fs::path kWork = fs::current_path() / "cli_test_work";

int run(const std::string& args, const std::string& err_name = "stderr.txt") {
  fs::create_directories(kWork);
  const std::string cmd = std::string("\"") + TPROC_CLI + "\" " + args + " > \"" + (kWork / "stdout.txt").string() +
                          "\" 2> \"" + (kWork / err_name).string() + "\"";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::map<std::string, std::string> tree(const fs::path& dir) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::recursive_directory_iterator(dir)) {
    if (e.is_regular_file()) out[fs::relative(e.path(), dir).string()] = read_text_file(e.path());
  }
  return out;
}

std::string q(const fs::path& p) { return "\"" + p.string() + "\""; }

}  // namespace

TEST_CASE("simulate, fit and replay are byte-identical across runs") {
  fs::remove_all(kWork);
  for (const char* tag : {"one", "two"}) {
    const fs::path d = kWork / tag;
    REQUIRE(run("simulate --seed 11 --teams 2 --games 30 --out " + q(d / "league")) == 0);
    REQUIRE(run("fit --games " + q(d / "league") + " --team all --out " + q(d / "models") + " --tfs-out " +
                q(d / "tfs.csv")) == 0);
    REQUIRE(run("replay --games " + q(d / "league") + " --model " + q(d / "models" / "T1.json") + " --tfs-table " +
                q(d / "tfs.csv") + " --game T1-0001 --out " + q(d / "replay")) == 0);
  }
  const auto one = tree(kWork / "one");
  const auto two = tree(kWork / "two");
  CHECK(one.size() >= 10);
  CHECK(one == two);
  CHECK(one.count("league/truth.json") == 1);
  CHECK(one.count("replay/T1-0001.csv") == 1);
  CHECK(one.count("replay/iof_summary.csv") == 1);

  REQUIRE(run("simulate --seed 12 --teams 2 --games 30 --out " + q(kWork / "three" / "league")) == 0);
  CHECK(tree(kWork / "three" / "league") != tree(kWork / "one" / "league"));
}

TEST_CASE("replay and evaluate on the loss fixture") {
  const fs::path out = kWork / "fixture";
  fs::remove_all(out);
  REQUIRE(run("replay --games " + q(testing::fixture("ryukyu_loss")) + " --model " +
              q(testing::fixture("chiba_model.json")) + " --tfs-table " + q(testing::fixture("tfs.csv")) +
              " --pw-anchor mt --out " + q(out / "replay")) == 0);
  const CsvTable summary = CsvTable::read_file(out / "replay" / "iof_summary.csv");
  REQUIRE(summary.rows() == 1);
  CHECK(summary.decimal(0, summary.column("theta")) == 0.0148);
  CHECK(summary.text(0, summary.column("steps")) == "13 22 26 34");
  CHECK(summary.text(0, summary.column("reversal_time")) == "0.074999999999999997");
  const CsvTable series = CsvTable::read_file(out / "replay" / "chiba-vs-ryukyu.csv");
  CHECK(series.rows() == 41);
  CHECK(series.text(40, series.column("PW")) == "0");

  REQUIRE(run("evaluate --games " + q(testing::fixture("ryukyu_loss")) + " --model " +
              q(testing::fixture("chiba_model.json")) + " --opponent-tfs 1.088059 --out " + q(out / "eval")) == 0);
  const CsvTable totals = CsvTable::read_file(out / "eval" / "player_totals.csv");
  CHECK(totals.rows() == 9);
  double sum_pcs = 0.0;
  const CsvTable per_game = CsvTable::read_file(out / "eval" / "player_games.csv");
  for (std::size_t i = 0; i < per_game.rows(); ++i) sum_pcs += per_game.decimal(i, per_game.column("pcs"));
  CHECK(sum_pcs == doctest::Approx(1.140517).epsilon(1e-12));
}

TEST_CASE("errors are reported on one line with a category") {
  CHECK(run("fit --games " + q(kWork / "does-not-exist") + " --out " + q(kWork / "m.json"), "err1.txt") == 1);
  const std::string err = read_text_file(kWork / "err1.txt");
  CHECK(err.rfind("error: IoError: ", 0) == 0);
  CHECK(err.find('\n') == err.size() - 1);

  CHECK(run("replay --games " + q(testing::fixture("ryukyu_loss")) + " --model " +
                q(testing::fixture("chiba_model.json")) + " --opponent-tfs 1 --pw-anchor sideways --out " +
                q(kWork / "x"),
            "err2.txt") == 1);
  CHECK(read_text_file(kWork / "err2.txt").rfind("error: InvalidConfig: ", 0) == 0);

  CHECK(run("evaluate --games " + q(testing::fixture("ryukyu_loss")) + " --model " +
                q(testing::fixture("chiba_model.json")) + " --opponent-tfs 1 --stats-x cubic --out " + q(kWork / "y"),
            "err3.txt") == 1);
  CHECK(run("fit", "err4.txt") != 0);
}
