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
#include <cmath>
#include <fstream>
#include <map>
#include <optional>

#include "tproc/data.hpp"
#include "tproc/decimal.hpp"
#include "tproc/error.hpp"

namespace tproc {

namespace {

// Grid values for one path while rows arrive in any order.
struct PartialPath {
  std::vector<std::optional<double>> values;
};

struct PartialPlayer {
  std::string id;
  bool has_oncourt = false;
  std::vector<Interval> intervals;
  std::vector<std::string> stat_order;
  std::map<std::string, PartialPath> stats;
};

struct PartialGame {
  GameRecord record;
  std::vector<std::string> stat_order;
  std::map<std::string, PartialPath> team;
  std::vector<PartialPlayer> players;

  PartialPlayer& player(const std::string& id) {
    for (auto& p : players) {
      if (p.id == id) return p;
    }
    players.push_back({id, false, {}, {}, {}});
    return players.back();
  }
};

void put(std::vector<std::string>& order, std::map<std::string, PartialPath>& paths,
         const std::string& stat, int grid_R, const CsvTable& t, std::size_t row, std::size_t t_col,
         std::size_t v_col) {
  const long r = t.integer(row, t_col);
  if (r < 0 || r > grid_R) {
    throw Error(errc::kParseError, t.where(row, t_col) + ": t_index " + std::to_string(r) + " outside [0, " +
                                       std::to_string(grid_R) + "]");
  }
  auto it = paths.find(stat);
  if (it == paths.end()) {
    order.push_back(stat);
    it = paths.emplace(stat, PartialPath{std::vector<std::optional<double>>(static_cast<std::size_t>(grid_R) + 1)}).first;
  }
  auto& slot = it->second.values[static_cast<std::size_t>(r)];
  if (slot.has_value()) {
    throw Error(errc::kParseError, t.where(row, t_col) + ": duplicate value for stat '" + stat + "' at t_index " +
                                       std::to_string(r));
  }
  slot = t.decimal(row, v_col);
}

std::vector<double> complete(const PartialPath& p, const std::string& game, const std::string& label) {
  std::vector<double> out;
  for (std::size_t r = 0; r < p.values.size(); ++r) {
    if (!p.values[r].has_value()) {
      throw Error(errc::kConsistencyError,
                  "game '" + game + "' " + label + " has no value at grid index " + std::to_string(r));
    }
    out.push_back(*p.values[r]);
  }
  return out;
}

PartialGame& find_game(std::map<std::string, std::size_t>& index, std::vector<PartialGame>& games,
                       const CsvTable& t, std::size_t row, std::size_t col) {
  auto it = index.find(t.text(row, col));
  if (it == index.end()) {
    throw Error(errc::kParseError, t.where(row, col) + ": game '" + t.text(row, col) + "' is not in games.csv");
  }
  return games[it->second];
}

}  // namespace

std::vector<GameRecord> parse_game_bundle(std::istream& games_in, std::istream& team_in, std::istream& player_in,
                                          std::istream& oncourt_in) {
  std::vector<PartialGame> games;
  std::map<std::string, std::size_t> index;

  const CsvTable gt = CsvTable::read(games_in, "games.csv");
  {
    const auto c_id = gt.column("game_id");
    const auto c_opp = gt.column("opponent_id");
    const auto c_a = gt.column("final_a");
    const auto c_b = gt.column("final_b");
    const auto c_r = gt.column("grid_R");
    const bool has_team = gt.has_column("team_id");
    const auto c_team = has_team ? gt.column("team_id") : 0;
    for (std::size_t i = 0; i < gt.rows(); ++i) {
      PartialGame g;
      g.record.game_id = gt.text(i, c_id);
      if (has_team) g.record.team_id = gt.text(i, c_team);
      g.record.opponent_id = gt.text(i, c_opp);
      g.record.final_score = {gt.decimal(i, c_a), gt.decimal(i, c_b)};
      const long big_r = gt.integer(i, c_r);
      if (big_r < 2 || big_r > 100000) throw Error(errc::kParseError, gt.where(i, c_r) + ": grid_R must be >= 2");
      g.record.grid_R = static_cast<int>(big_r);
      if (!index.emplace(g.record.game_id, games.size()).second) {
        throw Error(errc::kParseError, gt.where(i, c_id) + ": duplicate game '" + g.record.game_id + "'");
      }
      games.push_back(std::move(g));
    }
  }

  const CsvTable tt = CsvTable::read(team_in, "team_paths.csv");
  {
    const auto c_id = tt.column("game_id");
    const auto c_t = tt.column("t_index");
    const auto c_s = tt.column("stat_id");
    const auto c_v = tt.column("value");
    for (std::size_t i = 0; i < tt.rows(); ++i) {
      PartialGame& g = find_game(index, games, tt, i, c_id);
      put(g.stat_order, g.team, tt.text(i, c_s), g.record.grid_R, tt, i, c_t, c_v);
    }
  }

  const CsvTable ot = CsvTable::read(oncourt_in, "oncourt.csv");
  {
    const auto c_id = ot.column("game_id");
    const auto c_p = ot.column("player_id");
    const auto c_in = ot.column("in_t");
    const auto c_out = ot.column("out_t");
    for (std::size_t i = 0; i < ot.rows(); ++i) {
      PartialGame& g = find_game(index, games, ot, i, c_id);
      PartialPlayer& p = g.player(ot.text(i, c_p));
      p.has_oncourt = true;
      p.intervals.push_back({ot.decimal(i, c_in), ot.decimal(i, c_out)});
    }
  }

  const CsvTable pt = CsvTable::read(player_in, "player_paths.csv");
  {
    const auto c_id = pt.column("game_id");
    const auto c_p = pt.column("player_id");
    const auto c_t = pt.column("t_index");
    const auto c_s = pt.column("stat_id");
    const auto c_v = pt.column("value");
    for (std::size_t i = 0; i < pt.rows(); ++i) {
      PartialGame& g = find_game(index, games, pt, i, c_id);
      PartialPlayer& p = g.player(pt.text(i, c_p));
      put(p.stat_order, p.stats, pt.text(i, c_s), g.record.grid_R, pt, i, c_t, c_v);
    }
  }

  std::vector<GameRecord> out;
  for (auto& g : games) {
    GameRecord& rec = g.record;
    const auto times = grid_times(rec.grid_R);
    for (const auto& id : g.stat_order) {
      auto values = complete(g.team.at(id), rec.game_id, "stat '" + id + "'");
      if (id == kScoreFor) {
        rec.score_for = std::move(values);
      } else if (id == kScoreAgainst) {
        rec.score_against = std::move(values);
      } else {
        rec.team_stats.push_back({id, times, std::move(values)});
      }
    }
    if (rec.score_for.empty() || rec.score_against.empty()) {
      throw Error(errc::kConsistencyError, "game '" + rec.game_id + "' lacks score_for/score_against paths");
    }
    for (auto& p : g.players) {
      if (!p.has_oncourt) {
        throw Error(errc::kConsistencyError,
                    "game '" + rec.game_id + "' player '" + p.id + "' has stats but no on-court interval");
      }
      PlayerRecord pr;
      pr.player_id = p.id;
      pr.span = {p.id, std::move(p.intervals)};
      for (const auto& id : p.stat_order) {
        if (rec.find_team_stat(id) == nullptr) {
          throw Error(errc::kConsistencyError,
                      "game '" + rec.game_id + "' player '" + p.id + "' has stat '" + id + "' missing at team level");
        }
      }
      for (const auto& team : rec.team_stats) {
        auto it = p.stats.find(team.stat_id);
        std::vector<double> values = it == p.stats.end()
                                         ? std::vector<double>(times.size(), 0.0)
                                         : complete(it->second, rec.game_id,
                                                    "player '" + p.id + "' stat '" + team.stat_id + "'");
        pr.stats.push_back({team.stat_id, times, std::move(values)});
      }
      rec.players.push_back(std::move(pr));
    }
    rec.validate();
    out.push_back(std::move(rec));
  }
  return out;
}

std::vector<GameRecord> load_game_bundle(const std::filesystem::path& dir) {
  auto open = [&](const char* name) {
    std::ifstream in(dir / name, std::ios::binary);
    if (!in) throw Error(errc::kIoError, "cannot open '" + (dir / name).string() + "'");
    return in;
  };
  auto g = open("games.csv");
  auto t = open("team_paths.csv");
  auto p = open("player_paths.csv");
  auto o = open("oncourt.csv");
  return parse_game_bundle(g, t, p, o);
}

void write_game_bundle(std::span<const GameRecord> games, std::ostream& games_csv, std::ostream& team_paths,
                       std::ostream& player_paths, std::ostream& oncourt) {
  const std::vector<std::string> gh{"game_id", "team_id", "opponent_id", "final_a", "final_b", "grid_R"};
  const std::vector<std::string> th{"game_id", "t_index", "stat_id", "value"};
  const std::vector<std::string> ph{"game_id", "player_id", "t_index", "stat_id", "value"};
  const std::vector<std::string> oh{"game_id", "player_id", "in_t", "out_t"};
  write_csv_row(games_csv, gh);
  write_csv_row(team_paths, th);
  write_csv_row(player_paths, ph);
  write_csv_row(oncourt, oh);
  for (const auto& g : games) {
    const std::vector<std::string> row{g.game_id, g.team_id, g.opponent_id, format_decimal(g.final_score.a),
                                       format_decimal(g.final_score.b), std::to_string(g.grid_R)};
    write_csv_row(games_csv, row);
    auto team_rows = [&](const std::string& id, const std::vector<double>& values) {
      for (std::size_t r = 0; r < values.size(); ++r) {
        const std::vector<std::string> f{g.game_id, std::to_string(r), id, format_decimal(values[r])};
        write_csv_row(team_paths, f);
      }
    };
    for (const auto& s : g.team_stats) team_rows(s.stat_id, s.values);
    team_rows(std::string(kScoreFor), g.score_for);
    team_rows(std::string(kScoreAgainst), g.score_against);
    for (const auto& p : g.players) {
      for (const auto& iv : p.span.intervals) {
        const std::vector<std::string> f{g.game_id, p.player_id, format_decimal(iv.lo), format_decimal(iv.hi)};
        write_csv_row(oncourt, f);
      }
      for (const auto& s : p.stats) {
        for (std::size_t r = 0; r < s.values.size(); ++r) {
          const std::vector<std::string> f{g.game_id, p.player_id, std::to_string(r), s.stat_id,
                                           format_decimal(s.values[r])};
          write_csv_row(player_paths, f);
        }
      }
    }
  }
}

void save_game_bundle(std::span<const GameRecord> games, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  auto open = [&](const char* name) {
    std::ofstream out(dir / name, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(errc::kIoError, "cannot write '" + (dir / name).string() + "'");
    return out;
  };
  auto g = open("games.csv");
  auto t = open("team_paths.csv");
  auto p = open("player_paths.csv");
  auto o = open("oncourt.csv");
  write_game_bundle(games, g, t, p, o);
}

}  // namespace tproc
