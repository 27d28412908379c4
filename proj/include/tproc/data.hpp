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

#include <filesystem>
#include <istream>
#include <map>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "tproc/flow.hpp"
#include "tproc/game.hpp"
#include "tproc/model.hpp"
#include "tproc/process.hpp"

namespace tproc {

// ---- CSV -------------------------------------------------------------------

/// Comma-separated, header row required, LF or CRLF, optional double quotes.
class CsvTable {
 public:
  static CsvTable read(std::istream& in, std::string source);
  static CsvTable read_file(const std::filesystem::path& path);

  /// Column index by header name; ParseError if absent.
  std::size_t column(std::string_view name) const;
  bool has_column(std::string_view name) const noexcept;
  std::size_t rows() const noexcept { return rows_.size(); }

  const std::string& text(std::size_t row, std::size_t col) const;
  double decimal(std::size_t row, std::size_t col) const;
  long integer(std::size_t row, std::size_t col) const;
  /// "source:line:column" for error messages.
  std::string where(std::size_t row, std::size_t col) const;

 private:
  std::string source_;
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
  std::vector<std::size_t> lines_;
};

void write_csv_row(std::ostream& out, std::span<const std::string> fields);

// ---- Game bundle -----------------------------------------------------------

/// games.csv: game_id, [team_id], opponent_id, final_a, final_b, grid_R
/// team_paths.csv: game_id, t_index, stat_id, value (score_for and
///   score_against carry the score paths)
/// player_paths.csv: game_id, player_id, t_index, stat_id, value
/// oncourt.csv: game_id, player_id, in_t, out_t
/// A player with no rows for a stat the team records carries zeros for it.
/// Every record is validated on load.
std::vector<GameRecord> parse_game_bundle(std::istream& games, std::istream& team_paths,
                                          std::istream& player_paths, std::istream& oncourt);
std::vector<GameRecord> load_game_bundle(const std::filesystem::path& dir);

void write_game_bundle(std::span<const GameRecord> games, std::ostream& games_csv, std::ostream& team_paths,
                       std::ostream& player_paths, std::ostream& oncourt);
void save_game_bundle(std::span<const GameRecord> games, const std::filesystem::path& dir);

// ---- Model file ------------------------------------------------------------

inline constexpr int kModelSchemaVersion = 1;

/// JSON with schema_version; every real is a 17-digit decimal string, so a
/// save/load round trip is bit-exact.
std::string model_to_json(const FittedModel& model);
/// Throws VersionMismatch for another schema_version and rejects models that
/// fail FittedModel::validate (e.g. tau2 inconsistent with alpha).
FittedModel model_from_json(std::string_view text);
void save_model(const FittedModel& model, const std::filesystem::path& path);
FittedModel load_model(const std::filesystem::path& path);

/// tfs.csv: team_id, tfs
std::map<std::string, double> load_tfs_table(const std::filesystem::path& path);
void write_tfs_table(const std::map<std::string, double>& table, std::ostream& out);

// ---- Outputs ---------------------------------------------------------------

/// t_index, t, a, b, mT, T_star, PW, iof
void write_replay_series(const ProcessPath& path, const IofResult& iof_result, std::ostream& out);

struct ReplaySummary {
  std::string game_id;
  double theta = 0.0;
  IofResult iof;
  double lower_bound = 0.0;
  StoppingTimes stops;
  double epsilon = 0.0;
};

/// game_id, theta, n_steps, steps, length, increment_sum, lower_bound,
/// reversal_time, epsilon, pw_drop_time
void write_iof_summary_header(std::ostream& out);
void write_iof_summary_row(const ReplaySummary& s, std::ostream& out);

/// game_id, player_id, minutes_fraction, pss, pcs, x_index, x_weighted, stats_x
void write_player_games(std::span<const GameEvaluation> games, std::ostream& out);
/// player_id, appearances, denominator, mean_pcs, mean_stats_x, pts
void write_player_totals(std::span<const PlayerTotal> totals, std::ostream& out);

/// Text file helpers that throw IoError.
std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace tproc
