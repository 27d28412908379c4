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
#include <charconv>
#include <fstream>
#include <sstream>

#include "tproc/data.hpp"
#include "tproc/decimal.hpp"
#include "tproc/error.hpp"

namespace tproc {

namespace {

std::vector<std::string> split_line(const std::string& line, const std::string& where) {
  std::vector<std::string> out;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        field += '"';
        ++i;
      } else if (ch == '"') {
        quoted = false;
      } else {
        field += ch;
      }
    } else if (ch == '"' && field.empty()) {
      quoted = true;
    } else if (ch == ',') {
      out.push_back(std::move(field));
      field.clear();
    } else {
      field += ch;
    }
  }
  if (quoted) throw Error(errc::kParseError, where + ": unterminated quoted field");
  out.push_back(std::move(field));
  return out;
}

}  // namespace

CsvTable CsvTable::read(std::istream& in, std::string source) {
  CsvTable t;
  t.source_ = std::move(source);
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::string where = t.source_ + ":" + std::to_string(line_no);
    auto fields = split_line(line, where);
    if (!have_header) {
      if (line_no == 1 && fields[0].rfind("\xEF\xBB\xBF", 0) == 0) fields[0].erase(0, 3);
      t.header_ = std::move(fields);
      have_header = true;
      continue;
    }
    if (fields.size() != t.header_.size()) {
      throw Error(errc::kParseError, where + ": expected " + std::to_string(t.header_.size()) + " fields, got " +
                                         std::to_string(fields.size()));
    }
    t.rows_.push_back(std::move(fields));
    t.lines_.push_back(line_no);
  }
  if (!have_header) throw Error(errc::kParseError, t.source_ + ": missing header row");
  return t;
}

CsvTable CsvTable::read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(errc::kIoError, "cannot open '" + path.string() + "'");
  return read(in, path.filename().string());
}

bool CsvTable::has_column(std::string_view name) const noexcept {
  for (const auto& h : header_) {
    if (h == name) return true;
  }
  return false;
}

std::size_t CsvTable::column(std::string_view name) const {
  for (std::size_t i = 0; i < header_.size(); ++i) {
    if (header_[i] == name) return i;
  }
  throw Error(errc::kParseError, source_ + ":1: missing column '" + std::string(name) + "'");
}

std::string CsvTable::where(std::size_t row, std::size_t col) const {
  return source_ + ":" + std::to_string(lines_.at(row)) + ":" + std::to_string(col + 1);
}

const std::string& CsvTable::text(std::size_t row, std::size_t col) const { return rows_.at(row).at(col); }

double CsvTable::decimal(std::size_t row, std::size_t col) const {
  try {
    return parse_decimal(text(row, col));
  } catch (const Error&) {
    throw Error(errc::kParseError, where(row, col) + ": invalid number '" + text(row, col) + "'");
  }
}

long CsvTable::integer(std::size_t row, std::size_t col) const {
  const std::string& s = text(row, col);
  long value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
    throw Error(errc::kParseError, where(row, col) + ": invalid integer '" + s + "'");
  }
  return value;
}

void write_csv_row(std::ostream& out, std::span<const std::string> fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) out << ',';
    const std::string& f = fields[i];
    if (f.find_first_of(",\"\r\n") != std::string::npos) {
      out << '"';
      for (char ch : f) {
        if (ch == '"') out << '"';
        out << ch;
      }
      out << '"';
    } else {
      out << f;
    }
  }
  out << '\n';
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(errc::kIoError, "cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(errc::kIoError, "cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw Error(errc::kIoError, "write failed for '" + path.string() + "'");
}

}  // namespace tproc
