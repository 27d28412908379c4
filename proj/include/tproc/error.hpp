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

#include <stdexcept>
#include <string>
#include <string_view>

namespace tproc {

/// Error categories are stable, machine-parsable identifiers. The CLI prints
/// them verbatim and the live service returns them in error payloads.
namespace errc {
inline constexpr std::string_view kDomainError = "DomainError";
inline constexpr std::string_view kInvalidInput = "InvalidInput";
inline constexpr std::string_view kDegenerateStat = "DegenerateStat";
inline constexpr std::string_view kMissingScaler = "MissingScaler";
inline constexpr std::string_view kRankDeficient = "RankDeficient";
inline constexpr std::string_view kTooFewGames = "TooFewGames";
inline constexpr std::string_view kEmptyRoster = "EmptyRoster";
inline constexpr std::string_view kDegenerateModel = "DegenerateModel";
inline constexpr std::string_view kGridMismatch = "GridMismatch";
inline constexpr std::string_view kTooFewRises = "TooFewRises";
inline constexpr std::string_view kInvalidTransform = "InvalidTransform";
inline constexpr std::string_view kParseError = "ParseError";
inline constexpr std::string_view kConsistencyError = "ConsistencyError";
inline constexpr std::string_view kVersionMismatch = "VersionMismatch";
inline constexpr std::string_view kIllegalSub = "IllegalSub";
inline constexpr std::string_view kClockExhausted = "ClockExhausted";
inline constexpr std::string_view kNothingToUndo = "NothingToUndo";
inline constexpr std::string_view kInvalidConfig = "InvalidConfig";
inline constexpr std::string_view kIoError = "IoError";
inline constexpr std::string_view kNotFound = "NotFound";
}  // namespace errc

class Error : public std::runtime_error {
 public:
  Error(std::string_view category, const std::string& detail);

  const std::string& category() const noexcept { return category_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  std::string category_;
  std::string detail_;
};

}  // namespace tproc
