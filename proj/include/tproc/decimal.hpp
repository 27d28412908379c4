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
#include <string_view>

namespace tproc {

/// 17 significant digits: enough for every double to survive a text
/// round-trip bit-for-bit. Locale-independent.
std::string format_decimal(double value);

/// Strict parse of a complete decimal string; throws ParseError otherwise.
double parse_decimal(std::string_view text);

}  // namespace tproc
