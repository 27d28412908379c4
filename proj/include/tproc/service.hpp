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

#include <map>
#include <memory>
#include <string>

#include "tproc/live.hpp"

namespace tproc {

/// HTTP front end for live sessions.
///
///   GET  /healthz
///   POST /sessions                 {"model", "opponent_tfs", "grid_R", "theta", "epsilon", "anchor"}
///   POST /sessions/{id}/events     {"type", "points" | "player" | "stat_id" + "amount"}
///   GET  /sessions/{id}/state
///   GET  /sessions/{id}/stream     server-sent events, one per snapshot
///
/// Numbers in payloads are decimal strings with 17 significant digits.
/// Errors are {"error": <category>, "detail": <text>}.
class Service {
 public:
  explicit Service(std::map<std::string, FittedModel> models);
  ~Service();
  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  /// Blocks until stop().
  bool listen(const std::string& host, int port);
  /// Binds an ephemeral port and returns it; follow with listen_after_bind.
  int bind_to_any_port(const std::string& host);
  bool listen_after_bind();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// The snapshot document served by /state, /events and /stream.
std::string snapshot_json(const std::string& session_id, const LiveConfig& config, const LiveGameState& state);

/// Parses an event document. Throws InvalidInput.
LiveEvent parse_event_json(std::string_view body);

}  // namespace tproc
