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
#include "tproc/service.hpp"

#include <httplib.h>

#include <atomic>
#include <chrono>
#include <condition_variable>
#include <json.hpp>

#include "tproc/decimal.hpp"
#include "tproc/error.hpp"

namespace tproc {

namespace {

using nlohmann::ordered_json;

std::string dec(double x) { return format_decimal(x); }

ordered_json dec_array(const std::vector<double>& v) {
  ordered_json a = ordered_json::array();
  for (double x : v) a.push_back(dec(x));
  return a;
}

double number_field(const ordered_json& j, const char* key, double fallback, bool required = false) {
  if (!j.contains(key)) {
    if (required) throw Error(errc::kInvalidInput, std::string("missing field '") + key + "'");
    return fallback;
  }
  const auto& v = j.at(key);
  if (v.is_string()) return parse_decimal(v.get<std::string>());
  if (v.is_number()) return v.get<double>();
  throw Error(errc::kInvalidInput, std::string("field '") + key + "' must be a number or decimal string");
}

std::string string_field(const ordered_json& j, const char* key) {
  if (!j.contains(key)) return {};
  if (!j.at(key).is_string()) throw Error(errc::kInvalidInput, std::string("field '") + key + "' must be a string");
  return j.at(key).get<std::string>();
}

ordered_json parse_object(std::string_view body) {
  ordered_json j;
  try {
    j = ordered_json::parse(body);
  } catch (const nlohmann::json::exception&) {
    throw Error(errc::kInvalidInput, "body is not valid JSON");
  }
  if (!j.is_object()) throw Error(errc::kInvalidInput, "body must be a JSON object");
  return j;
}

int status_for(const std::string& category) {
  if (category == errc::kNotFound) return 404;
  if (category == errc::kIllegalSub || category == errc::kClockExhausted || category == errc::kNothingToUndo) {
    return 409;
  }
  return 400;
}

void send_error(httplib::Response& res, const Error& e) {
  res.status = status_for(e.category());
  ordered_json j{{"error", e.category()}, {"detail", e.detail()}};
  res.set_content(j.dump(), "application/json");
}

struct Hub {
  explicit Hub(LiveConfig cfg) : session(std::move(cfg)), latest(session.snapshot()) {}

  LiveSession session;
  std::mutex m;
  std::condition_variable cv;
  LiveGameState latest;
};

}  // namespace

std::string snapshot_json(const std::string& session_id, const LiveConfig& config, const LiveGameState& s) {
  ordered_json j;
  j["session_id"] = session_id;
  j["seq"] = std::to_string(s.seq);
  j["r"] = std::to_string(s.r);
  j["grid_R"] = std::to_string(config.grid_R);
  j["t"] = dec(s.t());
  j["a"] = dec(s.a);
  j["b"] = dec(s.b);
  j["events"] = std::to_string(s.events);
  ordered_json stats = ordered_json::object();
  for (const auto& [id, v] : s.stats) stats[id] = dec(v);
  j["stats"] = stats;
  j["on_court"] = s.on_court;
  j["path"] = {{"t", dec_array(s.path.times)},   {"mT", dec_array(s.path.mt)},
               {"T_star", dec_array(s.path.t_star)}, {"PW", dec_array(s.path.pw)},
               {"a", dec_array(s.path.score_a)}, {"b", dec_array(s.path.score_b)}};
  const double pw = s.path.pw.back();
  j["pw"] = dec(pw);
  j["pw0"] = dec(s.path.pw.front());
  ordered_json sens = ordered_json::array();
  const auto& current = s.sensitivity.back();
  for (std::size_t i = 0; i < current.size(); ++i) {
    sens.push_back({{"stat_id", config.model.stat_ids[i]}, {"value", dec(current[i])}});
  }
  j["sensitivity"] = sens;
  j["theta"] = dec(config.theta);
  j["epsilon"] = dec(config.epsilon);
  j["pw_alert"] = pw <= config.epsilon;
  ordered_json iof = ordered_json::array();
  for (int r : s.iof_steps) {
    iof.push_back({{"step", std::to_string(r)}, {"lo", dec(s.path.times[static_cast<std::size_t>(r)])},
                   {"hi", dec(s.path.times[static_cast<std::size_t>(r) + 1])}});
  }
  j["iof"] = iof;
  return j.dump();
}

LiveEvent parse_event_json(std::string_view body) {
  const ordered_json j = parse_object(body);
  LiveEvent e;
  const std::string type = string_field(j, "type");
  if (type.empty()) throw Error(errc::kInvalidInput, "event needs a 'type'");
  e.type = parse_event_type(type);
  if (e.type == EventType::ScoreFor || e.type == EventType::ScoreAgainst) {
    const double p = number_field(j, "points", 0.0, true);
    if (p != std::floor(p)) throw Error(errc::kInvalidInput, "points must be an integer");
    e.points = static_cast<int>(p);
  }
  e.player = string_field(j, "player");
  e.stat_id = string_field(j, "stat_id");
  if (e.type == EventType::Stat) e.amount = number_field(j, "amount", 0.0, true);
  return e;
}

struct Service::Impl {
  std::map<std::string, FittedModel> models;
  httplib::Server server;
  std::mutex sessions_mu;
  std::map<std::string, std::shared_ptr<Hub>> sessions;
  std::uint64_t next_id = 0;
  std::atomic<bool> stopping{false};

  std::shared_ptr<Hub> find(const std::string& id) {
    std::lock_guard lock(sessions_mu);
    auto it = sessions.find(id);
    if (it == sessions.end()) throw Error(errc::kNotFound, "no session '" + id + "'");
    return it->second;
  }

  void routes() {
    server.Get("/healthz", [](const httplib::Request&, httplib::Response& res) {
      res.set_content(R"({"status":"ok"})", "application/json");
    });

    server.Post("/sessions", [this](const httplib::Request& req, httplib::Response& res) {
      try {
        const ordered_json j = parse_object(req.body);
        const std::string name = string_field(j, "model");
        auto it = models.find(name);
        if (it == models.end()) throw Error(errc::kNotFound, "no model '" + name + "'");
        LiveConfig cfg;
        cfg.model = it->second;
        cfg.opponent_tfs = number_field(j, "opponent_tfs", 0.0, true);
        cfg.grid_R = static_cast<int>(number_field(j, "grid_R", 40.0));
        cfg.theta = number_field(j, "theta", 0.0);
        cfg.epsilon = number_field(j, "epsilon", 0.1);
        const std::string anchor = string_field(j, "anchor");
        if (anchor.empty() || anchor == "score") {
          cfg.anchor = PwAnchor::RealizedScore;
        } else if (anchor == "mt") {
          cfg.anchor = PwAnchor::ModifiedProcess;
        } else {
          throw Error(errc::kInvalidInput, "anchor must be 'score' or 'mt'");
        }
        auto hub = std::make_shared<Hub>(cfg);
        std::string id;
        {
          std::lock_guard lock(sessions_mu);
          id = "s" + std::to_string(++next_id);
          sessions.emplace(id, hub);
        }
        res.status = 201;
        res.set_content(snapshot_json(id, hub->session.config(), hub->session.snapshot()), "application/json");
      } catch (const Error& e) {
        send_error(res, e);
      }
    });

    server.Post(R"(/sessions/([^/]+)/events)", [this](const httplib::Request& req, httplib::Response& res) {
      try {
        const std::string id = req.matches[1];
        auto hub = find(id);
        const LiveEvent ev = parse_event_json(req.body);
        LiveGameState s;
        {
          // Hold the hub lock across apply so streams see snapshots in order.
          std::lock_guard lock(hub->m);
          s = hub->session.apply(ev);
          hub->latest = s;
        }
        hub->cv.notify_all();
        res.set_content(snapshot_json(id, hub->session.config(), s), "application/json");
      } catch (const Error& e) {
        send_error(res, e);
      }
    });

    server.Get(R"(/sessions/([^/]+)/state)", [this](const httplib::Request& req, httplib::Response& res) {
      try {
        const std::string id = req.matches[1];
        auto hub = find(id);
        res.set_content(snapshot_json(id, hub->session.config(), hub->session.snapshot()), "application/json");
      } catch (const Error& e) {
        send_error(res, e);
      }
    });

    server.Get(R"(/sessions/([^/]+)/stream)", [this](const httplib::Request& req, httplib::Response& res) {
      std::shared_ptr<Hub> hub;
      const std::string id = req.matches[1];
      try {
        hub = find(id);
      } catch (const Error& e) {
        send_error(res, e);
        return;
      }
      long limit = -1;
      if (req.has_param("max_events")) {
        try {
          limit = static_cast<long>(parse_decimal(req.get_param_value("max_events")));
        } catch (const Error& e) {
          send_error(res, e);
          return;
        }
      }
      auto sent_seq = std::make_shared<std::uint64_t>(0);
      auto sent = std::make_shared<long>(0);
      bool first = true;
      res.set_header("Cache-Control", "no-cache");
      res.set_chunked_content_provider(
          "text/event-stream",
          [this, hub, id, sent_seq, sent, limit, first](std::size_t, httplib::DataSink& sink) mutable {
            LiveGameState s;
            {
              std::unique_lock lock(hub->m);
              while (!stopping && !(first || hub->latest.seq > *sent_seq)) {
                hub->cv.wait_for(lock, std::chrono::milliseconds(200));
                if (!sink.is_writable()) return false;
              }
              if (stopping) {
                sink.done();
                return true;
              }
              s = hub->latest;
            }
            first = false;
            *sent_seq = s.seq;
            const std::string msg = "id: " + std::to_string(s.seq) + "\nevent: snapshot\ndata: " +
                                    snapshot_json(id, hub->session.config(), s) + "\n\n";
            if (!sink.write(msg.data(), msg.size())) return false;
            ++*sent;
            if ((limit >= 0 && *sent >= limit) || s.r >= hub->session.config().grid_R) sink.done();
            return true;
          });
    });
  }
};

Service::Service(std::map<std::string, FittedModel> models) : impl_(std::make_unique<Impl>()) {
  impl_->models = std::move(models);
  impl_->routes();
}

Service::~Service() { stop(); }

bool Service::listen(const std::string& host, int port) { return impl_->server.listen(host, port); }

int Service::bind_to_any_port(const std::string& host) { return impl_->server.bind_to_any_port(host); }

bool Service::listen_after_bind() { return impl_->server.listen_after_bind(); }

void Service::stop() {
  impl_->stopping = true;
  {
    std::lock_guard lock(impl_->sessions_mu);
    for (auto& [id, hub] : impl_->sessions) hub->cv.notify_all();
  }
  impl_->server.stop();
}

}  // namespace tproc
