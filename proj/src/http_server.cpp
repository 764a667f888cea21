#include "perihack/http_server.hpp"

#include <httplib.h>

#include <algorithm>
#include <stdexcept>

namespace perihack {

namespace {

constexpr const char* kJson = "application/json";

void send_error(httplib::Response& res, int status, const std::string& code, const std::string& message) {
  res.status = status;
  res.set_content(Json{{"error", {{"code", code}, {"message", message}}}}.dump(), kJson);
}

void send(httplib::Response& res, int status, const Json& body) {
  res.status = status;
  res.set_content(body.dump(), kJson);
}

Json events_json(const std::vector<Event>& events) {
  Json out = Json::array();
  for (const auto& e : events) out.push_back(to_json(e));
  return out;
}

Json parse_body(const httplib::Request& req) {
  Json body = Json::parse(req.body, nullptr, false);
  if (body.is_discarded()) throw SessionError("malformed_json", 400, "request body is not valid JSON");
  return body;
}

std::uint64_t query_number(const httplib::Request& req, const char* key, std::uint64_t fallback) {
  if (!req.has_param(key)) return fallback;
  const std::string text = req.get_param_value(key);
  std::size_t used = 0;
  std::uint64_t value = 0;
  try {
    if (text.empty() || text[0] == '-') throw std::invalid_argument(text);
    value = std::stoull(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) {
    throw SessionError("bad_request", 400, std::string("query parameter '") + key + "' must be a non-negative integer");
  }
  return value;
}

}  // namespace

struct HttpServer::Impl {
  SessionManager& sessions;
  std::chrono::milliseconds max_wait;
  httplib::Server server;

  // Runs `handler`, turning every failure into the JSON error shape.
  template <typename F>
  auto guarded(F handler) {
    return [handler](const httplib::Request& req, httplib::Response& res) {
      try {
        handler(req, res);
      } catch (const SessionError& e) {
        send_error(res, e.status(), e.code(), e.what());
      } catch (const RuleError& e) {
        if (e.code() == RuleErrorCode::kMalformedAction) {
          send_error(res, 400, "malformed_action", e.what());
        } else {
          send_error(res, 500, "internal", e.what());
        }
      } catch (const std::exception& e) {
        send_error(res, 500, "internal", e.what());
      }
    };
  }

  Impl(SessionManager& s, std::chrono::milliseconds wait) : sessions(s), max_wait(wait) {
    server.set_default_headers({{"Access-Control-Allow-Origin", "*"}});

    server.Post("/sessions", guarded([this](const httplib::Request& req, httplib::Response& res) {
      send(res, 201, to_json(sessions.create(parse_body(req))));
    }));

    server.Get("/catalog", guarded([this](const httplib::Request&, httplib::Response& res) {
      send(res, 200, to_json(sessions.catalog()));
    }));

    server.Get("/sessions/:id/view", guarded([this](const httplib::Request& req, httplib::Response& res) {
      const auto view = sessions.view(req.path_params.at("id"), req.get_header_value("X-Seat-Token"));
      send(res, 200, to_json(view));
    }));

    server.Post("/sessions/:id/actions", guarded([this](const httplib::Request& req, httplib::Response& res) {
      const std::string& id = req.path_params.at("id");
      const std::string token = req.get_header_value("X-Seat-Token");
      // Authorisation and existence come before body validation.
      sessions.view(id, token);
      const Action action = action_from_json(parse_body(req));
      const auto events = sessions.submit(id, token, action);
      send(res, 200, Json{{"accepted", true}, {"events", events_json(events)}});
    }));

    server.Get("/sessions/:id/events", guarded([this](const httplib::Request& req, httplib::Response& res) {
      const std::uint64_t since = query_number(req, "since", 0);
      const auto wait = std::min<std::chrono::milliseconds>(
          std::chrono::milliseconds(query_number(req, "wait_ms", 0)), max_wait);
      const auto page = sessions.events_since(req.path_params.at("id"), req.get_header_value("X-Seat-Token"),
                                              since, wait);
      send(res, 200, Json{{"events", events_json(page.events)}, {"last_seq", page.last_seq}});
    }));

    server.set_error_handler([](const httplib::Request&, httplib::Response& res) {
      if (res.body.empty()) {
        send_error(res, res.status, res.status == 404 ? "not_found" : "http_error",
                   res.status == 404 ? "no such route" : "request failed");
      }
    });
  }
};

HttpServer::HttpServer(SessionManager& sessions, std::chrono::milliseconds max_wait)
    : impl_(std::make_unique<Impl>(sessions, max_wait)) {}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
  const int bound = port == 0 ? impl_->server.bind_to_any_port(host) : impl_->server.bind_to_port(host, port)
                                                                           ? port
                                                                           : -1;
  if (bound < 0) throw std::runtime_error("cannot bind " + host + ":" + std::to_string(port));
  return bound;
}

void HttpServer::run() { impl_->server.listen_after_bind(); }

void HttpServer::stop() {
  if (impl_) impl_->server.stop();
}

}  // namespace perihack
