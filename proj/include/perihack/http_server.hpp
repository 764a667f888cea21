#pragma once

#include <chrono>
#include <memory>
#include <string>

#include "perihack/session.hpp"

namespace perihack {

// JSON-over-HTTP front end for a SessionManager.
//
//   POST /sessions                      create; 201 with seat tokens
//   GET  /sessions/{id}/view            X-Seat-Token required
//   POST /sessions/{id}/actions         body is an action
//   GET  /sessions/{id}/events?since=K&wait_ms=N
//   GET  /catalog
//
// Failures answer {"error": {"code": ..., "message": ...}}.
class HttpServer {
 public:
  explicit HttpServer(SessionManager& sessions,
                      std::chrono::milliseconds max_wait = std::chrono::seconds{25});
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  // Port 0 picks a free port. Returns the bound port; throws on failure.
  int bind(const std::string& host, int port);
  // Serves until stop(). Call after bind().
  void run();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace perihack
