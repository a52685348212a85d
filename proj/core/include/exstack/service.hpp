#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

#include "exstack/template.hpp"

namespace exstack {

inline constexpr int kServiceApiVersion = 1;

/// Read-only set of lifted templates keyed by example id.
class TemplateStore {
 public:
  void add(LiftedTemplate tmpl);
  /// Loads every `*.json` under `<dir>/templates`. Throws std::runtime_error
  /// naming the offending file.
  [[nodiscard]] static TemplateStore load_dir(const std::string& dir);

  [[nodiscard]] const LiftedTemplate* find(std::string_view id) const;
  [[nodiscard]] const std::map<std::string, LiftedTemplate, std::less<>>& all() const {
    return templates_;
  }

 private:
  std::map<std::string, LiftedTemplate, std::less<>> templates_;
};

struct Response {
  int status = 200;
  std::string body;
  std::string content_type = "application/json";
};

struct ServiceOptions {
  /// Least recently used sessions are dropped beyond this count.
  std::size_t max_sessions = 256;
};

/// Transport-independent request handling; safe to call concurrently.
class Service {
 public:
  explicit Service(TemplateStore store, ServiceOptions options = {});
  ~Service();
  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  [[nodiscard]] Response handle(std::string_view method, std::string_view path,
                                std::string_view body = {});

  [[nodiscard]] std::size_t session_count() const;

 private:
  struct Session;

  Response list_examples() const;
  Response get_template(std::string_view id) const;
  Response create_session(std::string_view body);
  Response get_session(std::string_view id);
  Response post_selection(std::string_view id, std::string_view body);
  Response post_undo(std::string_view id);
  Response get_render(std::string_view id);

  std::shared_ptr<Session> find_session(std::string_view id);
  static std::string view(const Session& session);

  std::shared_ptr<const TemplateStore> store_;
  ServiceOptions options_;
  mutable std::mutex mutex_;
  std::map<std::string, std::shared_ptr<Session>, std::less<>> sessions_;
  std::uint64_t next_id_ = 1;
  std::uint64_t clock_ = 0;
};

/// HTTP transport for a Service; lives in the exstack::http library.
class HttpServer {
 public:
  explicit HttpServer(Service& service);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  /// Port 0 picks a free port. Returns the bound port; throws
  /// std::runtime_error when binding fails.
  int bind(const std::string& host, int port);
  /// Serves on the bound socket until stop() is called.
  void run();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Serves `service` over HTTP until the process is stopped.
void serve_http(Service& service, const std::string& host, int port);

}  // namespace exstack
