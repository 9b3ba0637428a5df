#pragma once

#include <filesystem>
#include <memory>
#include <string>

#include "artrec/service.hpp"

namespace httplib {
class Server;
}

namespace artrec {

struct HttpOptions {
  std::filesystem::path static_dir;  // web UI bundle, mounted at /
  std::filesystem::path image_dir;   // painting images, mounted at /images
  int threads = 8;
};

/// JSON API over a StudyService:
///   POST /sessions
///   GET  /sessions/{id}
///   GET  /sessions/{id}/elicitation
///   POST /sessions/{id}/ratings
///   GET  /sessions/{id}/recommendations/{index}
///   POST /sessions/{id}/feedback
///   GET  /export            (X-Admin-Token header; ?table=feedback|rankings)
class HttpFrontend {
 public:
  HttpFrontend(StudyService& service, HttpOptions options = {});
  ~HttpFrontend();

  /// Binds; port 0 picks a free port. Returns the bound port.
  int bind(const std::string& host, int port);
  /// Blocks until stop().
  void listen();
  void stop();
  bool running() const;

 private:
  void install_routes();

  StudyService& service_;
  HttpOptions options_;
  std::unique_ptr<httplib::Server> server_;
};

}  // namespace artrec
