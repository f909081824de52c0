#pragma once

#include <atomic>
#include <condition_variable>
#include <memory>
#include <mutex>
#include <string>
#include <thread>

#include "dashsnap/service/api.hpp"

namespace httplib {
class Server;
}

namespace dashsnap::service {

struct ServerOptions {
  /// Seconds between scheduler ticks; 0 disables the periodic tick (clock
  /// routes still tick).
  int tick_interval = 60;
};

/// cpp-httplib front end for Api: every /api route, JSON in and out,
/// permissive CORS for a browser client on another origin.
class HttpServer {
 public:
  explicit HttpServer(Api& api, ServerOptions options = {});
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  /// Binds (port 0 picks a free one) and serves on a background thread.
  /// Returns the bound port. Throws Error(Io) when binding fails.
  int start(const std::string& host, int port);
  /// Binds and serves on the calling thread until stop().
  void run(const std::string& host, int port);
  void stop();

 private:
  void scheduler_loop();

  Api& api_;
  ServerOptions options_;
  std::unique_ptr<httplib::Server> server_;
  std::thread server_thread_;
  std::thread scheduler_thread_;
  std::mutex stop_mutex_;
  std::condition_variable stop_cv_;
  bool stopping_ = false;
};

}  // namespace dashsnap::service
