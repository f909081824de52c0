#include "dashsnap/service/http_server.hpp"

#include <httplib.h>

#include <iostream>

namespace dashsnap::service {

namespace {

void set_cors(httplib::Response& res) {
  res.set_header("Access-Control-Allow-Origin", "*");
  res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
  res.set_header("Access-Control-Allow-Headers", "Content-Type");
}

}  // namespace

HttpServer::HttpServer(Api& api, ServerOptions options)
    : api_(api), options_(options), server_(std::make_unique<httplib::Server>()) {
  auto forward = [this](const httplib::Request& req, httplib::Response& res) {
    ApiRequest request{req.method, req.path, {}, req.body};
    for (const auto& [k, v] : req.params) request.query[k] = v;
    auto response = api_.handle(request);
    res.status = response.status;
    set_cors(res);
    res.set_content(response.body.dump(), "application/json");
  };
  server_->Get("/api/.*", forward);
  server_->Post("/api/.*", forward);
  server_->Options("/api/.*", [](const httplib::Request&, httplib::Response& res) {
    set_cors(res);
    res.status = 204;
  });
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::start(const std::string& host, int port) {
  int bound = port == 0 ? server_->bind_to_any_port(host) : (server_->bind_to_port(host, port) ? port : -1);
  if (bound <= 0) throw Error(Code::Io, "cannot listen on " + host + ":" + std::to_string(port));
  server_thread_ = std::thread([this] { server_->listen_after_bind(); });
  if (options_.tick_interval > 0) scheduler_thread_ = std::thread([this] { scheduler_loop(); });
  return bound;
}

void HttpServer::run(const std::string& host, int port) {
  if (!server_->bind_to_port(host, port)) throw Error(Code::Io, "cannot listen on " + host + ":" + std::to_string(port));
  if (options_.tick_interval > 0) scheduler_thread_ = std::thread([this] { scheduler_loop(); });
  server_->listen_after_bind();
}

void HttpServer::stop() {
  {
    std::lock_guard lock(stop_mutex_);
    stopping_ = true;
  }
  stop_cv_.notify_all();
  if (server_) server_->stop();
  if (server_thread_.joinable()) server_thread_.join();
  if (scheduler_thread_.joinable()) scheduler_thread_.join();
}

void HttpServer::scheduler_loop() {
  std::unique_lock lock(stop_mutex_);
  while (!stop_cv_.wait_for(lock, std::chrono::seconds(options_.tick_interval), [this] { return stopping_; })) {
    lock.unlock();
    try {
      auto result = api_.tick();
      for (const auto& u : result["updates"]) std::clog << "tick: " << u.dump() << '\n';
    } catch (const std::exception& e) {
      std::clog << "tick failed: " << e.what() << '\n';
    }
    lock.lock();
  }
}

}  // namespace dashsnap::service
