// Copyright (C) 2026 crawlbench contributors
// SPDX-License-Identifier: Apache-2.0

#include "crawlbench/sink.hpp"

#include <chrono>
#include <mutex>
#include <thread>

#include <httplib.h>

#include "crawlbench/rdf_io.hpp"

namespace crawlbench {

namespace {

std::int64_t monotonic_ns() {
  return std::chrono::duration_cast<std::chrono::nanoseconds>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

}  // namespace

int SinkStore::ingest(const std::string& body, const std::string& content_type,
                      const std::string& graph) {
  const auto format = format_for_media_type(content_type);
  if (!format ||
      (*format != RdfFormatKind::NTriples && *format != RdfFormatKind::Turtle)) {
    return 415;
  }
  std::vector<Triple> triples;
  try {
    triples = parse(body, *format);
  } catch (const ParseError&) {
    return 400;
  }
  std::lock_guard<std::mutex> lock(mutex_);
  const std::int64_t now = monotonic_ns();
  for (const auto& t : triples) {
    std::string line = canonical_line(t);
    if (!graph.empty()) by_graph_[graph].insert(line);
    if (seen_.insert(line).second) {
      lines_.push_back(std::move(line));
      arrivals_ns_.push_back(now);
    }
  }
  return 204;
}

SinkStore::Snapshot SinkStore::snapshot() const {
  std::lock_guard<std::mutex> lock(mutex_);
  return {lines_, arrivals_ns_, by_graph_};
}

std::unordered_set<std::string> SinkStore::line_set() const {
  std::lock_guard<std::mutex> lock(mutex_);
  return seen_;
}

std::string SinkStore::canonical_dump() const {
  std::vector<std::string> sorted;
  {
    std::lock_guard<std::mutex> lock(mutex_);
    sorted = lines_;
  }
  std::sort(sorted.begin(), sorted.end());
  std::string out;
  for (const auto& line : sorted) {
    out += line;
    out += '\n';
  }
  return out;
}

std::size_t SinkStore::size() const {
  std::lock_guard<std::mutex> lock(mutex_);
  return lines_.size();
}

struct SinkServer::Impl {
  SinkStore store;
  httplib::Server server;
  std::thread thread;
  bool running = false;
};

SinkServer::SinkServer(int port)
    : impl_(std::make_unique<Impl>()), port_(port) {
  impl_->server.new_task_queue = [] { return new httplib::ThreadPool(8); };
  impl_->server.set_tcp_nodelay(true);

  impl_->server.Post("/sink", [impl = impl_.get()](const httplib::Request& req,
                                                   httplib::Response& res) {
    std::string graph;
    if (req.has_param("graph")) graph = req.get_param_value("graph");
    const int status = impl->store.ingest(
        req.body, req.get_header_value("Content-Type"), graph);
    res.status = status;
    if (status == 400) res.set_content("unparseable body\n", "text/plain");
    if (status == 415) res.set_content("unsupported media type\n", "text/plain");
  });

  impl_->server.Get("/sink/dump", [impl = impl_.get()](const httplib::Request&,
                                                       httplib::Response& res) {
    res.set_content(impl->store.canonical_dump(), "application/n-triples");
  });
}

SinkServer::~SinkServer() { stop(); }

bool SinkServer::start() {
  if (!impl_->server.bind_to_port("127.0.0.1", port_)) return false;
  impl_->running = true;
  impl_->thread = std::thread([impl = impl_.get()] {
    impl->server.listen_after_bind();
  });
  impl_->server.wait_until_ready();
  return true;
}

void SinkServer::stop() {
  if (impl_ && impl_->running) {
    impl_->server.stop();
    if (impl_->thread.joinable()) impl_->thread.join();
    impl_->running = false;
  }
}

SinkStore& SinkServer::store() { return impl_->store; }
const SinkStore& SinkServer::store() const { return impl_->store; }

std::string SinkServer::url() const {
  return "http://127.0.0.1:" + std::to_string(port_) + "/sink";
}

}  // namespace crawlbench
