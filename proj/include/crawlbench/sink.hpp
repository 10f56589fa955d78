// Copyright (C) 2026 crawlbench contributors
// SPDX-License-Identifier: Apache-2.0
//
// The triple store the benchmarked crawler writes to. Triples are
// deduplicated on their canonical N-Triples line; each first arrival is
// timestamped so triples-over-time can be reconstructed afterwards.

#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <unordered_set>
#include <vector>

#include "crawlbench/model.hpp"

namespace crawlbench {

class SinkStore {
 public:
  /// Adds all triples of `body` (parsed per `content_type`). Returns an HTTP
  /// status: 204 on success, 400 when the body does not parse (in which case
  /// nothing is stored), 415 for an unsupported media type.
  int ingest(const std::string& body, const std::string& content_type,
             const std::string& graph = "");

  struct Snapshot {
    std::vector<std::string> lines;        // insertion order
    std::vector<std::int64_t> arrivals_ns; // parallel to lines, non-decreasing
    std::map<std::string, std::set<std::string>> by_graph;
  };

  /// Consistent point-in-time view of the store.
  Snapshot snapshot() const;

  std::unordered_set<std::string> line_set() const;

  /// Sorted canonical lines, one per line, trailing newline.
  std::string canonical_dump() const;

  std::size_t size() const;

 private:
  mutable std::mutex mutex_;
  std::unordered_set<std::string> seen_;
  std::vector<std::string> lines_;
  std::vector<std::int64_t> arrivals_ns_;
  std::map<std::string, std::set<std::string>> by_graph_;
};

/// HTTP front end: POST /sink ingests, GET /sink/dump returns the canonical
/// store contents.
class SinkServer {
 public:
  explicit SinkServer(int port);
  ~SinkServer();

  SinkServer(const SinkServer&) = delete;
  SinkServer& operator=(const SinkServer&) = delete;

  bool start();
  void stop();

  SinkStore& store();
  const SinkStore& store() const;
  int port() const { return port_; }
  std::string url() const;  // http://127.0.0.1:{port}/sink

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  int port_;
};

}  // namespace crawlbench
