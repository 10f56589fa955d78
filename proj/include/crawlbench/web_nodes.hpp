// Copyright (C) 2026 crawlbench contributors
// SPDX-License-Identifier: Apache-2.0
//
// HTTP servers realizing the five node types, robots.txt, and per-node
// request logging. Request handling is a pure function over precomputed
// state (NodeRuntime) so it can be tested without sockets; NodeServer adds
// the listener and the log.

#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "crawlbench/model.hpp"

namespace crawlbench {

struct RequestRecord {
  std::uint32_t node_id = 0;
  std::string path;
  std::int64_t arrival_ns = 0;  // monotonic
  bool disallowed_hit = false;
};

struct HttpRequestView {
  std::string method = "GET";
  std::string path;
  std::map<std::string, std::string> query;
  std::optional<std::string> accept;
};

struct HttpResponseView {
  int status = 200;
  std::string content_type;
  std::string body;
};

/// robots.txt body: the User-agent line always, a Disallow line when the node
/// has disallowed copies, a Crawl-delay line when the delay is positive.
std::string robots_txt_text(double crawl_delay_seconds, bool any_disallowed);

/// Port component of a "name:port" host string (0 when absent).
int parse_host_port(const std::string& host);

/// Parses the supported SPARQL subset:
///   SELECT ?s ?p ?o WHERE { ?s ?p ?o }        [LIMIT n] [OFFSET k]
///   CONSTRUCT { ?s ?p ?o } WHERE { ?s ?p ?o } [LIMIT n] [OFFSET k]
struct SparqlQuery {
  bool construct = false;
  std::optional<std::uint64_t> limit;
  std::uint64_t offset = 0;
};
std::optional<SparqlQuery> parse_sparql(const std::string& query,
                                        std::string& error);

/// Immutable per-node serving state derived from the manifest slice.
class NodeRuntime {
 public:
  NodeRuntime(const CloudManifest& manifest, std::uint32_t node_id);

  HttpResponseView handle(const HttpRequestView& request) const;

  const NodeSpec& spec() const { return spec_; }
  const std::string& robots_body() const { return robots_; }

  /// Port parsed from the node's host string (0 when absent).
  int host_port() const;

 private:
  HttpResponseView handle_dereferencing(const HttpRequestView& request) const;
  HttpResponseView handle_dump(const HttpRequestView& request) const;
  HttpResponseView handle_sparql(const HttpRequestView& request) const;
  HttpResponseView handle_ckan(const HttpRequestView& request) const;
  HttpResponseView handle_rdfa(const HttpRequestView& request) const;

  NodeSpec spec_;
  std::vector<Triple> triples_;  // T_i then T_o
  std::unordered_map<std::string, std::vector<Triple>> by_subject_;
  std::string robots_;
  // Dump nodes.
  std::string dump_path_;
  std::string dump_bytes_;
  std::string dump_media_type_;
  // Catalogue nodes.
  std::vector<std::pair<std::string, std::string>> datasets_;  // (id, url)
  std::string index_html_;
  // RDFa nodes.
  std::string page_html_;
};

/// One listening server per node, with an append-only request log.
class NodeServer {
 public:
  NodeServer(const CloudManifest& manifest, std::uint32_t node_id,
             int listen_port = 0);
  ~NodeServer();

  NodeServer(const NodeServer&) = delete;
  NodeServer& operator=(const NodeServer&) = delete;

  /// Binds and starts serving; false if the port cannot be bound.
  bool start();
  void stop();

  /// Snapshot of the request log, ordered by arrival.
  std::vector<RequestRecord> drain_request_log() const;

  int port() const { return port_; }
  const NodeRuntime& runtime() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  int port_ = 0;
};

}  // namespace crawlbench
