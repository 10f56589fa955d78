// Copyright (C) 2026 crawlbench contributors
// SPDX-License-Identifier: Apache-2.0
//
// A correctness-oriented Data Web crawler: per-host frontiers with robots.txt
// handling, content negotiation, dump decompression, SPARQL paging, catalogue
// walking and RDFa extraction. It posts every extracted triple batch to the
// sink and terminates when all frontiers are empty. It doubles as the oracle
// client for the acceptance experiments.

#pragma once

#include <atomic>
#include <cstdint>
#include <string>
#include <vector>

namespace crawlbench {

struct CrawlOptions {
  bool obey_disallow = true;
  bool obey_delay = true;
  int workers = 1;
  enum class Strategy { LoadBalanced, Bfs } strategy = Strategy::LoadBalanced;
  std::uint64_t sparql_page_size = 512;
  double request_timeout_seconds = 10.0;
};

struct CrawlStats {
  std::uint64_t fetched = 0;
  std::uint64_t fetch_failures = 0;  // permanent, after retries
  std::uint64_t triples_posted = 0;
  std::uint64_t post_failures = 0;
};

class RefCrawler {
 public:
  explicit RefCrawler(CrawlOptions options);

  /// Crawls from the seed URIs until every frontier is empty; every batch of
  /// extracted triples is POSTed to `sink_url`. Returns 0 on completion,
  /// non-zero when stopped early.
  int crawl(const std::vector<std::string>& seeds, const std::string& sink_url);

  /// Asks workers to stop at the next opportunity (used for run timeouts).
  void request_stop();

  const CrawlStats& stats() const { return stats_; }

 private:
  CrawlOptions options_;
  CrawlStats stats_;
  std::atomic<bool> stop_{false};
};

/// Splits an absolute http URL into (host:port, path-with-query). Returns
/// false for anything that is not plain http.
bool split_http_url(const std::string& url, std::string& host_port,
                    std::string& path, std::string& query);

/// Robots rules as the crawler understands them: Disallow prefixes and the
/// Crawl-delay of the `*` agent group.
struct RobotsRules {
  std::vector<std::string> disallow;
  double crawl_delay_seconds = 0.0;

  bool is_disallowed(const std::string& path) const;
};

RobotsRules parse_robots_txt(const std::string& body);

/// Extracts (about, rel, href) triples from the attribute pattern the RDFa
/// node emits. Not a general RDFa processor.
struct RdfaTriple {
  std::string subject, predicate, object;
};
std::vector<RdfaTriple> extract_rdfa(const std::string& html);

}  // namespace crawlbench
