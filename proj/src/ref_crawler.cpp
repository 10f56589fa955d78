// Copyright (C) 2026 crawlbench contributors
// SPDX-License-Identifier: Apache-2.0

#include "crawlbench/ref_crawler.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <condition_variable>
#include <deque>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>
#include <unordered_map>
#include <unordered_set>

#include <httplib.h>
#include <json.hpp>

#include "crawlbench/model.hpp"
#include "crawlbench/rdf_io.hpp"

namespace crawlbench {

using nlohmann::json;

namespace {

constexpr char kAcceptHeader[] =
    "text/turtle, application/n-triples;q=0.9, application/rdf+xml;q=0.8, "
    "text/n3;q=0.7";

std::int64_t monotonic_ns() {
  return std::chrono::duration_cast<std::chrono::nanoseconds>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

std::string percent_encode(const std::string& value) {
  static const char hex[] = "0123456789ABCDEF";
  std::string out;
  for (unsigned char c : value) {
    if (std::isalnum(c) || c == '-' || c == '_' || c == '.' || c == '~') {
      out += static_cast<char>(c);
    } else {
      out += '%';
      out += hex[c >> 4];
      out += hex[c & 0xf];
    }
  }
  return out;
}

std::string construct_page_query(std::uint64_t limit, std::uint64_t offset) {
  return "CONSTRUCT { ?s ?p ?o } WHERE { ?s ?p ?o } LIMIT " +
         std::to_string(limit) + " OFFSET " + std::to_string(offset);
}

// Pulls the OFFSET back out of a page URL the crawler built itself.
std::optional<std::uint64_t> offset_of_page_query(const std::string& query) {
  const std::string marker = "OFFSET%20";
  const std::size_t pos = query.rfind(marker);
  if (pos == std::string::npos) return std::nullopt;
  try {
    return std::stoull(query.substr(pos + marker.size()));
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

}  // namespace

bool split_http_url(const std::string& url, std::string& host_port,
                    std::string& path, std::string& query) {
  if (url.rfind("http://", 0) != 0) return false;
  std::string rest = url.substr(7);
  // Drop any fragment: fetching ignores it.
  const std::size_t hash = rest.find('#');
  if (hash != std::string::npos) rest.resize(hash);
  const std::size_t slash = rest.find('/');
  if (slash == std::string::npos) {
    host_port = rest;
    path = "/";
    query = "";
  } else {
    host_port = rest.substr(0, slash);
    std::string path_query = rest.substr(slash);
    const std::size_t question = path_query.find('?');
    if (question == std::string::npos) {
      path = path_query;
      query = "";
    } else {
      path = path_query.substr(0, question);
      query = path_query.substr(question + 1);
    }
  }
  return !host_port.empty();
}

bool RobotsRules::is_disallowed(const std::string& path) const {
  for (const auto& prefix : disallow) {
    if (!prefix.empty() && path.rfind(prefix, 0) == 0) return true;
  }
  return false;
}

RobotsRules parse_robots_txt(const std::string& body) {
  RobotsRules rules;
  std::stringstream stream(body);
  std::string line;
  bool in_star_group = false;
  while (std::getline(stream, line)) {
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) {
      line.pop_back();
    }
    const std::size_t colon = line.find(':');
    if (colon == std::string::npos) continue;
    std::string key = line.substr(0, colon);
    std::string value = line.substr(colon + 1);
    std::transform(key.begin(), key.end(), key.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    const std::size_t value_start = value.find_first_not_of(" \t");
    value = value_start == std::string::npos ? "" : value.substr(value_start);

    if (key == "user-agent") {
      in_star_group = value == "*";
    } else if (in_star_group && key == "disallow") {
      if (!value.empty()) rules.disallow.push_back(value);
    } else if (in_star_group && key == "crawl-delay") {
      try {
        rules.crawl_delay_seconds = std::stod(value);
      } catch (const std::exception&) {
      }
    }
  }
  return rules;
}

std::vector<RdfaTriple> extract_rdfa(const std::string& html) {
  std::vector<RdfaTriple> triples;
  std::vector<std::string> about_stack;
  std::size_t pos = 0;
  while ((pos = html.find('<', pos)) != std::string::npos) {
    const std::size_t end = html.find('>', pos);
    if (end == std::string::npos) break;
    std::string tag = html.substr(pos + 1, end - pos - 1);
    pos = end + 1;
    if (tag.empty()) continue;
    const bool closing = tag[0] == '/';
    if (closing) tag = tag.substr(1);
    std::stringstream stream(tag);
    std::string name;
    stream >> name;
    std::transform(name.begin(), name.end(), name.begin(),
                   [](unsigned char c) { return std::tolower(c); });

    const auto attr = [&tag](const std::string& attr_name) -> std::string {
      const std::string needle = attr_name + "=\"";
      const std::size_t start = tag.find(needle);
      if (start == std::string::npos) return "";
      const std::size_t close = tag.find('"', start + needle.size());
      if (close == std::string::npos) return "";
      std::string raw = tag.substr(start + needle.size(),
                                   close - start - needle.size());
      // Undo the escaping the page writer applies.
      const auto replace_all = [&raw](const std::string& what,
                                      const std::string& with) {
        std::size_t at = 0;
        while ((at = raw.find(what, at)) != std::string::npos) {
          raw.replace(at, what.size(), with);
          at += with.size();
        }
      };
      replace_all("&lt;", "<");
      replace_all("&gt;", ">");
      replace_all("&quot;", "\"");
      replace_all("&amp;", "&");
      return raw;
    };

    if (name == "div") {
      if (closing) {
        if (!about_stack.empty()) about_stack.pop_back();
      } else {
        about_stack.push_back(attr("about"));
      }
    } else if (name == "a" && !closing && !about_stack.empty()) {
      const std::string rel = attr("rel");
      const std::string href = attr("href");
      const std::string& about = about_stack.back();
      if (!rel.empty() && !href.empty() && !about.empty()) {
        triples.push_back({about, rel, href});
      }
    }
  }
  return triples;
}

// ---------------------------------------------------------------------------
// Crawl engine

namespace {

struct HostState {
  std::deque<std::pair<std::uint64_t, std::string>> queue;  // (seq, path?query)
  bool busy = false;
  bool robots_done = false;
  RobotsRules rules;
  std::int64_t next_allowed_ns = 0;
  std::int64_t last_claim_ns = 0;
};

struct Frontier {
  std::map<std::string, HostState> hosts;
  std::unordered_set<std::string> visited;  // defragmented full URLs
  std::unordered_map<std::string, int> retries;
  std::uint64_t sequence = 0;
  std::size_t queued = 0;
  std::size_t inflight = 0;
  std::mutex mutex;
  std::condition_variable cv;
};

struct Claim {
  std::string host_port;
  std::string path;
  std::string query;
  std::string url;
};

class Engine {
 public:
  Engine(const CrawlOptions& options, const std::string& sink_url,
         std::atomic<bool>& stop)
      : options_(options), stop_(stop) {
    std::string path, query;
    if (!split_http_url(sink_url, sink_host_, path, query)) {
      throw std::invalid_argument("sink URL must be plain http");
    }
    sink_path_ = path;
  }

  CrawlStats final_stats() const {
    CrawlStats stats;
    stats.fetched = fetched_.load();
    stats.fetch_failures = fetch_failures_.load();
    stats.triples_posted = triples_posted_.load();
    stats.post_failures = post_failures_.load();
    return stats;
  }

  void enqueue_seed(const std::string& url) {
    std::lock_guard<std::mutex> lock(frontier_.mutex);
    enqueue_locked(url);
  }

  void run() {
    std::vector<std::thread> workers;
    const int worker_count = std::max(1, options_.workers);
    workers.reserve(worker_count);
    for (int i = 0; i < worker_count; ++i) {
      workers.emplace_back([this] { worker_loop(); });
    }
    for (auto& w : workers) w.join();
  }

 private:
  void enqueue_locked(const std::string& raw_url) {
    std::string host_port, path, query;
    if (!split_http_url(raw_url, host_port, path, query)) return;

    // A bare endpoint URL becomes the first CONSTRUCT page request.
    if (query.empty() && path.size() >= 7 &&
        path.compare(path.size() - 7, 7, "/sparql") == 0) {
      query = "query=" + percent_encode(
                  construct_page_query(options_.sparql_page_size, 0));
    }
    const std::string full =
        "http://" + host_port + path + (query.empty() ? "" : "?" + query);
    if (!frontier_.visited.insert(full).second) return;

    auto [it, is_new_host] = frontier_.hosts.try_emplace(host_port);
    HostState& host = it->second;
    if (is_new_host && path != "/robots.txt") {
      // robots.txt always goes first on a new host.
      const std::string robots = "http://" + host_port + "/robots.txt";
      frontier_.visited.insert(robots);
      host.queue.emplace_back(frontier_.sequence++, "/robots.txt");
      ++frontier_.queued;
    }
    if (options_.obey_disallow && host.robots_done &&
        host.rules.is_disallowed(path)) {
      return;
    }
    host.queue.emplace_back(frontier_.sequence++,
                            path + (query.empty() ? "" : "?" + query));
    ++frontier_.queued;
    frontier_.cv.notify_one();
  }

  std::optional<Claim> claim() {
    std::unique_lock<std::mutex> lock(frontier_.mutex);
    while (true) {
      if (stop_.load()) return std::nullopt;
      if (frontier_.queued == 0 && frontier_.inflight == 0) {
        frontier_.cv.notify_all();
        return std::nullopt;
      }
      const std::int64_t now = monotonic_ns();
      std::int64_t wake = 0;
      HostState* best = nullptr;
      std::string best_host;
      for (auto& [host_port, host] : frontier_.hosts) {
        if (host.busy || host.queue.empty()) continue;
        if (options_.obey_delay && now < host.next_allowed_ns) {
          if (wake == 0 || host.next_allowed_ns < wake) {
            wake = host.next_allowed_ns;
          }
          continue;
        }
        if (best == nullptr) {
          best = &host;
          best_host = host_port;
          continue;
        }
        const bool prefer =
            options_.strategy == CrawlOptions::Strategy::Bfs
                ? host.queue.front().first < best->queue.front().first
                : host.last_claim_ns < best->last_claim_ns;
        if (prefer) {
          best = &host;
          best_host = host_port;
        }
      }
      if (best != nullptr) {
        auto [seq, path_query] = best->queue.front();
        (void)seq;
        best->queue.pop_front();
        --frontier_.queued;
        const std::size_t question = path_query.find('?');
        const std::string path = path_query.substr(0, question);
        // Disallow rules may have arrived after this URL was queued.
        if (options_.obey_disallow && best->robots_done &&
            path != "/robots.txt" && best->rules.is_disallowed(path)) {
          continue;
        }
        best->busy = true;
        best->last_claim_ns = now;
        ++frontier_.inflight;
        Claim claim;
        claim.host_port = best_host;
        claim.path = path;
        claim.query =
            question == std::string::npos ? "" : path_query.substr(question + 1);
        claim.url = "http://" + best_host + path_query;
        return claim;
      }
      if (wake > 0) {
        frontier_.cv.wait_until(
            lock, std::chrono::steady_clock::time_point(
                      std::chrono::nanoseconds(wake)));
      } else {
        frontier_.cv.wait(lock);
      }
    }
  }

  void complete(const Claim& claim, bool retryable_failure) {
    std::lock_guard<std::mutex> lock(frontier_.mutex);
    HostState& host = frontier_.hosts.at(claim.host_port);
    host.busy = false;
    if (options_.obey_delay && host.rules.crawl_delay_seconds > 0.0) {
      host.next_allowed_ns =
          monotonic_ns() +
          static_cast<std::int64_t>(host.rules.crawl_delay_seconds * 1e9);
    }
    if (retryable_failure) {
      int& attempts = frontier_.retries[claim.url];
      if (attempts < 2) {
        ++attempts;
        const std::string path_query =
            claim.path + (claim.query.empty() ? "" : "?" + claim.query);
        // robots.txt retries jump the queue so the rules stay first per host.
        if (claim.path == "/robots.txt") {
          host.queue.emplace_front(frontier_.sequence++, path_query);
        } else {
          host.queue.emplace_back(frontier_.sequence++, path_query);
        }
        ++frontier_.queued;
      } else {
        ++fetch_failures_;
        if (claim.path == "/robots.txt") host.robots_done = true;
      }
    }
    --frontier_.inflight;
    frontier_.cv.notify_all();
  }

  void worker_loop() {
    httplib::Client sink(("http://" + sink_host_).c_str());
    sink.set_connection_timeout(10, 0);
    sink.set_read_timeout(30, 0);
    sink.set_keep_alive(true);
    sink.set_tcp_nodelay(true);

    while (!stop_.load()) {
      auto claim = this->claim();
      if (!claim) break;

      httplib::Client client(("http://" + claim->host_port).c_str());
      const auto timeout_s = static_cast<time_t>(options_.request_timeout_seconds);
      client.set_connection_timeout(timeout_s, 0);
      client.set_read_timeout(timeout_s, 0);
      client.set_tcp_nodelay(true);

      const std::string target =
          claim->path + (claim->query.empty() ? "" : "?" + claim->query);
      httplib::Headers headers = {{"Accept", kAcceptHeader}};
      auto result = client.Get(target.c_str(), headers);

      bool retryable = false;
      if (!result) {
        retryable = true;
      } else if (result->status >= 500) {
        retryable = true;
      } else if (result->status >= 200 && result->status < 300) {
        ++fetched_;
        process(*claim, *result, sink);
      } else {
        // 3xx/4xx are permanent for this synthetic web.
        ++fetch_failures_;
      }
      complete(*claim, retryable);
    }
  }

  void process(const Claim& claim, const httplib::Response& response,
               httplib::Client& sink) {
    if (claim.path == "/robots.txt") {
      std::lock_guard<std::mutex> lock(frontier_.mutex);
      HostState& host = frontier_.hosts.at(claim.host_port);
      host.rules = parse_robots_txt(response.body);
      host.robots_done = true;
      return;
    }

    const std::string content_type = response.get_header_value("Content-Type");
    std::vector<Triple> triples;
    std::vector<std::string> found_urls;

    try {
      if (const auto dump = classify_dump_path(claim.path)) {
        triples = parse(decompress(response.body, dump->second), dump->first);
      } else if (const auto format = format_for_media_type(content_type)) {
        triples = parse(response.body, *format);
      } else if (content_type.rfind("text/html", 0) == 0) {
        for (const auto& t : extract_rdfa(response.body)) {
          triples.push_back({t.subject, t.predicate, t.object});
        }
        if (claim.path == "/") {
          found_urls.push_back("http://" + claim.host_port +
                               "/api/3/action/package_list");
        }
      } else if (content_type.rfind("application/json", 0) == 0) {
        process_catalogue(claim, response.body, found_urls);
      }
    } catch (const std::exception&) {
      // Undecodable content counts as a failed fetch but is never retried:
      // the body arrived, it just did not parse.
      ++fetch_failures_;
      return;
    }

    // SPARQL paging: a full page means there may be more.
    if (claim.path.size() >= 7 &&
        claim.path.compare(claim.path.size() - 7, 7, "/sparql") == 0 &&
        triples.size() == options_.sparql_page_size) {
      const auto offset = offset_of_page_query(claim.query);
      if (offset) {
        found_urls.push_back(
            "http://" + claim.host_port + "/sparql?query=" +
            percent_encode(construct_page_query(options_.sparql_page_size,
                                                *offset +
                                                    options_.sparql_page_size)));
      }
    }

    if (!triples.empty()) post_to_sink(claim.url, triples, sink);

    for (const auto& t : triples) {
      found_urls.push_back(t.subject);
      found_urls.push_back(t.object);
    }
    std::lock_guard<std::mutex> lock(frontier_.mutex);
    for (const auto& url : found_urls) enqueue_locked(url);
  }

  void process_catalogue(const Claim& claim, const std::string& body,
                         std::vector<std::string>& found_urls) {
    const json parsed = json::parse(body, nullptr, false);
    if (parsed.is_discarded() || !parsed.is_object()) return;
    if (claim.path.ends_with("/package_list") && parsed.contains("result")) {
      for (const auto& id : parsed["result"]) {
        if (!id.is_string()) continue;
        found_urls.push_back("http://" + claim.host_port +
                             "/api/3/action/package_show?id=" +
                             percent_encode(id.get<std::string>()));
      }
    } else if (claim.path.ends_with("/package_show") &&
               parsed.contains("result")) {
      const auto& result = parsed["result"];
      if (result.contains("resources")) {
        for (const auto& resource : result["resources"]) {
          if (resource.contains("url") && resource["url"].is_string()) {
            found_urls.push_back(resource["url"].get<std::string>());
          }
        }
      }
    }
  }

  void post_to_sink(const std::string& source_url,
                    const std::vector<Triple>& triples, httplib::Client& sink) {
    std::string body;
    for (const auto& t : triples) {
      body += canonical_line(t);
      body += '\n';
    }
    const std::string target =
        sink_path_ + "?graph=" + percent_encode(source_url);
    for (int attempt = 0; attempt < 3; ++attempt) {
      auto result = sink.Post(target.c_str(), body, "application/n-triples");
      if (result && result->status < 300) {
        triples_posted_ += triples.size();
        return;
      }
    }
    ++post_failures_;
  }

  CrawlOptions options_;
  std::atomic<bool>& stop_;
  Frontier frontier_;
  std::string sink_host_;
  std::string sink_path_;
  std::atomic<std::uint64_t> fetched_{0};
  std::atomic<std::uint64_t> fetch_failures_{0};
  std::atomic<std::uint64_t> triples_posted_{0};
  std::atomic<std::uint64_t> post_failures_{0};
};

}  // namespace

RefCrawler::RefCrawler(CrawlOptions options) : options_(options) {}

int RefCrawler::crawl(const std::vector<std::string>& seeds,
                      const std::string& sink_url) {
  Engine engine(options_, sink_url, stop_);
  for (const auto& seed : seeds) engine.enqueue_seed(seed);
  engine.run();
  stats_ = engine.final_stats();
  return stop_.load() ? 130 : 0;
}

void RefCrawler::request_stop() { stop_.store(true); }

}  // namespace crawlbench
