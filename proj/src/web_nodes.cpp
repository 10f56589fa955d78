// Copyright (C) 2026 crawlbench contributors
// SPDX-License-Identifier: Apache-2.0

#include "crawlbench/web_nodes.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cstdio>
#include <mutex>
#include <sstream>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "crawlbench/rdf_gen.hpp"
#include "crawlbench/rdf_io.hpp"

namespace crawlbench {

using nlohmann::json;

namespace {

std::string format_delay(double seconds) {
  if (seconds == static_cast<double>(static_cast<long long>(seconds))) {
    return std::to_string(static_cast<long long>(seconds));
  }
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.10g", seconds);
  return buffer;
}

std::string html_escape(const std::string& value) {
  std::string out;
  out.reserve(value.size());
  for (char c : value) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string build_rdfa_page(const NodeSpec& spec,
                            const std::vector<Triple>& triples) {
  // One div per subject, one anchor per triple: the about/rel/href pattern
  // every RDFa 1.1 extractor understands.
  std::vector<std::string> subject_order;
  std::unordered_map<std::string, std::vector<const Triple*>> by_subject;
  for (const auto& t : triples) {
    auto [it, inserted] = by_subject.try_emplace(t.subject);
    if (inserted) subject_order.push_back(t.subject);
    it->second.push_back(&t);
  }
  std::string out = "<!DOCTYPE html>\n<html>\n<head><title>node " +
                    std::to_string(spec.id) + "</title></head>\n<body>\n";
  for (const auto& subject : subject_order) {
    out += "  <div about=\"" + html_escape(subject) + "\">\n";
    for (const Triple* t : by_subject[subject]) {
      out += "    <a rel=\"" + html_escape(t->predicate) + "\" href=\"" +
             html_escape(t->object) + "\">" + html_escape(t->object) +
             "</a>\n";
    }
    out += "  </div>\n";
  }
  out += "</body>\n</html>\n";
  return out;
}

std::int64_t monotonic_ns() {
  return std::chrono::duration_cast<std::chrono::nanoseconds>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

json uri_binding(const std::string& value) {
  return json{{"type", "uri"}, {"value", value}};
}

}  // namespace

int parse_host_port(const std::string& host) {
  const std::size_t colon = host.rfind(':');
  if (colon == std::string::npos) return 0;
  try {
    return std::stoi(host.substr(colon + 1));
  } catch (const std::exception&) {
    return 0;
  }
}

std::string robots_txt_text(double crawl_delay_seconds, bool any_disallowed) {
  std::string out = "User-agent: *\n";
  if (any_disallowed) out += "Disallow: /disallowed/\n";
  if (crawl_delay_seconds > 0.0) {
    out += "Crawl-delay: " + format_delay(crawl_delay_seconds) + "\n";
  }
  return out;
}

std::optional<SparqlQuery> parse_sparql(const std::string& query,
                                        std::string& error) {
  // Tokenize: braces are their own tokens, keywords are case-insensitive.
  std::vector<std::string> tokens;
  std::string current;
  for (char c : query) {
    if (std::isspace(static_cast<unsigned char>(c)) || c == '{' || c == '}') {
      if (!current.empty()) {
        tokens.push_back(current);
        current.clear();
      }
      if (c == '{' || c == '}') tokens.emplace_back(1, c);
    } else {
      current += c;
    }
  }
  if (!current.empty()) tokens.push_back(current);

  std::size_t pos = 0;
  const auto upper = [](std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return std::toupper(c); });
    return s;
  };
  const auto peek = [&]() -> std::string {
    return pos < tokens.size() ? tokens[pos] : "";
  };
  const auto take = [&]() -> std::string {
    return pos < tokens.size() ? tokens[pos++] : "";
  };
  const auto expect = [&](const std::string& want, const char* what) {
    const std::string got = take();
    if ((want == "{" || want == "}") ? got != want : upper(got) != want) {
      error = std::string("expected ") + what;
      return false;
    }
    return true;
  };
  const auto expect_pattern = [&]() {
    if (!expect("{", "'{'")) return false;
    for (const char* var : {"?s", "?p", "?o"}) {
      if (take() != var) {
        error = "only the pattern { ?s ?p ?o } is supported";
        return false;
      }
    }
    if (peek() == ".") take();
    return expect("}", "'}'");
  };

  SparqlQuery result;
  const std::string verb = upper(take());
  if (verb == "SELECT") {
    for (const char* var : {"?s", "?p", "?o"}) {
      if (take() != var) {
        error = "only SELECT ?s ?p ?o is supported";
        return std::nullopt;
      }
    }
    if (!expect("WHERE", "WHERE")) return std::nullopt;
    if (!expect_pattern()) return std::nullopt;
  } else if (verb == "CONSTRUCT") {
    result.construct = true;
    if (!expect_pattern()) return std::nullopt;
    if (!expect("WHERE", "WHERE")) return std::nullopt;
    if (!expect_pattern()) return std::nullopt;
  } else {
    error = "only SELECT and CONSTRUCT queries are supported";
    return std::nullopt;
  }

  while (pos < tokens.size()) {
    const std::string keyword = upper(take());
    if (keyword != "LIMIT" && keyword != "OFFSET") {
      error = "unexpected token after graph pattern: " + keyword;
      return std::nullopt;
    }
    const std::string number = take();
    std::uint64_t value = 0;
    try {
      std::size_t consumed = 0;
      value = std::stoull(number, &consumed);
      if (consumed != number.size()) throw std::invalid_argument(number);
    } catch (const std::exception&) {
      error = keyword + " expects a non-negative integer";
      return std::nullopt;
    }
    if (keyword == "LIMIT") result.limit = value;
    else result.offset = value;
  }
  return result;
}

NodeRuntime::NodeRuntime(const CloudManifest& manifest, std::uint32_t node_id)
    : spec_(manifest.web.nodes.at(node_id)) {
  const NodeData& data = manifest.per_node.at(node_id);
  triples_ = data.graph.all_triples();
  for (const auto& t : triples_) by_subject_[t.subject].push_back(t);
  robots_ = robots_txt_text(manifest.config.crawl_delay_seconds,
                            !data.disallowed.empty());

  switch (spec_.type) {
    case NodeType::DumpFile: {
      const std::string& format_ext = format_info(spec_.dump_format).extension;
      dump_path_ = "/dumpFile" + format_ext +
                   compression_extension(spec_.dump_compression);
      dump_bytes_ = compress(serialize(triples_, spec_.dump_format),
                             spec_.dump_compression, format_ext);
      dump_media_type_ =
          dump_content_type(spec_.dump_format, spec_.dump_compression);
      break;
    }
    case NodeType::Ckan: {
      const auto targets = manifest.web.targets_of(node_id);
      for (std::size_t i = 0; i < targets.size(); ++i) {
        datasets_.emplace_back(
            "dataset-" + std::to_string(i),
            manifest.per_node.at(targets[i]).served_urls.at("entrance"));
      }
      index_html_ =
          "<!DOCTYPE html>\n<html>\n<head><title>catalogue node " +
          std::to_string(spec_.id) + "</title></head>\n<body>\n<ul>\n";
      for (const auto& [id, url] : datasets_) {
        index_html_ += "  <li><a href=\"" + html_escape(url) + "\">" + id +
                       "</a></li>\n";
      }
      index_html_ += "</ul>\n</body>\n</html>\n";
      break;
    }
    case NodeType::Rdfa:
      page_html_ = build_rdfa_page(spec_, triples_);
      break;
    default:
      break;
  }
}

int NodeRuntime::host_port() const { return parse_host_port(spec_.host); }

HttpResponseView NodeRuntime::handle(const HttpRequestView& request) const {
  if (request.path == "/robots.txt") {
    return {200, "text/plain", robots_};
  }
  switch (spec_.type) {
    case NodeType::Dereferencing: return handle_dereferencing(request);
    case NodeType::DumpFile: return handle_dump(request);
    case NodeType::Sparql: return handle_sparql(request);
    case NodeType::Ckan: return handle_ckan(request);
    case NodeType::Rdfa: return handle_rdfa(request);
  }
  return {404, "text/plain", "not found\n"};
}

HttpResponseView NodeRuntime::handle_dereferencing(
    const HttpRequestView& request) const {
  if (request.method != "GET") {
    return {400, "text/plain", "only GET is supported\n"};
  }
  const std::string iri = "http://" + spec_.host + request.path;
  const auto it = by_subject_.find(iri);
  if (it == by_subject_.end()) {
    return {404, "text/plain", "unknown resource\n"};
  }
  const Negotiated negotiated = negotiate(request.accept);
  if (!negotiated.acceptable()) {
    return {406, "text/plain", "no acceptable RDF serialization\n"};
  }
  const RdfFormatKind format = *negotiated.format;
  return {200, format_info(format).media_type, serialize(it->second, format)};
}

HttpResponseView NodeRuntime::handle_dump(const HttpRequestView& request) const {
  if (request.method == "GET" && request.path == dump_path_) {
    return {200, dump_media_type_, dump_bytes_};
  }
  return {404, "text/plain", "not found\n"};
}

HttpResponseView NodeRuntime::handle_sparql(const HttpRequestView& request) const {
  if (request.path != "/sparql") {
    return {404, "text/plain", "not found\n"};
  }
  const auto it = request.query.find("query");
  if (it == request.query.end()) {
    return {400, "text/plain", "missing query parameter\n"};
  }
  std::string error;
  const auto parsed = parse_sparql(it->second, error);
  if (!parsed) {
    return {400, "text/plain", "unsupported query: " + error + "\n"};
  }

  const std::uint64_t offset = std::min<std::uint64_t>(parsed->offset, triples_.size());
  std::uint64_t count = triples_.size() - offset;
  if (parsed->limit) count = std::min(count, *parsed->limit);
  const auto first = triples_.begin() + static_cast<std::ptrdiff_t>(offset);
  const std::vector<Triple> page(first, first + static_cast<std::ptrdiff_t>(count));

  if (parsed->construct) {
    const Negotiated negotiated = negotiate(request.accept);
    if (!negotiated.acceptable()) {
      return {406, "text/plain", "no acceptable RDF serialization\n"};
    }
    const RdfFormatKind format = *negotiated.format;
    return {200, format_info(format).media_type, serialize(page, format)};
  }

  json bindings = json::array();
  for (const auto& t : page) {
    bindings.push_back(json{{"s", uri_binding(t.subject)},
                            {"p", uri_binding(t.predicate)},
                            {"o", uri_binding(t.object)}});
  }
  const json body{{"head", json{{"vars", json::array({"s", "p", "o"})}}},
                  {"results", json{{"bindings", bindings}}}};
  return {200, "application/sparql-results+json", body.dump()};
}

HttpResponseView NodeRuntime::handle_ckan(const HttpRequestView& request) const {
  if (request.method != "GET") {
    return {400, "text/plain", "only GET is supported\n"};
  }
  if (request.path == "/" || request.path == "/index.html") {
    return {200, "text/html", index_html_};
  }
  if (request.path == "/api/3/action/package_list") {
    json ids = json::array();
    for (const auto& [id, url] : datasets_) ids.push_back(id);
    const json body{{"help", "list datasets"}, {"success", true}, {"result", ids}};
    return {200, "application/json", body.dump()};
  }
  if (request.path == "/api/3/action/package_show") {
    const auto it = request.query.find("id");
    if (it == request.query.end()) {
      return {400, "application/json",
              json{{"success", false}, {"error", "missing id"}}.dump()};
    }
    for (const auto& [id, url] : datasets_) {
      if (id == it->second) {
        const json body{
            {"help", "show dataset"},
            {"success", true},
            {"result",
             json{{"name", id},
                  {"resources", json::array({json{{"url", url},
                                                  {"format", "RDF"}}})}}}};
        return {200, "application/json", body.dump()};
      }
    }
    return {404, "application/json",
            json{{"success", false}, {"error", "unknown dataset"}}.dump()};
  }
  return {404, "text/plain", "not found\n"};
}

HttpResponseView NodeRuntime::handle_rdfa(const HttpRequestView& request) const {
  if (request.method == "GET" &&
      (request.path == "/index.html" || request.path == "/")) {
    return {200, "text/html", page_html_};
  }
  return {404, "text/plain", "not found\n"};
}

// ---------------------------------------------------------------------------
// NodeServer

struct NodeServer::Impl {
  explicit Impl(const CloudManifest& manifest, std::uint32_t node_id)
      : runtime(manifest, node_id) {}

  NodeRuntime runtime;
  httplib::Server server;
  std::thread thread;
  mutable std::mutex log_mutex;
  std::vector<RequestRecord> log;
  bool running = false;
};

NodeServer::NodeServer(const CloudManifest& manifest, std::uint32_t node_id,
                       int listen_port)
    : impl_(std::make_unique<Impl>(manifest, node_id)) {
  port_ = listen_port > 0 ? listen_port : impl_->runtime.host_port();

  impl_->server.new_task_queue = [] { return new httplib::ThreadPool(4); };
  impl_->server.set_tcp_nodelay(true);

  // Every request is logged on arrival, before any routing or filtering; the
  // server observes impolite behaviour instead of rejecting it.
  impl_->server.set_pre_routing_handler(
      [impl = impl_.get()](const httplib::Request& req, httplib::Response&) {
        RequestRecord record;
        record.node_id = impl->runtime.spec().id;
        record.path = req.path;
        record.disallowed_hit = req.path.rfind("/disallowed/", 0) == 0;
        std::lock_guard<std::mutex> lock(impl->log_mutex);
        record.arrival_ns = monotonic_ns();
        impl->log.push_back(std::move(record));
        return httplib::Server::HandlerResponse::Unhandled;
      });

  const auto dispatch = [impl = impl_.get()](const httplib::Request& req,
                                             httplib::Response& res) {
    HttpRequestView view;
    view.method = req.method;
    view.path = req.path;
    for (const auto& [key, value] : req.params) view.query.emplace(key, value);
    if (req.has_header("Accept")) view.accept = req.get_header_value("Accept");
    if (req.method == "POST" &&
        req.get_header_value("Content-Type").rfind("application/sparql-query", 0) == 0) {
      view.query["query"] = req.body;
    }
    const HttpResponseView out = impl->runtime.handle(view);
    res.status = out.status;
    res.set_content(out.body, out.content_type);
  };
  impl_->server.Get(".*", dispatch);
  impl_->server.Post(".*", dispatch);
}

NodeServer::~NodeServer() { stop(); }

bool NodeServer::start() {
  if (port_ <= 0) return false;
  if (!impl_->server.bind_to_port("127.0.0.1", port_)) return false;
  impl_->running = true;
  impl_->thread = std::thread([impl = impl_.get()] {
    impl->server.listen_after_bind();
  });
  impl_->server.wait_until_ready();
  return true;
}

void NodeServer::stop() {
  if (impl_ && impl_->running) {
    impl_->server.stop();
    if (impl_->thread.joinable()) impl_->thread.join();
    impl_->running = false;
  }
}

std::vector<RequestRecord> NodeServer::drain_request_log() const {
  std::lock_guard<std::mutex> lock(impl_->log_mutex);
  return impl_->log;
}

const NodeRuntime& NodeServer::runtime() const { return impl_->runtime; }

}  // namespace crawlbench
