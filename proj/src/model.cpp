// Copyright (C) 2026 crawlbench contributors
// SPDX-License-Identifier: Apache-2.0

#include "crawlbench/model.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>
#include <unordered_map>

namespace crawlbench {

std::string to_string(NodeType t) {
  switch (t) {
    case NodeType::Dereferencing: return "dereferencing";
    case NodeType::DumpFile: return "dump_file";
    case NodeType::Sparql: return "sparql";
    case NodeType::Ckan: return "ckan";
    case NodeType::Rdfa: return "rdfa";
  }
  throw std::logic_error("unknown node type");
}

NodeType node_type_from_string(const std::string& name) {
  for (int i = 0; i < kNodeTypeCount; ++i) {
    if (to_string(static_cast<NodeType>(i)) == name) {
      return static_cast<NodeType>(i);
    }
  }
  throw std::invalid_argument("unknown node type: " + name);
}

const RdfFormat& format_info(RdfFormatKind kind) {
  static const std::array<RdfFormat, kRdfFormatCount> table = {{
      {RdfFormatKind::NTriples, "application/n-triples", ".nt"},
      {RdfFormatKind::Turtle, "text/turtle", ".ttl"},
      {RdfFormatKind::RdfXml, "application/rdf+xml", ".rdf"},
      {RdfFormatKind::N3, "text/n3", ".n3"},
  }};
  return table[static_cast<int>(kind)];
}

std::string to_string(RdfFormatKind kind) {
  switch (kind) {
    case RdfFormatKind::NTriples: return "ntriples";
    case RdfFormatKind::Turtle: return "turtle";
    case RdfFormatKind::RdfXml: return "rdfxml";
    case RdfFormatKind::N3: return "n3";
  }
  throw std::logic_error("unknown format");
}

RdfFormatKind rdf_format_from_string(const std::string& name) {
  for (int i = 0; i < kRdfFormatCount; ++i) {
    if (to_string(static_cast<RdfFormatKind>(i)) == name) {
      return static_cast<RdfFormatKind>(i);
    }
  }
  throw std::invalid_argument("unknown RDF format: " + name);
}

std::string compression_extension(Compression c) {
  switch (c) {
    case Compression::None: return "";
    case Compression::Zip: return ".zip";
    case Compression::Gzip: return ".gz";
    case Compression::Bzip2: return ".bz2";
  }
  throw std::logic_error("unknown compression");
}

std::string to_string(Compression c) {
  switch (c) {
    case Compression::None: return "none";
    case Compression::Zip: return "zip";
    case Compression::Gzip: return "gzip";
    case Compression::Bzip2: return "bzip2";
  }
  throw std::logic_error("unknown compression");
}

Compression compression_from_string(const std::string& name) {
  for (int i = 0; i <= static_cast<int>(Compression::Bzip2); ++i) {
    if (to_string(static_cast<Compression>(i)) == name) {
      return static_cast<Compression>(i);
    }
  }
  throw std::invalid_argument("unknown compression: " + name);
}

std::string canonical_line(const Triple& t) {
  std::string line;
  line.reserve(t.subject.size() + t.predicate.size() + t.object.size() + 10);
  line += '<';
  line += t.subject;
  line += "> <";
  line += t.predicate;
  line += "> <";
  line += t.object;
  line += "> .";
  return line;
}

std::vector<std::string> canonical_lines(const std::vector<Triple>& triples) {
  std::vector<std::string> lines;
  lines.reserve(triples.size());
  for (const auto& t : triples) lines.push_back(canonical_line(t));
  std::sort(lines.begin(), lines.end());
  lines.erase(std::unique(lines.begin(), lines.end()), lines.end());
  return lines;
}

std::vector<NodeType> CloudConfig::positive_types() const {
  std::vector<NodeType> result;
  for (int i = 0; i < kNodeTypeCount; ++i) {
    if (type_weights[i] > 0.0) result.push_back(static_cast<NodeType>(i));
  }
  return result;
}

void CloudConfig::validate() const {
  double weight_sum = 0.0;
  for (double w : type_weights) {
    if (w < 0.0) throw std::invalid_argument("type weight must be non-negative");
    weight_sum += w;
  }
  if (weight_sum <= 0.0) {
    throw std::invalid_argument("sum of type weights must be positive");
  }
  if (node_count == 0) throw std::invalid_argument("node count must be positive");
  if (node_count < positive_types().size()) {
    throw std::invalid_argument("node count below type count");
  }
  if (avg_node_degree <= 0.0) {
    throw std::invalid_argument("average node degree must be positive");
  }
  if (triples_per_graph < 1) {
    throw std::invalid_argument("triples per graph must be at least 1");
  }
  if (avg_resource_degree < 1) {
    throw std::invalid_argument("average resource degree must be at least 1");
  }
  if (dump_compression_ratio < 0.0 || dump_compression_ratio > 1.0) {
    throw std::invalid_argument("dump compression ratio must be in [0,1]");
  }
  if (disallowed_ratio < 0.0 || disallowed_ratio > 1.0) {
    throw std::invalid_argument("disallowed ratio must be in [0,1]");
  }
  if (crawl_delay_seconds < 0.0) {
    throw std::invalid_argument("crawl delay must be non-negative");
  }
  if (dump_formats_enabled.empty()) {
    throw std::invalid_argument("at least one dump format must be enabled");
  }
  // One port per node plus the sink must fit below 65536.
  if (host_template.find("{port}") != std::string::npos &&
      static_cast<std::uint64_t>(base_port) + node_count >= 65535) {
    throw std::invalid_argument("base port too high for the node count");
  }
}

std::string CloudConfig::host_for(std::uint32_t node_id) const {
  std::string host = host_template;
  const auto replace_all = [&host](const std::string& what,
                                   const std::string& with) {
    std::size_t pos = 0;
    while ((pos = host.find(what, pos)) != std::string::npos) {
      host.replace(pos, what.size(), with);
      pos += with.size();
    }
  };
  replace_all("{k}", std::to_string(node_id));
  replace_all("{port}", std::to_string(base_port + node_id));
  return host;
}

ConnectivityMatrix ConnectivityMatrix::defaults() {
  ConnectivityMatrix m;
  for (auto& row : m.allowed) row.fill(true);
  m.allowed[static_cast<int>(NodeType::Ckan)]
           [static_cast<int>(NodeType::Dereferencing)] = false;
  return m;
}

std::vector<std::vector<std::uint32_t>> WebGraph::adjacency() const {
  std::vector<std::vector<std::uint32_t>> adj(nodes.size());
  for (const auto& [from, to] : edges) adj[from].push_back(to);
  for (auto& list : adj) std::sort(list.begin(), list.end());
  return adj;
}

std::size_t WebGraph::out_degree(std::uint32_t node) const {
  std::size_t n = 0;
  for (const auto& e : edges) {
    if (e.first == node) ++n;
  }
  return n;
}

std::vector<std::uint32_t> WebGraph::targets_of(std::uint32_t node) const {
  std::vector<std::uint32_t> targets;
  for (const auto& e : edges) {
    if (e.first == node) targets.push_back(e.second);
  }
  std::sort(targets.begin(), targets.end());
  return targets;
}

std::vector<Triple> RdfGraph::all_triples() const {
  std::vector<Triple> all = internal_triples;
  all.insert(all.end(), outgoing_triples.begin(), outgoing_triples.end());
  return all;
}

std::vector<Triple> RdfGraph::subject_slice(const std::string& iri) const {
  std::vector<Triple> slice;
  for (const auto& t : internal_triples) {
    if (t.subject == iri) slice.push_back(t);
  }
  for (const auto& t : outgoing_triples) {
    if (t.subject == iri) slice.push_back(t);
  }
  return slice;
}

std::vector<std::string> CloudManifest::seed_uris() const {
  std::vector<std::string> uris;
  for (std::uint32_t id : web.seeds) {
    auto it = per_node[id].served_urls.find("entrance");
    if (it != per_node[id].served_urls.end()) uris.push_back(it->second);
  }
  return uris;
}

GraphView as_view(const WebGraph& graph) {
  return GraphView{graph.nodes.size(), graph.adjacency()};
}

GraphView internal_view(const RdfGraph& graph) {
  std::unordered_map<std::string, std::uint32_t> index;
  index.reserve(graph.resources.size());
  for (std::uint32_t i = 0; i < graph.resources.size(); ++i) {
    index.emplace(graph.resources[i], i);
  }
  GraphView view;
  view.node_count = graph.resources.size();
  view.adjacency.resize(view.node_count);
  for (const auto& t : graph.internal_triples) {
    view.adjacency[index.at(t.subject)].push_back(index.at(t.object));
  }
  return view;
}

bool check_crawlable(const GraphView& graph,
                     std::span<const std::uint32_t> seeds) {
  std::vector<bool> reached(graph.node_count, false);
  std::deque<std::uint32_t> queue;
  for (std::uint32_t seed : seeds) {
    if (seed >= graph.node_count) {
      throw std::invalid_argument("seed not in graph");
    }
    if (!reached[seed]) {
      reached[seed] = true;
      queue.push_back(seed);
    }
  }
  std::size_t count = queue.size();
  while (!queue.empty()) {
    const std::uint32_t node = queue.front();
    queue.pop_front();
    for (std::uint32_t next : graph.adjacency[node]) {
      if (!reached[next]) {
        reached[next] = true;
        ++count;
        queue.push_back(next);
      }
    }
  }
  return count == graph.node_count;
}

bool check_crawlable(const WebGraph& graph,
                     std::span<const std::uint32_t> seeds) {
  return check_crawlable(as_view(graph), seeds);
}

bool entrance_reaches_all(const RdfGraph& graph) {
  if (graph.resources.empty()) return true;
  const std::uint32_t entrance[] = {0};
  return check_crawlable(internal_view(graph), entrance);
}

}  // namespace crawlbench
