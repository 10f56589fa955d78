// Copyright (C) 2026 crawlbench contributors
// SPDX-License-Identifier: Apache-2.0

#include "crawlbench/rdf_gen.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

namespace crawlbench {

namespace {

/// Weighted sampling without replacement: weight of item i is degrees[i] + 1.
/// Draws `count` distinct indices; a drawn item's weight drops to zero.
std::vector<std::uint32_t> sample_by_degree(const std::vector<std::uint64_t>& degrees,
                                            std::size_t count, RngStream& rng) {
  std::vector<double> weights(degrees.size());
  double total = 0.0;
  for (std::size_t i = 0; i < degrees.size(); ++i) {
    weights[i] = static_cast<double>(degrees[i] + 1);
    total += weights[i];
  }
  std::vector<std::uint32_t> chosen;
  chosen.reserve(count);
  for (std::size_t n = 0; n < count && total > 0.0; ++n) {
    double pick = rng.next_real() * total;
    std::size_t selected = degrees.size() - 1;
    for (std::size_t i = 0; i < weights.size(); ++i) {
      if (weights[i] <= 0.0) continue;
      pick -= weights[i];
      if (pick <= 0.0) {
        selected = i;
        break;
      }
    }
    chosen.push_back(static_cast<std::uint32_t>(selected));
    total -= weights[selected];
    weights[selected] = 0.0;
  }
  return chosen;
}

}  // namespace

double direction_probability(std::uint64_t resource_degree) {
  if (resource_degree < 2) throw std::invalid_argument("undefined probability");
  const double d = static_cast<double>(resource_degree);
  return (0.5 * d - 1.0) / (d - 1.0);
}

std::string uri_for(const NodeSpec& node, std::uint64_t resource_index) {
  switch (node.type) {
    case NodeType::Dereferencing:
    case NodeType::Sparql:
    case NodeType::Rdfa:
      return "http://" + node.host + "/dataset-0/resource-" +
             std::to_string(resource_index);
    case NodeType::DumpFile:
      return "http://" + node.host + "/dumpFile" +
             format_info(node.dump_format).extension +
             compression_extension(node.dump_compression) +
             "#dataset-0-resource-" + std::to_string(resource_index);
    case NodeType::Ckan:
      throw std::invalid_argument("catalogue nodes have no generated resources");
  }
  throw std::logic_error("unknown node type");
}

std::string entrance_reference(const NodeSpec& node) {
  switch (node.type) {
    case NodeType::Dereferencing:
    case NodeType::DumpFile:
      return uri_for(node, 0);
    case NodeType::Sparql:
      return "http://" + node.host + "/sparql";
    case NodeType::Ckan:
      return "http://" + node.host + "/";
    case NodeType::Rdfa:
      return "http://" + node.host + "/index.html";
  }
  throw std::logic_error("unknown node type");
}

std::vector<std::string> generate_properties(const NodeSpec& node) {
  std::vector<std::string> properties;
  properties.reserve(8);
  for (int i = 0; i < 8; ++i) {
    properties.push_back("http://" + node.host + "/ontology/property-" +
                         std::to_string(i));
  }
  return properties;
}

RdfGraph generate_internal_graph(const NodeSpec& node,
                                 std::uint64_t internal_triple_count,
                                 const std::vector<std::string>& properties,
                                 std::uint64_t avg_resource_degree,
                                 RngStream& rng) {
  if (internal_triple_count > 0 && properties.empty()) {
    throw std::invalid_argument("property set must not be empty");
  }
  if (avg_resource_degree < 1) {
    throw std::invalid_argument("average resource degree must be at least 1");
  }

  RdfGraph graph;
  graph.properties = properties;
  graph.resources.push_back(uri_for(node, 0));
  std::vector<std::uint64_t> degrees = {0};

  while (graph.internal_triples.size() < internal_triple_count) {
    const std::string new_resource = uri_for(node, graph.resources.size());
    const std::uint64_t target_degree =
        static_cast<std::uint64_t>(rng.uniform_int(
            1, static_cast<std::int64_t>(2 * avg_resource_degree)));
    const std::size_t want = std::min<std::size_t>(
        static_cast<std::size_t>(target_degree), graph.resources.size());

    const std::vector<std::uint32_t> chosen = sample_by_degree(degrees, want, rng);
    std::uint64_t new_degree = 0;
    for (std::uint32_t index : chosen) {
      if (graph.internal_triples.size() >= internal_triple_count) break;
      // The first triple always points at the new resource so the graph stays
      // reachable from the entrance.
      const bool incoming =
          new_degree == 0 || rng.bernoulli(direction_probability(target_degree));
      const std::string& property =
          properties[rng.uniform_index(properties.size())];
      const std::string& existing = graph.resources[index];
      if (incoming) {
        graph.internal_triples.push_back({existing, property, new_resource});
      } else {
        graph.internal_triples.push_back({new_resource, property, existing});
      }
      ++new_degree;
      ++degrees[index];
    }
    graph.resources.push_back(new_resource);
    degrees.push_back(new_degree);
  }
  return graph;
}

void add_outgoing_links(RdfGraph& graph, const std::vector<ExternalRef>& targets,
                        RngStream& rng) {
  for (const auto& target : targets) {
    const std::string& subject =
        graph.resources[rng.uniform_index(graph.resources.size())];
    const std::string& property =
        graph.properties[rng.uniform_index(graph.properties.size())];
    graph.outgoing_triples.push_back({subject, property, target.entrance});
    graph.externals.push_back(target.entrance);
  }
  std::sort(graph.externals.begin(), graph.externals.end());
  graph.externals.erase(
      std::unique(graph.externals.begin(), graph.externals.end()),
      graph.externals.end());
}

std::vector<std::string> inject_disallowed(RdfGraph& graph, double ratio,
                                           const NodeSpec& node, RngStream& rng) {
  if (ratio <= 0.0) return {};
  if (node.type != NodeType::Dereferencing) {
    throw std::invalid_argument(
        "disallowed resources are only supported on dereferencing nodes");
  }
  const std::size_t count = static_cast<std::size_t>(
      std::ceil(ratio * static_cast<double>(graph.resources.size())));

  // Uniform selection without replacement over the original resources.
  std::vector<std::uint32_t> pool(graph.resources.size());
  for (std::uint32_t i = 0; i < pool.size(); ++i) pool[i] = i;
  std::vector<std::uint32_t> selected;
  for (std::size_t n = 0; n < count && !pool.empty(); ++n) {
    const std::size_t pick = rng.uniform_index(pool.size());
    selected.push_back(pool[pick]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(pick));
  }

  // Snapshot the pre-injection subject slices so copies never cascade.
  const std::vector<Triple> original_internal = graph.internal_triples;
  const std::vector<Triple> original_outgoing = graph.outgoing_triples;
  const std::string host_prefix = "http://" + node.host + "/";

  std::vector<std::string> disallowed;
  for (std::uint32_t index : selected) {
    const std::string& original = graph.resources[index];
    std::string copy = original;
    copy.insert(host_prefix.size(), "disallowed/");
    for (const auto& t : original_internal) {
      if (t.subject == original) {
        graph.internal_triples.push_back({copy, t.predicate, t.object});
      }
    }
    for (const auto& t : original_outgoing) {
      if (t.subject == original) {
        graph.outgoing_triples.push_back({copy, t.predicate, t.object});
      }
    }
    // The allowed pointer triple an impolite crawler follows to the copy.
    const std::string& property =
        graph.properties[rng.uniform_index(graph.properties.size())];
    graph.internal_triples.push_back({original, property, copy});
    graph.resources.push_back(copy);
    disallowed.push_back(copy);
  }
  std::sort(disallowed.begin(), disallowed.end());
  return disallowed;
}

}  // namespace crawlbench
