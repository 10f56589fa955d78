// Copyright (C) 2026 crawlbench contributors
// SPDX-License-Identifier: Apache-2.0

#include "crawlbench/cloud_gen.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>

#include "crawlbench/rdf_gen.hpp"

namespace crawlbench {

namespace {

/// Weighted sampling without replacement over explicit candidate ids.
/// Weight of candidate j is weights[j]; tie-breaking and iteration order are
/// by ascending candidate id.
std::vector<std::uint32_t> sample_candidates(
    const std::vector<std::uint32_t>& candidates,
    const std::vector<std::uint64_t>& in_degree, std::size_t count,
    RngStream& rng) {
  std::vector<double> weights(candidates.size());
  double total = 0.0;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    weights[i] = static_cast<double>(in_degree[candidates[i]] + 1);
    total += weights[i];
  }
  std::vector<std::uint32_t> chosen;
  for (std::size_t n = 0; n < count && total > 0.0; ++n) {
    double pick = rng.next_real() * total;
    std::size_t selected = candidates.size() - 1;
    for (std::size_t i = 0; i < weights.size(); ++i) {
      if (weights[i] <= 0.0) continue;
      pick -= weights[i];
      if (pick <= 0.0) {
        selected = i;
        break;
      }
    }
    chosen.push_back(candidates[selected]);
    total -= weights[selected];
    weights[selected] = 0.0;
  }
  return chosen;
}

}  // namespace

std::string GenerationTrace::text() const {
  std::string out;
  for (const auto& line : lines) {
    out += line;
    out += '\n';
  }
  return out;
}

std::vector<NodeType> assign_node_types(const CloudConfig& config,
                                        RngStream& rng) {
  const std::vector<NodeType> positive = config.positive_types();
  if (positive.empty()) {
    throw std::invalid_argument("sum of type weights must be positive");
  }
  if (config.node_count < positive.size()) {
    throw std::invalid_argument("node count below type count");
  }
  // Deterministic prefix: one node of every requested type, in NodeType order.
  std::vector<NodeType> types = positive;
  types.reserve(config.node_count);

  double total = 0.0;
  for (NodeType t : positive) total += config.type_weights[static_cast<int>(t)];
  while (types.size() < config.node_count) {
    double pick = rng.next_real() * total;
    NodeType selected = positive.back();
    for (NodeType t : positive) {
      pick -= config.type_weights[static_cast<int>(t)];
      if (pick <= 0.0) {
        selected = t;
        break;
      }
    }
    types.push_back(selected);
  }
  return types;
}

WebGraph build_node_graph(const std::vector<NodeType>& types,
                          const ConnectivityMatrix& connectivity,
                          double avg_node_degree, RngStream& rng,
                          GenerationTrace* trace) {
  WebGraph graph;
  graph.nodes.reserve(types.size());
  for (std::uint32_t id = 0; id < types.size(); ++id) {
    NodeSpec spec;
    spec.id = id;
    spec.type = types[id];
    graph.nodes.push_back(spec);
    if (trace) {
      trace->lines.push_back("node " + std::to_string(id) + " " +
                             to_string(types[id]));
    }
  }

  std::size_t distinct = 0;
  {
    std::array<bool, kNodeTypeCount> seen{};
    for (NodeType t : types) {
      if (!seen[static_cast<int>(t)]) {
        seen[static_cast<int>(t)] = true;
        ++distinct;
      }
    }
  }
  const std::size_t initial_block = std::min(distinct, types.size());

  const auto allowed = [&](std::uint32_t from, std::uint32_t to) {
    return connectivity.allowed[static_cast<int>(types[from])]
                               [static_cast<int>(types[to])];
  };

  std::vector<std::uint64_t> in_degree(types.size(), 0);
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  const auto add_edge = [&](std::uint32_t from, std::uint32_t to,
                            const char* tag) {
    edges.emplace_back(from, to);
    ++in_degree[to];
    if (trace) {
      trace->lines.push_back("edge " + std::to_string(from) + " " +
                             std::to_string(to) + " " + tag);
    }
  };

  // All connections the matrix allows among the initial block.
  for (std::uint32_t i = 0; i < initial_block; ++i) {
    for (std::uint32_t j = 0; j < initial_block; ++j) {
      if (i != j && allowed(i, j)) add_edge(i, j, "initial");
    }
  }

  // Preferential attachment for every later node: roughly a quarter of the
  // configured average degree in each direction at insertion, the rest
  // accruing from nodes added later.
  const std::size_t connections_per_side = static_cast<std::size_t>(
      std::max<long>(1, std::lround(avg_node_degree / 4.0)));

  for (std::uint32_t node = static_cast<std::uint32_t>(initial_block);
       node < types.size(); ++node) {
    const std::uint64_t draws_before = rng.draw_count();
    std::vector<std::uint32_t> out_candidates;
    std::vector<std::uint32_t> in_candidates;
    for (std::uint32_t prior = 0; prior < node; ++prior) {
      if (allowed(node, prior)) out_candidates.push_back(prior);
      if (allowed(prior, node)) in_candidates.push_back(prior);
    }
    if (out_candidates.empty() && in_candidates.empty()) {
      throw std::runtime_error("isolated type under connectivity matrix");
    }
    for (std::uint32_t target : sample_candidates(
             out_candidates, in_degree,
             std::min(connections_per_side, out_candidates.size()), rng)) {
      add_edge(node, target, "out");
    }
    for (std::uint32_t source : sample_candidates(
             in_candidates, in_degree,
             std::min(connections_per_side, in_candidates.size()), rng)) {
      add_edge(source, node, "in");
    }
    if (trace) {
      trace->lines.push_back(
          "draws " + std::to_string(rng.draw_count() - draws_before));
    }
  }

  std::sort(edges.begin(), edges.end());
  graph.edges = std::move(edges);
  return graph;
}

std::vector<std::uint32_t> compute_seed_set(const WebGraph& graph) {
  const auto adjacency = graph.adjacency();
  std::vector<bool> marked(graph.nodes.size(), false);
  std::vector<std::uint32_t> seeds;
  for (std::uint32_t node = 0; node < graph.nodes.size(); ++node) {
    if (marked[node]) continue;
    seeds.push_back(node);
    std::deque<std::uint32_t> queue = {node};
    marked[node] = true;
    while (!queue.empty()) {
      const std::uint32_t current = queue.front();
      queue.pop_front();
      for (std::uint32_t next : adjacency[current]) {
        if (!marked[next]) {
          marked[next] = true;
          queue.push_back(next);
        }
      }
    }
  }
  return seeds;
}

CloudManifest generate_cloud(const CloudConfig& config,
                             const ConnectivityMatrix& connectivity,
                             GenerationTrace* trace) {
  config.validate();
  const SplitRng rng(config.seed);

  RngStream types_stream = rng.stream(StreamPurpose::NodeTypes);
  const std::vector<NodeType> types = assign_node_types(config, types_stream);

  RngStream graph_stream = rng.stream(StreamPurpose::NodeGraph);
  CloudManifest manifest;
  manifest.config = config;
  manifest.connectivity = connectivity;
  manifest.rng_algorithm = kRngAlgorithmId;
  manifest.web =
      build_node_graph(types, connectivity, config.avg_node_degree,
                       graph_stream, trace);

  // Hosts and dump-file formats (drawn per dump node, in node-id order).
  const std::vector<RdfFormatKind> enabled(config.dump_formats_enabled.begin(),
                                           config.dump_formats_enabled.end());
  RngStream dump_stream = rng.stream(StreamPurpose::DumpFormats);
  for (auto& spec : manifest.web.nodes) {
    spec.host = config.host_for(spec.id);
    if (spec.type == NodeType::DumpFile) {
      spec.dump_format = enabled[dump_stream.uniform_index(enabled.size())];
      if (dump_stream.bernoulli(config.dump_compression_ratio)) {
        static constexpr Compression codecs[] = {
            Compression::Zip, Compression::Gzip, Compression::Bzip2};
        spec.dump_compression = codecs[dump_stream.uniform_index(3)];
      } else {
        spec.dump_compression = Compression::None;
      }
    }
  }

  manifest.web.seeds = compute_seed_set(manifest.web);
  if (trace) {
    for (std::uint32_t seed : manifest.web.seeds) {
      trace->lines.push_back("seed " + std::to_string(seed));
    }
  }

  // Per-node RDF data, in node-id order.
  manifest.per_node.resize(manifest.web.nodes.size());
  for (const auto& spec : manifest.web.nodes) {
    NodeData& data = manifest.per_node[spec.id];
    data.served_urls["entrance"] = entrance_reference(spec);
    data.served_urls["robots"] = "http://" + spec.host + "/robots.txt";

    const std::vector<std::uint32_t> targets = manifest.web.targets_of(spec.id);
    if (spec.type == NodeType::Ckan) {
      // Catalogue nodes hold no generated triples; their outgoing links are
      // catalogue entries pointing at the targets' entrances.
      data.served_urls["catalogue"] =
          "http://" + spec.host + "/api/3/action/package_list";
      continue;
    }

    std::vector<ExternalRef> refs;
    refs.reserve(targets.size());
    for (std::uint32_t target : targets) {
      refs.push_back(
          {target, entrance_reference(manifest.web.nodes[target])});
    }
    const std::uint64_t outgoing_count = refs.size();
    const std::uint64_t internal_count =
        config.triples_per_graph > outgoing_count
            ? config.triples_per_graph - outgoing_count
            : 0;

    RngStream node_stream = rng.stream(StreamPurpose::RdfData, spec.id);
    data.graph = generate_internal_graph(spec, internal_count,
                                         generate_properties(spec),
                                         config.avg_resource_degree,
                                         node_stream);
    add_outgoing_links(data.graph, refs, node_stream);

    if (config.disallowed_ratio > 0.0 &&
        spec.type == NodeType::Dereferencing) {
      RngStream disallowed_stream =
          rng.stream(StreamPurpose::Disallowed, spec.id);
      data.disallowed = inject_disallowed(data.graph, config.disallowed_ratio,
                                          spec, disallowed_stream);
    }

    switch (spec.type) {
      case NodeType::DumpFile:
        data.served_urls["dump"] =
            "http://" + spec.host + "/dumpFile" +
            format_info(spec.dump_format).extension +
            compression_extension(spec.dump_compression);
        break;
      case NodeType::Sparql:
        data.served_urls["sparql"] = "http://" + spec.host + "/sparql";
        break;
      case NodeType::Rdfa:
        data.served_urls["page"] = "http://" + spec.host + "/index.html";
        break;
      default:
        break;
    }

    // Expected recall set: every served triple except the disallowed copies'
    // own statements.
    std::vector<Triple> expected;
    for (const auto& t : data.graph.all_triples()) {
      if (!std::binary_search(data.disallowed.begin(), data.disallowed.end(),
                              t.subject)) {
        expected.push_back(t);
      }
    }
    data.expected_lines = canonical_lines(expected);
  }
  return manifest;
}

}  // namespace crawlbench
