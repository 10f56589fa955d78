// Copyright (C) 2026 crawlbench contributors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "crawlbench/cloud_gen.hpp"
#include "crawlbench/manifest_io.hpp"
#include "crawlbench/rng.hpp"

using namespace crawlbench;

namespace {

CloudConfig experiment1_config() {
  CloudConfig config;
  config.node_count = 100;
  config.type_weights[static_cast<int>(NodeType::DumpFile)] = 40;
  config.type_weights[static_cast<int>(NodeType::Sparql)] = 30;
  config.type_weights[static_cast<int>(NodeType::Dereferencing)] = 21;
  config.type_weights[static_cast<int>(NodeType::Ckan)] = 5;
  config.type_weights[static_cast<int>(NodeType::Rdfa)] = 4;
  config.avg_node_degree = 20;
  config.triples_per_graph = 10;
  config.avg_resource_degree = 3;
  config.seed = 1;
  return config;
}

std::map<NodeType, int> count_types(const std::vector<NodeType>& types) {
  std::map<NodeType, int> counts;
  for (NodeType t : types) ++counts[t];
  return counts;
}

}  // namespace

TEST_CASE("assign_node_types covers every requested type exactly once first") {
  CloudConfig config;
  config.node_count = 2;
  config.type_weights[static_cast<int>(NodeType::Dereferencing)] = 1;
  config.type_weights[static_cast<int>(NodeType::DumpFile)] = 1;
  RngStream rng(1);
  const auto types = assign_node_types(config, rng);
  REQUIRE(types.size() == 2);
  const auto counts = count_types(types);
  CHECK(counts.at(NodeType::Dereferencing) == 1);
  CHECK(counts.at(NodeType::DumpFile) == 1);
}

TEST_CASE("assign_node_types with a single type") {
  CloudConfig config;
  config.node_count = 5;
  config.type_weights[static_cast<int>(NodeType::Dereferencing)] = 1;
  RngStream rng(1);
  const auto types = assign_node_types(config, rng);
  CHECK(types ==
        std::vector<NodeType>(5, NodeType::Dereferencing));
}

TEST_CASE("assign_node_types rejects too few nodes") {
  CloudConfig config = experiment1_config();
  config.node_count = 4;
  RngStream rng(1);
  CHECK_THROWS_WITH_AS(assign_node_types(config, rng),
                       "node count below type count", std::invalid_argument);
}

TEST_CASE("type frequencies track the configured distribution") {
  const CloudConfig config = experiment1_config();
  RngStream rng(SplitRng(config.seed).stream(StreamPurpose::NodeTypes));
  const auto types = assign_node_types(config, rng);
  const auto counts = count_types(types);
  const double total_weight = 100.0;
  for (int i = 0; i < kNodeTypeCount; ++i) {
    const auto type = static_cast<NodeType>(i);
    const double expectation =
        config.type_weights[i] / total_weight * 100.0;
    CHECK(counts.at(type) >= 1);
    CHECK(std::abs(counts.at(type) - expectation) <= 10.0);
  }
}

TEST_CASE("initial block gets every allowed ordered pair") {
  const std::vector<NodeType> types = {NodeType::Dereferencing,
                                       NodeType::DumpFile};
  RngStream rng(1);
  const WebGraph graph =
      build_node_graph(types, ConnectivityMatrix::defaults(), 4, rng);
  CHECK(graph.edges ==
        std::vector<std::pair<std::uint32_t, std::uint32_t>>{{0, 1}, {1, 0}});
}

TEST_CASE("connectivity matrix is honoured: no catalogue-to-dereferencing edges") {
  const CloudManifest manifest =
      generate_cloud(experiment1_config(), ConnectivityMatrix::defaults());
  for (const auto& [from, to] : manifest.web.edges) {
    const bool forbidden =
        manifest.web.nodes[from].type == NodeType::Ckan &&
        manifest.web.nodes[to].type == NodeType::Dereferencing;
    CHECK_FALSE(forbidden);
  }
  // Edge legality in full.
  for (const auto& [from, to] : manifest.web.edges) {
    CHECK(manifest.connectivity
              .allowed[static_cast<int>(manifest.web.nodes[from].type)]
                      [static_cast<int>(manifest.web.nodes[to].type)]);
  }
}

TEST_CASE("average degree lands near the configured value") {
  CloudConfig config = experiment1_config();
  config.node_count = 100;
  config.avg_node_degree = 20;
  RngStream types_rng(SplitRng(7).stream(StreamPurpose::NodeTypes));
  const auto types = assign_node_types(config, types_rng);
  RngStream graph_rng(SplitRng(7).stream(StreamPurpose::NodeGraph));
  const WebGraph graph =
      build_node_graph(types, ConnectivityMatrix::defaults(), 20, graph_rng);
  const double average =
      2.0 * static_cast<double>(graph.edges.size()) /
      static_cast<double>(graph.nodes.size());
  CHECK(average >= 18.0);
  CHECK(average <= 22.0);
}

TEST_CASE("isolated type under the connectivity matrix is an error") {
  ConnectivityMatrix matrix;
  for (auto& row : matrix.allowed) row.fill(false);
  matrix.allowed[static_cast<int>(NodeType::Dereferencing)]
                [static_cast<int>(NodeType::Dereferencing)] = true;
  const std::vector<NodeType> types = {NodeType::Dereferencing,
                                       NodeType::Dereferencing,
                                       NodeType::DumpFile};
  RngStream rng(1);
  CHECK_THROWS_WITH_AS(build_node_graph(types, matrix, 4, rng),
                       "isolated type under connectivity matrix",
                       std::runtime_error);
}

TEST_CASE("greedy seed set on hand graphs") {
  SUBCASE("strongly connected cycle needs one seed") {
    WebGraph graph;
    graph.nodes.resize(3);
    graph.edges = {{0, 1}, {1, 2}, {2, 0}};
    CHECK(compute_seed_set(graph) == std::vector<std::uint32_t>{0});
  }
  SUBCASE("two unreachable components need one seed each") {
    WebGraph graph;
    graph.nodes.resize(4);
    graph.edges = {{0, 1}, {2, 3}};
    CHECK(compute_seed_set(graph) == std::vector<std::uint32_t>{0, 2});
  }
}

TEST_CASE("seed set makes random generated graphs crawlable") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    CloudConfig config = experiment1_config();
    config.node_count = 50;
    config.seed = seed;
    RngStream types_rng(SplitRng(seed).stream(StreamPurpose::NodeTypes));
    const auto types = assign_node_types(config, types_rng);
    RngStream graph_rng(SplitRng(seed).stream(StreamPurpose::NodeGraph));
    WebGraph graph =
        build_node_graph(types, ConnectivityMatrix::defaults(), 6, graph_rng);
    graph.seeds = compute_seed_set(graph);
    CHECK(check_crawlable(graph, graph.seeds));
  }
}

TEST_CASE("preferential attachment produces a heavy tail") {
  // Over 20 seeds at 200 nodes, the maximum in-degree must exceed three times
  // the median in-degree.
  for (std::uint64_t seed = 100; seed < 120; ++seed) {
    CloudConfig config = experiment1_config();
    config.node_count = 200;
    config.seed = seed;
    RngStream types_rng(SplitRng(seed).stream(StreamPurpose::NodeTypes));
    const auto types = assign_node_types(config, types_rng);
    RngStream graph_rng(SplitRng(seed).stream(StreamPurpose::NodeGraph));
    const WebGraph graph =
        build_node_graph(types, ConnectivityMatrix::defaults(), 20, graph_rng);

    std::vector<std::uint64_t> in_degree(graph.nodes.size(), 0);
    for (const auto& [from, to] : graph.edges) ++in_degree[to];
    std::sort(in_degree.begin(), in_degree.end());
    const std::uint64_t median = in_degree[in_degree.size() / 2];
    const std::uint64_t max = in_degree.back();
    CHECK(max > 3 * median);
  }
}

TEST_CASE("generation is deterministic including the trace") {
  const CloudConfig config = experiment1_config();
  GenerationTrace first_trace;
  GenerationTrace second_trace;
  const CloudManifest first =
      generate_cloud(config, ConnectivityMatrix::defaults(), &first_trace);
  const CloudManifest second =
      generate_cloud(config, ConnectivityMatrix::defaults(), &second_trace);
  CHECK(first_trace.text() == second_trace.text());
  CHECK(encode_manifest_json(first) == encode_manifest_json(second));
}

TEST_CASE("replaying the trace reconstructs the node graph") {
  const CloudConfig config = experiment1_config();
  GenerationTrace trace;
  const CloudManifest manifest =
      generate_cloud(config, ConnectivityMatrix::defaults(), &trace);

  std::vector<NodeType> types;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  std::vector<std::uint32_t> seeds;
  std::stringstream stream(trace.text());
  std::string line;
  while (std::getline(stream, line)) {
    std::stringstream fields(line);
    std::string tag;
    fields >> tag;
    if (tag == "node") {
      std::uint32_t id;
      std::string type_name;
      fields >> id >> type_name;
      REQUIRE(id == types.size());
      types.push_back(node_type_from_string(type_name));
    } else if (tag == "edge") {
      std::uint32_t from, to;
      fields >> from >> to;
      edges.emplace_back(from, to);
    } else if (tag == "seed") {
      std::uint32_t id;
      fields >> id;
      seeds.push_back(id);
    }
  }
  std::sort(edges.begin(), edges.end());

  REQUIRE(types.size() == manifest.web.nodes.size());
  for (std::size_t i = 0; i < types.size(); ++i) {
    CHECK(types[i] == manifest.web.nodes[i].type);
  }
  CHECK(edges == manifest.web.edges);
  CHECK(seeds == manifest.web.seeds);
}

TEST_CASE("disallowed copies are sized by the ceiling rule") {
  CloudConfig config;
  config.node_count = 25;
  config.type_weights[static_cast<int>(NodeType::Dereferencing)] = 1;
  config.avg_node_degree = 5;
  config.triples_per_graph = 60;
  config.avg_resource_degree = 6;
  config.disallowed_ratio = 0.1;
  config.crawl_delay_seconds = 10.0;
  config.seed = 9;
  const CloudManifest manifest =
      generate_cloud(config, ConnectivityMatrix::defaults());
  for (const auto& data : manifest.per_node) {
    const std::size_t originals =
        data.graph.resources.size() - data.disallowed.size();
    const auto expected_copies = static_cast<std::size_t>(
        std::ceil(0.1 * static_cast<double>(originals)));
    CHECK(data.disallowed.size() == expected_copies);
    for (const auto& iri : data.disallowed) {
      CHECK(iri.find("/disallowed/") != std::string::npos);
    }
  }
}

TEST_CASE("every non-catalogue node carries its configured triple count") {
  const CloudManifest manifest =
      generate_cloud(experiment1_config(), ConnectivityMatrix::defaults());
  for (std::uint32_t id = 0; id < manifest.web.nodes.size(); ++id) {
    const auto& spec = manifest.web.nodes[id];
    const auto& data = manifest.per_node[id];
    if (spec.type == NodeType::Ckan) {
      CHECK(data.graph.all_triples().empty());
      CHECK(data.expected_lines.empty());
      continue;
    }
    const std::size_t total = data.graph.internal_triples.size() +
                              data.graph.outgoing_triples.size();
    // tau, unless the out-degree exceeds tau (then all triples are links).
    const std::size_t out_degree = manifest.web.out_degree(id);
    const std::size_t expected =
        std::max<std::size_t>(manifest.config.triples_per_graph, out_degree);
    CHECK(total == expected);
    CHECK(data.graph.outgoing_triples.size() == out_degree);
  }
}

TEST_CASE("outgoing triples point at the targets' entrances") {
  const CloudManifest manifest =
      generate_cloud(experiment1_config(), ConnectivityMatrix::defaults());
  for (std::uint32_t id = 0; id < manifest.web.nodes.size(); ++id) {
    if (manifest.web.nodes[id].type == NodeType::Ckan) continue;
    const auto targets = manifest.web.targets_of(id);
    std::set<std::string> expected_entrances;
    for (std::uint32_t target : targets) {
      expected_entrances.insert(
          manifest.per_node[target].served_urls.at("entrance"));
    }
    std::set<std::string> actual;
    for (const auto& t : manifest.per_node[id].graph.outgoing_triples) {
      if (t.subject.find("/disallowed/") == std::string::npos) {
        actual.insert(t.object);
      }
    }
    CHECK(actual == expected_entrances);
  }
}
