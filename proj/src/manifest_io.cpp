// Copyright (C) 2026 crawlbench contributors
// SPDX-License-Identifier: Apache-2.0

#include "crawlbench/manifest_io.hpp"

#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace crawlbench {

using nlohmann::json;

namespace {

json triples_to_json(const std::vector<Triple>& triples) {
  json out = json::array();
  for (const auto& t : triples) {
    out.push_back(json::array({t.subject, t.predicate, t.object}));
  }
  return out;
}

std::vector<Triple> triples_from_json(const json& array) {
  std::vector<Triple> triples;
  triples.reserve(array.size());
  for (const auto& entry : array) {
    triples.push_back({entry.at(0).get<std::string>(),
                       entry.at(1).get<std::string>(),
                       entry.at(2).get<std::string>()});
  }
  return triples;
}

json config_to_json(const CloudConfig& config) {
  json weights = json::object();
  for (int i = 0; i < kNodeTypeCount; ++i) {
    weights[to_string(static_cast<NodeType>(i))] = config.type_weights[i];
  }
  json formats = json::array();
  for (RdfFormatKind kind : config.dump_formats_enabled) {
    formats.push_back(to_string(kind));
  }
  return json{{"node_count", config.node_count},
              {"type_weights", weights},
              {"avg_node_degree", config.avg_node_degree},
              {"triples_per_graph", config.triples_per_graph},
              {"avg_resource_degree", config.avg_resource_degree},
              {"dump_compression_ratio", config.dump_compression_ratio},
              {"dump_formats_enabled", formats},
              {"disallowed_ratio", config.disallowed_ratio},
              {"crawl_delay", config.crawl_delay_seconds},
              {"seed", config.seed},
              {"host_template", config.host_template},
              {"base_port", config.base_port}};
}

CloudConfig config_from_json(const json& j) {
  CloudConfig config;
  config.node_count = j.at("node_count").get<std::uint64_t>();
  for (int i = 0; i < kNodeTypeCount; ++i) {
    config.type_weights[i] =
        j.at("type_weights").at(to_string(static_cast<NodeType>(i))).get<double>();
  }
  config.avg_node_degree = j.at("avg_node_degree").get<double>();
  config.triples_per_graph = j.at("triples_per_graph").get<std::uint64_t>();
  config.avg_resource_degree = j.at("avg_resource_degree").get<std::uint64_t>();
  config.dump_compression_ratio = j.at("dump_compression_ratio").get<double>();
  config.dump_formats_enabled.clear();
  for (const auto& name : j.at("dump_formats_enabled")) {
    config.dump_formats_enabled.insert(
        rdf_format_from_string(name.get<std::string>()));
  }
  config.disallowed_ratio = j.at("disallowed_ratio").get<double>();
  config.crawl_delay_seconds = j.at("crawl_delay").get<double>();
  config.seed = j.at("seed").get<std::uint64_t>();
  config.host_template = j.at("host_template").get<std::string>();
  config.base_port = j.at("base_port").get<std::uint16_t>();
  return config;
}

}  // namespace

std::string encode_config_json(const CloudConfig& config) {
  return config_to_json(config).dump(2) + "\n";
}

CloudConfig decode_config_json(const std::string& json_text) {
  return config_from_json(json::parse(json_text));
}

std::string encode_manifest_json(const CloudManifest& manifest) {
  json connectivity = json::array();
  for (const auto& row : manifest.connectivity.allowed) {
    json row_json = json::array();
    for (bool cell : row) row_json.push_back(cell ? 1 : 0);
    connectivity.push_back(row_json);
  }

  json nodes = json::array();
  for (const auto& spec : manifest.web.nodes) {
    json node{{"id", spec.id},
              {"type", to_string(spec.type)},
              {"host", spec.host}};
    if (spec.type == NodeType::DumpFile) {
      node["dump_format"] = to_string(spec.dump_format);
      node["dump_compression"] = to_string(spec.dump_compression);
    }
    nodes.push_back(node);
  }

  json edges = json::array();
  for (const auto& [from, to] : manifest.web.edges) {
    edges.push_back(json::array({from, to}));
  }

  json per_node = json::array();
  for (const auto& data : manifest.per_node) {
    per_node.push_back(
        json{{"resources", data.graph.resources},
             {"properties", data.graph.properties},
             {"externals", data.graph.externals},
             {"internal_triples", triples_to_json(data.graph.internal_triples)},
             {"outgoing_triples", triples_to_json(data.graph.outgoing_triples)},
             {"disallowed", data.disallowed},
             {"served_urls", data.served_urls}});
  }

  const json manifest_json{{"manifest_version", kManifestVersion},
                           {"rng_algorithm", manifest.rng_algorithm},
                           {"config", config_to_json(manifest.config)},
                           {"connectivity", connectivity},
                           {"web_graph", json{{"nodes", nodes},
                                              {"edges", edges},
                                              {"seeds", manifest.web.seeds}}},
                           {"nodes", per_node}};
  return manifest_json.dump(2) + "\n";
}

CloudManifest decode_manifest_json(const std::string& json_text) {
  const json j = json::parse(json_text);
  CloudManifest manifest;
  manifest.rng_algorithm = j.at("rng_algorithm").get<std::string>();
  manifest.config = config_from_json(j.at("config"));

  const auto& connectivity = j.at("connectivity");
  for (int row = 0; row < kNodeTypeCount; ++row) {
    for (int col = 0; col < kNodeTypeCount; ++col) {
      manifest.connectivity.allowed[row][col] =
          connectivity.at(row).at(col).get<int>() != 0;
    }
  }

  const auto& web = j.at("web_graph");
  for (const auto& node : web.at("nodes")) {
    NodeSpec spec;
    spec.id = node.at("id").get<std::uint32_t>();
    spec.type = node_type_from_string(node.at("type").get<std::string>());
    spec.host = node.at("host").get<std::string>();
    if (node.contains("dump_format")) {
      spec.dump_format =
          rdf_format_from_string(node.at("dump_format").get<std::string>());
      spec.dump_compression = compression_from_string(
          node.at("dump_compression").get<std::string>());
    }
    manifest.web.nodes.push_back(std::move(spec));
  }
  for (const auto& edge : web.at("edges")) {
    manifest.web.edges.emplace_back(edge.at(0).get<std::uint32_t>(),
                                    edge.at(1).get<std::uint32_t>());
  }
  manifest.web.seeds = web.at("seeds").get<std::vector<std::uint32_t>>();

  for (const auto& entry : j.at("nodes")) {
    NodeData data;
    data.graph.resources = entry.at("resources").get<std::vector<std::string>>();
    data.graph.properties = entry.at("properties").get<std::vector<std::string>>();
    data.graph.externals = entry.at("externals").get<std::vector<std::string>>();
    data.graph.internal_triples = triples_from_json(entry.at("internal_triples"));
    data.graph.outgoing_triples = triples_from_json(entry.at("outgoing_triples"));
    data.disallowed = entry.at("disallowed").get<std::vector<std::string>>();
    data.served_urls =
        entry.at("served_urls").get<std::map<std::string, std::string>>();
    manifest.per_node.push_back(std::move(data));
  }
  return manifest;
}

void write_manifest(const CloudManifest& manifest,
                    const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir / "expected");
  {
    std::ofstream out(dir / "manifest.json", std::ios::binary);
    if (!out) throw std::runtime_error("cannot write manifest.json");
    out << encode_manifest_json(manifest);
  }
  for (std::size_t k = 0; k < manifest.per_node.size(); ++k) {
    std::ofstream out(dir / "expected" / ("node-" + std::to_string(k) + ".nt"),
                      std::ios::binary);
    if (!out) throw std::runtime_error("cannot write expected triple file");
    for (const auto& line : manifest.per_node[k].expected_lines) {
      out << line << '\n';
    }
  }
}

CloudManifest read_manifest(const std::filesystem::path& dir) {
  std::ifstream in(dir / "manifest.json", std::ios::binary);
  if (!in) throw std::runtime_error("cannot read manifest.json");
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  CloudManifest manifest = decode_manifest_json(text);
  for (std::size_t k = 0; k < manifest.per_node.size(); ++k) {
    std::ifstream nt(dir / "expected" / ("node-" + std::to_string(k) + ".nt"),
                     std::ios::binary);
    if (!nt) throw std::runtime_error("missing expected triple file");
    std::string line;
    while (std::getline(nt, line)) {
      if (!line.empty()) manifest.per_node[k].expected_lines.push_back(line);
    }
  }
  return manifest;
}

}  // namespace crawlbench
