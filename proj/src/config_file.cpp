// Copyright (C) 2026 crawlbench contributors
// SPDX-License-Identifier: Apache-2.0

#include "crawlbench/config_file.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace crawlbench {

namespace {

std::string trim(const std::string& s) {
  std::size_t begin = 0;
  std::size_t end = s.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) ++begin;
  while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) --end;
  return s.substr(begin, end - begin);
}

std::vector<std::string> split_csv(const std::string& value) {
  std::vector<std::string> parts;
  std::stringstream stream(value);
  std::string part;
  while (std::getline(stream, part, ',')) {
    part = trim(part);
    if (!part.empty()) parts.push_back(part);
  }
  return parts;
}

double parse_number(const std::string& key, const std::string& value) {
  try {
    std::size_t consumed = 0;
    const double parsed = std::stod(value, &consumed);
    if (consumed != value.size()) throw std::invalid_argument(value);
    return parsed;
  } catch (const std::exception&) {
    throw std::invalid_argument("config key '" + key + "': bad number '" +
                                value + "'");
  }
}

std::uint64_t parse_unsigned(const std::string& key, const std::string& value) {
  try {
    std::size_t consumed = 0;
    const std::uint64_t parsed = std::stoull(value, &consumed);
    if (consumed != value.size()) throw std::invalid_argument(value);
    return parsed;
  } catch (const std::exception&) {
    throw std::invalid_argument("config key '" + key + "': bad integer '" +
                                value + "'");
  }
}

void apply_connectivity(ConnectivityMatrix& matrix, const std::string& key,
                        const std::string& value) {
  const std::vector<std::string> rows = split_csv(value);
  if (rows.size() != kNodeTypeCount) {
    throw std::invalid_argument("config key '" + key + "': expected " +
                                std::to_string(kNodeTypeCount) + " rows");
  }
  for (int row = 0; row < kNodeTypeCount; ++row) {
    if (rows[row].size() != kNodeTypeCount) {
      throw std::invalid_argument("config key '" + key + "': row " +
                                  std::to_string(row) + " must have " +
                                  std::to_string(kNodeTypeCount) + " cells");
    }
    for (int col = 0; col < kNodeTypeCount; ++col) {
      const char cell = rows[row][col];
      if (cell != '0' && cell != '1') {
        throw std::invalid_argument("config key '" + key +
                                    "': cells must be 0 or 1");
      }
      matrix.allowed[row][col] = cell == '1';
    }
  }
}

}  // namespace

ParsedConfig parse_config_text(const std::string& text) {
  ParsedConfig result;
  // Weights default to zero so a config must name the types it wants.
  result.config.type_weights.fill(0.0);

  std::stringstream stream(text);
  std::string raw_line;
  while (std::getline(stream, raw_line)) {
    const std::size_t hash = raw_line.find('#');
    const std::string line = trim(
        hash == std::string::npos ? raw_line : raw_line.substr(0, hash));
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config line without '=': " + line);
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    CloudConfig& config = result.config;

    if (key == "node_count") {
      config.node_count = parse_unsigned(key, value);
    } else if (key.rfind("type_weights.", 0) == 0) {
      const NodeType type = node_type_from_string(key.substr(13));
      config.type_weights[static_cast<int>(type)] = parse_number(key, value);
    } else if (key == "avg_node_degree") {
      config.avg_node_degree = parse_number(key, value);
    } else if (key == "triples_per_graph") {
      config.triples_per_graph = parse_unsigned(key, value);
    } else if (key == "avg_resource_degree") {
      config.avg_resource_degree = parse_unsigned(key, value);
    } else if (key == "dump_compression_ratio") {
      config.dump_compression_ratio = parse_number(key, value);
    } else if (key == "dump_formats_enabled") {
      config.dump_formats_enabled.clear();
      for (const auto& name : split_csv(value)) {
        config.dump_formats_enabled.insert(rdf_format_from_string(name));
      }
    } else if (key == "disallowed_ratio") {
      config.disallowed_ratio = parse_number(key, value);
    } else if (key == "crawl_delay") {
      config.crawl_delay_seconds = parse_number(key, value);
    } else if (key == "seed") {
      config.seed = parse_unsigned(key, value);
    } else if (key == "host_template") {
      config.host_template = value;
    } else if (key == "base_port") {
      config.base_port = static_cast<std::uint16_t>(parse_unsigned(key, value));
    } else if (key == "connectivity") {
      apply_connectivity(result.connectivity, key, value);
    } else {
      throw std::invalid_argument("unknown config key: " + key);
    }
  }
  return result;
}

ParsedConfig load_config_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot read config file: " + path.string());
  }
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return parse_config_text(text);
}

}  // namespace crawlbench
