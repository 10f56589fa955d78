// Copyright (C) 2026 crawlbench contributors
// SPDX-License-Identifier: Apache-2.0
//
// Flat key/value configuration files. Keys mirror CloudConfig field names;
// `#` starts a comment. Example:
//
//   node_count = 100
//   type_weights.dump_file = 40
//   type_weights.sparql = 30
//   avg_node_degree = 20
//   triples_per_graph = 1000
//   avg_resource_degree = 9
//   dump_compression_ratio = 0.3
//   dump_formats_enabled = ntriples,turtle,rdfxml,n3
//   disallowed_ratio = 0
//   crawl_delay = 0
//   seed = 42
//   host_template = 127.0.0.1:{port}
//   base_port = 18100
//   connectivity = 11111,11111,11111,01111,11111

#pragma once

#include <filesystem>
#include <string>
#include <utility>

#include "crawlbench/model.hpp"

namespace crawlbench {

struct ParsedConfig {
  CloudConfig config;
  ConnectivityMatrix connectivity = ConnectivityMatrix::defaults();
};

/// Parses configuration text. Unknown keys are an error.
ParsedConfig parse_config_text(const std::string& text);

ParsedConfig load_config_file(const std::filesystem::path& path);

}  // namespace crawlbench
