// Copyright (C) 2026 crawlbench contributors
// SPDX-License-Identifier: Apache-2.0
//
// Synthetic web generation: typed nodes, the preferential-attachment node
// graph constrained by the connectivity matrix, the greedy seed set, and the
// composition of everything into a complete cloud manifest.

#pragma once

#include <string>
#include <vector>

#include "crawlbench/model.hpp"
#include "crawlbench/rng.hpp"

namespace crawlbench {

/// Line-oriented record of every generation step; replaying it reconstructs
/// the node graph exactly. Dumped via `--emit-trace`.
struct GenerationTrace {
  std::vector<std::string> lines;

  std::string text() const;
};

/// Assigns a type to each of the config's nodes. The first entries cover every
/// type with positive weight exactly once, in NodeType order; the rest are
/// drawn from the weighted distribution.
/// Throws std::invalid_argument("node count below type count").
std::vector<NodeType> assign_node_types(const CloudConfig& config,
                                        RngStream& rng);

/// Builds the typed node graph: a full clique (as far as the matrix allows)
/// over the first distinct-type block, then preferential attachment with
/// weight (in-degree + 1) for every later node. Seeds are not computed here.
/// Throws std::runtime_error("isolated type under connectivity matrix") when
/// a node can neither point to nor be pointed at by any existing node.
WebGraph build_node_graph(const std::vector<NodeType>& types,
                          const ConnectivityMatrix& connectivity,
                          double avg_node_degree, RngStream& rng,
                          GenerationTrace* trace = nullptr);

/// Greedy seed set: repeatedly take the lowest unmarked node id, add it to the
/// seed set and mark everything reachable from it. The result always makes the
/// graph crawlable.
std::vector<std::uint32_t> compute_seed_set(const WebGraph& graph);

/// Runs the full generation pipeline and returns the ground-truth manifest.
CloudManifest generate_cloud(const CloudConfig& config,
                             const ConnectivityMatrix& connectivity,
                             GenerationTrace* trace = nullptr);

}  // namespace crawlbench
