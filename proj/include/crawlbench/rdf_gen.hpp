// Copyright (C) 2026 crawlbench contributors
// SPDX-License-Identifier: Apache-2.0
//
// Per-node RDF dataset generation: the scale-free internal graph, outgoing
// link triples, URI templates, and the disallowed-copy injection used by the
// robots experiments.

#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "crawlbench/model.hpp"
#include "crawlbench/rng.hpp"

namespace crawlbench {

/// A link target for outgoing triples: the target node and its entrance IRI.
struct ExternalRef {
  std::uint32_t target_id = 0;
  std::string entrance;
};

/// Probability that a new triple points at the freshly minted resource:
/// (0.5 * d_r - 1) / (d_r - 1). Defined for d_r >= 2 only; callers route
/// d_r == 1 through the forced-incoming branch.
/// Throws std::invalid_argument("undefined probability") for d_r < 2.
double direction_probability(std::uint64_t resource_degree);

/// Resource IRI templates (normative):
///   Dereferencing / Sparql / Rdfa: http://{H}/dataset-0/resource-{N}
///   DumpFile: http://{H}/dumpFile{EXT}#dataset-0-resource-{N}
/// Throws std::invalid_argument("catalogue nodes have no generated resources")
/// for CKAN nodes.
std::string uri_for(const NodeSpec& node, std::uint64_t resource_index);

/// The IRI other graphs use to link to this node: resource 0 for
/// dereferencing and dump-file nodes, the SPARQL API URL for endpoints, the
/// web root for catalogues, the HTML page for RDFa nodes.
std::string entrance_reference(const NodeSpec& node);

/// The per-node property set: 8 IRIs under http://{H}/ontology/property-{i}.
std::vector<std::string> generate_properties(const NodeSpec& node);

/// Grows the internal graph until it holds exactly `internal_triple_count`
/// triples. Every new resource is attached by degree-weighted sampling; its
/// first triple always points at it, so the whole graph stays reachable from
/// the entrance resource.
RdfGraph generate_internal_graph(const NodeSpec& node,
                                 std::uint64_t internal_triple_count,
                                 const std::vector<std::string>& properties,
                                 std::uint64_t avg_resource_degree,
                                 RngStream& rng);

/// Appends exactly one triple per external target: a uniformly drawn subject,
/// a uniformly drawn property, and the target's entrance as object.
void add_outgoing_links(RdfGraph& graph, const std::vector<ExternalRef>& targets,
                        RngStream& rng);

/// Copies ceil(ratio * |R|) resources under the /disallowed/ path. Each copy
/// carries the original's subject triples rewritten to the copy IRI, plus one
/// allowed pointer triple (original, p, copy) that makes the copy
/// discoverable. Returns the sorted set of copy IRIs.
/// Throws std::invalid_argument on non-dereferencing nodes when ratio > 0.
std::vector<std::string> inject_disallowed(RdfGraph& graph, double ratio,
                                           const NodeSpec& node, RngStream& rng);

}  // namespace crawlbench
