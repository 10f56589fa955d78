// Copyright (C) 2026 crawlbench contributors
// SPDX-License-Identifier: Apache-2.0
//
// KPI computation: recall (per node / micro / macro), crawl-delay fulfilment,
// requested-disallowed ratio, runtime with the triples-over-time series, and
// the DOT export of the cloud. All functions are pure over their inputs.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "crawlbench/model.hpp"
#include "crawlbench/web_nodes.hpp"

namespace crawlbench {

struct RecallResult {
  std::map<std::uint32_t, double> per_node;
  double micro = 0.0;
  double macro = 0.0;
  std::uint64_t true_positives = 0;
  std::uint64_t expected_total = 0;
};

/// Per node n: |expected_n ∩ sink| / |expected_n| (1.0 when nothing is
/// expected). Micro recall weights by triples, macro averages the per-node
/// values. Disallowed copies are already excluded from the expected sets.
RecallResult recall(const CloudManifest& manifest,
                    const std::unordered_set<std::string>& sink_lines);

/// Mean observed inter-request gap divided by the advertised delay, per node
/// with at least two requests. Values below 1 mean the crawler was faster
/// than the server asked for. Returns nullopt when no node contributes.
/// `configured_delay_seconds` must be positive.
std::optional<CdfReport> crawl_delay_fulfilment(
    const std::vector<std::vector<RequestRecord>>& logs_by_node,
    double configured_delay_seconds);

/// Per node with a non-empty disallowed set: the fraction of its disallowed
/// IRIs requested at least once; the headline number is the mean over those
/// nodes. Returns nullopt when no node has disallowed resources.
std::optional<RdrReport> requested_disallowed_ratio(
    const std::vector<std::vector<RequestRecord>>& logs_by_node,
    const CloudManifest& manifest);

struct RuntimeSeries {
  double runtime_seconds = 0.0;
  std::vector<std::pair<double, std::uint64_t>> series;  // (secs, cumulative)
};

/// Runtime is end - start; the series holds one point per sink arrival inside
/// [start, end], as seconds since start with the cumulative store size.
RuntimeSeries runtime_and_series(std::int64_t start_ns, std::int64_t end_ns,
                                 const std::vector<std::int64_t>& arrivals_ns);

/// DOT digraph: one vertex per node labeled with its type and recall, one arc
/// per node-graph edge.
std::string export_dot(const CloudManifest& manifest, const RunReport& report);

std::string report_to_json(const RunReport& report);
std::string report_to_text(const RunReport& report);

}  // namespace crawlbench
