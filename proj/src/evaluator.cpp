// Copyright (C) 2026 crawlbench contributors
// SPDX-License-Identifier: Apache-2.0

#include "crawlbench/evaluator.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>

#include <json.hpp>

namespace crawlbench {

using nlohmann::json;

RecallResult recall(const CloudManifest& manifest,
                    const std::unordered_set<std::string>& sink_lines) {
  RecallResult result;
  double per_node_sum = 0.0;
  for (std::uint32_t id = 0; id < manifest.per_node.size(); ++id) {
    const auto& expected = manifest.per_node[id].expected_lines;
    std::uint64_t found = 0;
    for (const auto& line : expected) {
      if (sink_lines.count(line)) ++found;
    }
    const double node_recall =
        expected.empty() ? 1.0
                         : static_cast<double>(found) /
                               static_cast<double>(expected.size());
    result.per_node[id] = node_recall;
    per_node_sum += node_recall;
    result.true_positives += found;
    result.expected_total += expected.size();
  }
  result.micro = result.expected_total == 0
                     ? 1.0
                     : static_cast<double>(result.true_positives) /
                           static_cast<double>(result.expected_total);
  result.macro = manifest.per_node.empty()
                     ? 1.0
                     : per_node_sum / static_cast<double>(manifest.per_node.size());
  return result;
}

std::optional<CdfReport> crawl_delay_fulfilment(
    const std::vector<std::vector<RequestRecord>>& logs_by_node,
    double configured_delay_seconds) {
  if (configured_delay_seconds <= 0.0) {
    throw std::invalid_argument("configured delay must be positive");
  }
  CdfReport report;
  for (std::uint32_t id = 0; id < logs_by_node.size(); ++id) {
    const auto& records = logs_by_node[id];
    if (records.size() < 2) continue;  // nodes with < 2 requests are skipped
    double gap_sum_seconds = 0.0;
    for (std::size_t i = 1; i < records.size(); ++i) {
      gap_sum_seconds += static_cast<double>(records[i].arrival_ns -
                                             records[i - 1].arrival_ns) /
                         1e9;
    }
    const double mean_gap =
        gap_sum_seconds / static_cast<double>(records.size() - 1);
    report.per_node[id] = mean_gap / configured_delay_seconds;
  }
  if (report.per_node.empty()) return std::nullopt;
  double sum = 0.0;
  report.min = report.per_node.begin()->second;
  report.max = report.min;
  for (const auto& [id, value] : report.per_node) {
    report.min = std::min(report.min, value);
    report.max = std::max(report.max, value);
    sum += value;
  }
  report.avg = sum / static_cast<double>(report.per_node.size());
  return report;
}

std::optional<RdrReport> requested_disallowed_ratio(
    const std::vector<std::vector<RequestRecord>>& logs_by_node,
    const CloudManifest& manifest) {
  RdrReport report;
  double fraction_sum = 0.0;
  std::size_t contributing = 0;
  for (std::uint32_t id = 0; id < manifest.per_node.size(); ++id) {
    const auto& disallowed = manifest.per_node[id].disallowed;
    if (disallowed.empty()) continue;
    const std::string prefix = "http://" + manifest.web.nodes[id].host;
    std::unordered_set<std::string> requested_paths;
    if (id < logs_by_node.size()) {
      for (const auto& record : logs_by_node[id]) {
        if (record.disallowed_hit) requested_paths.insert(record.path);
      }
    }
    std::uint64_t requested = 0;
    for (const auto& iri : disallowed) {
      if (iri.rfind(prefix, 0) != 0) continue;
      if (requested_paths.count(iri.substr(prefix.size()))) ++requested;
    }
    report.per_node[id] = static_cast<double>(requested) /
                          static_cast<double>(disallowed.size());
    report.disallowed_total += disallowed.size();
    report.requested_total += requested;
    fraction_sum += report.per_node[id];
    ++contributing;
  }
  if (contributing == 0) return std::nullopt;
  report.ratio = fraction_sum / static_cast<double>(contributing);
  return report;
}

RuntimeSeries runtime_and_series(std::int64_t start_ns, std::int64_t end_ns,
                                 const std::vector<std::int64_t>& arrivals_ns) {
  RuntimeSeries result;
  result.runtime_seconds = static_cast<double>(end_ns - start_ns) / 1e9;
  std::uint64_t cumulative = 0;
  for (std::int64_t arrival : arrivals_ns) {
    if (arrival < start_ns || arrival > end_ns) continue;
    ++cumulative;
    result.series.emplace_back(static_cast<double>(arrival - start_ns) / 1e9,
                               cumulative);
  }
  return result;
}

std::string export_dot(const CloudManifest& manifest, const RunReport& report) {
  std::string out = "digraph cloud {\n";
  for (const auto& spec : manifest.web.nodes) {
    char label[128];
    const auto it = report.recall_per_node.find(spec.id);
    const double node_recall = it == report.recall_per_node.end() ? 0.0 : it->second;
    std::snprintf(label, sizeof(label), "%u %s recall=%.3f", spec.id,
                  to_string(spec.type).c_str(), node_recall);
    out += "  n" + std::to_string(spec.id) + " [label=\"" + label + "\"];\n";
  }
  for (const auto& [from, to] : manifest.web.edges) {
    out += "  n" + std::to_string(from) + " -> n" + std::to_string(to) + ";\n";
  }
  out += "}\n";
  return out;
}

std::string report_to_json(const RunReport& report) {
  json recall_per_node = json::array();
  for (const auto& [id, value] : report.recall_per_node) {
    recall_per_node.push_back(json::array({id, value}));
  }
  json series = json::array();
  for (const auto& [t, count] : report.triples_over_time) {
    series.push_back(json::array({t, count}));
  }
  json j{{"recall_per_node", recall_per_node},
         {"micro_recall", report.micro_recall},
         {"macro_recall", report.macro_recall},
         {"true_positives", report.true_positives},
         {"expected_total", report.expected_total},
         {"runtime_seconds", report.runtime_seconds},
         {"triples_over_time", series},
         {"seed", report.seed},
         {"config", json::parse(report.config_echo)},
         {"started_at", report.started_at},
         {"finished_at", report.finished_at},
         {"timed_out", report.timed_out},
         {"crawler_exit_code", report.crawler_exit_code}};
  if (report.cdf) {
    json per_node = json::array();
    for (const auto& [id, value] : report.cdf->per_node) {
      per_node.push_back(json::array({id, value}));
    }
    j["cdf"] = json{{"per_node", per_node},
                    {"min", report.cdf->min},
                    {"max", report.cdf->max},
                    {"avg", report.cdf->avg}};
  }
  if (report.rdr) {
    json per_node = json::array();
    for (const auto& [id, value] : report.rdr->per_node) {
      per_node.push_back(json::array({id, value}));
    }
    j["rdr"] = json{{"per_node", per_node},
                    {"ratio", report.rdr->ratio},
                    {"disallowed_total", report.rdr->disallowed_total},
                    {"requested_total", report.rdr->requested_total}};
  }
  return j.dump(2) + "\n";
}

std::string report_to_text(const RunReport& report) {
  char line[256];
  std::string out;
  std::snprintf(line, sizeof(line), "micro recall     %.6f\n", report.micro_recall);
  out += line;
  std::snprintf(line, sizeof(line), "macro recall     %.6f\n", report.macro_recall);
  out += line;
  std::snprintf(line, sizeof(line), "true positives   %llu / %llu\n",
                static_cast<unsigned long long>(report.true_positives),
                static_cast<unsigned long long>(report.expected_total));
  out += line;
  std::snprintf(line, sizeof(line), "runtime          %.3f s\n", report.runtime_seconds);
  out += line;
  if (report.cdf) {
    std::snprintf(line, sizeof(line),
                  "crawl delay fulfilment  min %.3f  max %.3f  avg %.3f\n",
                  report.cdf->min, report.cdf->max, report.cdf->avg);
    out += line;
  }
  if (report.rdr) {
    std::snprintf(line, sizeof(line),
                  "requested disallowed    %.3f (%llu of %llu)\n",
                  report.rdr->ratio,
                  static_cast<unsigned long long>(report.rdr->requested_total),
                  static_cast<unsigned long long>(report.rdr->disallowed_total));
    out += line;
  }
  if (report.timed_out) out += "crawler timed out\n";
  std::snprintf(line, sizeof(line), "crawler exit     %d\n", report.crawler_exit_code);
  out += line;
  return out;
}

}  // namespace crawlbench
