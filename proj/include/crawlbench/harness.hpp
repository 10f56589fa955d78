// Copyright (C) 2026 crawlbench contributors
// SPDX-License-Identifier: Apache-2.0
//
// Orchestration of the four benchmark phases: creation (manifest), generation
// (servers loaded), crawling (reference crawler or external command), and
// evaluation. Also the on-disk layout of a run directory, so `evaluate` can
// recompute a report from saved artifacts.

#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "crawlbench/model.hpp"
#include "crawlbench/ref_crawler.hpp"
#include "crawlbench/sink.hpp"
#include "crawlbench/web_nodes.hpp"

namespace crawlbench {

struct CrawlerLaunch {
  enum class Mode { Reference, External } mode = Mode::Reference;
  std::string command_template;  // {seeds-file} and {sink-url} placeholders
  CrawlOptions reference_options;
  double timeout_seconds = 1800.0;  // 30 min guard
};

/// All node servers plus the sink, started together and stopped together.
class RunningCloud {
 public:
  RunningCloud(const CloudManifest& manifest, int sink_port);
  ~RunningCloud();

  RunningCloud(const RunningCloud&) = delete;
  RunningCloud& operator=(const RunningCloud&) = delete;

  /// Starts every server; on failure fills `error` and stops what started.
  bool start(std::string& error);
  void stop();

  /// Per-node request logs, indexed by node id.
  std::vector<std::vector<RequestRecord>> drain_logs() const;

  SinkServer& sink() { return *sink_; }
  const CloudManifest& manifest() const { return manifest_; }

 private:
  CloudManifest manifest_;
  std::vector<std::unique_ptr<NodeServer>> servers_;
  std::unique_ptr<SinkServer> sink_;
};

/// Generates a manifest and writes it (plus optional trace and hosts mapping)
/// under `out_dir`.
CloudManifest generate_only(const CloudConfig& config,
                            const ConnectivityMatrix& connectivity,
                            const std::filesystem::path& out_dir,
                            bool emit_trace);

/// Full pipeline: generate, serve, crawl, evaluate, write artifacts,
/// tear down. `sink_port` 0 means base_port + node_count.
RunReport run_benchmark(const CloudConfig& config,
                        const ConnectivityMatrix& connectivity,
                        const CrawlerLaunch& crawler,
                        const std::filesystem::path& out_dir,
                        bool emit_trace = false, int sink_port = 0);

/// Recomputes the report from a manifest directory and the artifacts a
/// previous run saved (sink.nt, arrivals.tsv, logs.tsv, run-meta.json).
RunReport evaluate_saved(const std::filesystem::path& manifest_dir,
                         const std::filesystem::path& run_dir);

/// Runs `/bin/sh -c command`, killing the process group after the timeout.
struct ProcessResult {
  int exit_code = -1;
  bool timed_out = false;
};
ProcessResult run_command_with_timeout(const std::string& command,
                                       double timeout_seconds);

/// Substitutes {seeds-file} and {sink-url} in an external crawler template.
std::string expand_crawler_command(const std::string& command_template,
                                   const std::string& seeds_file,
                                   const std::string& sink_url);

}  // namespace crawlbench
