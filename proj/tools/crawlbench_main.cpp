// Copyright (C) 2026 crawlbench contributors
// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end. Subcommands:
//   generate  build a cloud manifest and write it to disk
//   serve     host a generated cloud until interrupted
//   run       full benchmark: generate, serve, crawl, evaluate
//   evaluate  recompute a report from saved run artifacts
//   crawl     run the built-in crawler standalone (seeds file + sink URL)

#include <chrono>
#include <csignal>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>

#include <CLI11.hpp>

#include "crawlbench/config_file.hpp"
#include "crawlbench/evaluator.hpp"
#include "crawlbench/harness.hpp"
#include "crawlbench/manifest_io.hpp"

namespace {

volatile std::sig_atomic_t g_interrupted = 0;

void handle_signal(int) { g_interrupted = 1; }

struct CommonConfigArgs {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> base_port;

  crawlbench::ParsedConfig load() const {
    crawlbench::ParsedConfig parsed =
        crawlbench::load_config_file(config_path);
    if (seed) parsed.config.seed = *seed;
    if (base_port) {
      parsed.config.base_port = static_cast<std::uint16_t>(*base_port);
    }
    parsed.config.validate();
    return parsed;
  }
};

void add_config_options(CLI::App* cmd, CommonConfigArgs& args) {
  cmd->add_option("--config", args.config_path, "configuration file")
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_option("--seed", args.seed, "override the config seed");
  cmd->add_option("--base-port", args.base_port, "override the base port");
}

std::filesystem::path resolve_manifest_dir(const std::string& arg) {
  const std::filesystem::path path(arg);
  if (std::filesystem::exists(path / "manifest.json")) return path;
  return path / "manifest";
}

std::vector<std::string> read_seeds_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read seeds file: " + path);
  std::vector<std::string> seeds;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) seeds.push_back(line);
  }
  return seeds;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"synthetic Data Web benchmark for crawlers"};
  app.require_subcommand(1);

  // generate ----------------------------------------------------------------
  auto* generate_cmd =
      app.add_subcommand("generate", "generate a cloud manifest");
  CommonConfigArgs generate_args;
  std::string generate_out = "out";
  bool generate_trace = false;
  add_config_options(generate_cmd, generate_args);
  generate_cmd->add_option("--out-dir", generate_out, "output directory");
  generate_cmd->add_flag("--emit-trace", generate_trace,
                         "write the generation trace");

  // serve -------------------------------------------------------------------
  auto* serve_cmd =
      app.add_subcommand("serve", "serve a generated cloud until interrupted");
  std::string serve_manifest;
  std::string serve_out = "out";
  int serve_sink_port = 0;
  serve_cmd
      ->add_option("--manifest", serve_manifest,
                   "manifest directory (or the out-dir that contains it)")
      ->required()
      ->check(CLI::ExistingDirectory);
  serve_cmd->add_option("--out-dir", serve_out,
                        "directory for drained request logs");
  serve_cmd->add_option("--sink-port", serve_sink_port,
                        "sink port (default: base port + node count)");

  // run ---------------------------------------------------------------------
  auto* run_cmd = app.add_subcommand("run", "run a full benchmark");
  CommonConfigArgs run_args;
  std::string run_out = "out";
  bool run_trace = false;
  std::string crawler_cmd;
  bool reference_crawler = false;
  bool impolite = false;
  int workers = 4;
  std::string strategy = "lbs";
  double timeout_seconds = 1800.0;
  add_config_options(run_cmd, run_args);
  run_cmd->add_option("--out-dir", run_out, "output directory");
  run_cmd->add_flag("--emit-trace", run_trace, "write the generation trace");
  run_cmd->add_option("--crawler-cmd", crawler_cmd,
                      "external crawler command; {seeds-file} and {sink-url} "
                      "are substituted");
  run_cmd->add_flag("--reference-crawler", reference_crawler,
                    "use the built-in crawler");
  run_cmd->add_flag("--impolite", impolite,
                    "built-in crawler ignores robots.txt rules");
  run_cmd->add_option("--workers", workers, "built-in crawler workers");
  run_cmd->add_option("--strategy", strategy,
                      "built-in crawler strategy: lbs or bfs");
  run_cmd->add_option("--timeout", timeout_seconds, "crawl timeout in seconds");

  // evaluate ------------------------------------------------------------
  auto* evaluate_cmd = app.add_subcommand(
      "evaluate", "recompute a report from saved run artifacts");
  std::string evaluate_manifest;
  std::string evaluate_run;
  std::string evaluate_out;
  evaluate_cmd
      ->add_option("--manifest", evaluate_manifest,
                   "manifest directory (or the out-dir that contains it)")
      ->required()
      ->check(CLI::ExistingDirectory);
  evaluate_cmd
      ->add_option("--run-dir", evaluate_run,
                   "run directory with sink.nt, arrivals.tsv, logs.tsv, "
                   "run-meta.json")
      ->required()
      ->check(CLI::ExistingDirectory);
  evaluate_cmd->add_option("--out-dir", evaluate_out,
                           "where to write the recomputed report "
                           "(default: print to stdout)");

  // crawl ---------------------------------------------------------------
  auto* crawl_cmd =
      app.add_subcommand("crawl", "run the built-in crawler standalone");
  std::string crawl_seeds_file;
  std::string crawl_sink_url;
  bool crawl_impolite = false;
  int crawl_workers = 4;
  std::string crawl_strategy = "lbs";
  crawl_cmd->add_option("--seeds-file", crawl_seeds_file, "one seed URI per line")
      ->required()
      ->check(CLI::ExistingFile);
  crawl_cmd->add_option("--sink-url", crawl_sink_url, "sink ingest URL")
      ->required();
  crawl_cmd->add_flag("--impolite", crawl_impolite, "ignore robots.txt rules");
  crawl_cmd->add_option("--workers", crawl_workers, "worker threads");
  crawl_cmd->add_option("--strategy", crawl_strategy, "lbs or bfs");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*generate_cmd) {
      const crawlbench::ParsedConfig parsed = generate_args.load();
      const auto manifest = crawlbench::generate_only(
          parsed.config, parsed.connectivity, generate_out, generate_trace);
      std::cout << "generated " << manifest.web.nodes.size() << " nodes, "
                << manifest.web.edges.size() << " edges, "
                << manifest.web.seeds.size() << " seeds -> " << generate_out
                << "\n";
      return 0;
    }

    if (*serve_cmd) {
      const auto manifest =
          crawlbench::read_manifest(resolve_manifest_dir(serve_manifest));
      int sink_port = serve_sink_port;
      if (sink_port == 0) {
        sink_port = manifest.config.base_port +
                    static_cast<int>(manifest.web.nodes.size());
      }
      crawlbench::RunningCloud cloud(manifest, sink_port);
      std::string error;
      if (!cloud.start(error)) {
        std::cerr << "error: " << error << "\n";
        return 1;
      }
      std::cout << "sink: " << cloud.sink().url() << "\n";
      std::cout << "seed URIs:\n";
      for (const auto& uri : manifest.seed_uris()) {
        std::cout << "  " << uri << "\n";
      }
      std::cout << "serving; interrupt to stop\n" << std::flush;
      std::signal(SIGINT, handle_signal);
      std::signal(SIGTERM, handle_signal);
      while (!g_interrupted) {
        std::this_thread::sleep_for(std::chrono::milliseconds(100));
      }
      const auto logs = cloud.drain_logs();
      cloud.stop();
      std::filesystem::create_directories(serve_out);
      std::ofstream out(std::filesystem::path(serve_out) / "logs.tsv");
      for (const auto& node_log : logs) {
        for (const auto& record : node_log) {
          out << record.node_id << "\t" << record.arrival_ns << "\t"
              << (record.disallowed_hit ? 1 : 0) << "\t" << record.path << "\n";
        }
      }
      std::cout << "stopped; logs written to " << serve_out << "/logs.tsv\n";
      return 0;
    }

    if (*run_cmd) {
      if (crawler_cmd.empty() && !reference_crawler) {
        std::cerr << "error: pass --crawler-cmd or --reference-crawler\n";
        return 1;
      }
      const crawlbench::ParsedConfig parsed = run_args.load();
      crawlbench::CrawlerLaunch launch;
      launch.timeout_seconds = timeout_seconds;
      if (reference_crawler) {
        launch.mode = crawlbench::CrawlerLaunch::Mode::Reference;
        launch.reference_options.workers = workers;
        launch.reference_options.obey_disallow = !impolite;
        launch.reference_options.obey_delay = !impolite;
        launch.reference_options.strategy =
            strategy == "bfs" ? crawlbench::CrawlOptions::Strategy::Bfs
                              : crawlbench::CrawlOptions::Strategy::LoadBalanced;
      } else {
        launch.mode = crawlbench::CrawlerLaunch::Mode::External;
        launch.command_template = crawler_cmd;
      }
      const crawlbench::RunReport report = crawlbench::run_benchmark(
          parsed.config, parsed.connectivity, launch, run_out, run_trace);
      std::cout << crawlbench::report_to_text(report);
      std::cout << "artifacts written to " << run_out << "\n";
      return 0;
    }

    if (*evaluate_cmd) {
      const crawlbench::RunReport report = crawlbench::evaluate_saved(
          resolve_manifest_dir(evaluate_manifest), evaluate_run);
      if (evaluate_out.empty()) {
        std::cout << crawlbench::report_to_text(report);
      } else {
        std::filesystem::create_directories(evaluate_out);
        std::ofstream json_out(std::filesystem::path(evaluate_out) /
                               "report.json");
        json_out << crawlbench::report_to_json(report);
        std::ofstream text_out(std::filesystem::path(evaluate_out) /
                               "report.txt");
        text_out << crawlbench::report_to_text(report);
        std::cout << "report written to " << evaluate_out << "\n";
      }
      return 0;
    }

    if (*crawl_cmd) {
      crawlbench::CrawlOptions options;
      options.workers = crawl_workers;
      options.obey_disallow = !crawl_impolite;
      options.obey_delay = !crawl_impolite;
      options.strategy = crawl_strategy == "bfs"
                             ? crawlbench::CrawlOptions::Strategy::Bfs
                             : crawlbench::CrawlOptions::Strategy::LoadBalanced;
      crawlbench::RefCrawler crawler(options);
      const int status =
          crawler.crawl(read_seeds_file(crawl_seeds_file), crawl_sink_url);
      const auto& stats = crawler.stats();
      std::cerr << "fetched " << stats.fetched << ", failures "
                << stats.fetch_failures << ", posted " << stats.triples_posted
                << " triples\n";
      return status;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
