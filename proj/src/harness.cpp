// Copyright (C) 2026 crawlbench contributors
// SPDX-License-Identifier: Apache-2.0

#include "crawlbench/harness.hpp"

#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <ctime>
#include <fstream>
#include <sstream>
#include <thread>
#include <unordered_set>

#include <json.hpp>

#include "crawlbench/cloud_gen.hpp"
#include "crawlbench/evaluator.hpp"
#include "crawlbench/manifest_io.hpp"

namespace crawlbench {

using nlohmann::json;

namespace {

std::int64_t monotonic_ns() {
  return std::chrono::duration_cast<std::chrono::nanoseconds>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

std::string iso_utc_now() {
  const std::time_t now = std::time(nullptr);
  std::tm tm_utc{};
  gmtime_r(&now, &tm_utc);
  char buffer[32];
  std::strftime(buffer, sizeof(buffer), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return buffer;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  return std::string((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
}

std::string hostname_of(const std::string& host_port) {
  const std::size_t colon = host_port.rfind(':');
  return colon == std::string::npos ? host_port : host_port.substr(0, colon);
}

void maybe_write_hosts_map(const CloudManifest& manifest,
                           const std::filesystem::path& out_dir) {
  std::unordered_set<std::string> names;
  for (const auto& spec : manifest.web.nodes) {
    const std::string name = hostname_of(spec.host);
    if (name != "127.0.0.1" && name != "localhost") names.insert(name);
  }
  if (names.empty()) return;
  std::string content;
  for (const auto& name : names) content += "127.0.0.1 " + name + "\n";
  write_file(out_dir / "hosts.map", content);
}

RunReport assemble_report(const CloudManifest& manifest,
                          const std::unordered_set<std::string>& sink_lines,
                          const std::vector<std::int64_t>& arrivals_ns,
                          const std::vector<std::vector<RequestRecord>>& logs,
                          std::int64_t start_ns, std::int64_t end_ns) {
  RunReport report;
  const RecallResult recall_result = recall(manifest, sink_lines);
  report.recall_per_node = recall_result.per_node;
  report.micro_recall = recall_result.micro;
  report.macro_recall = recall_result.macro;
  report.true_positives = recall_result.true_positives;
  report.expected_total = recall_result.expected_total;

  const RuntimeSeries series = runtime_and_series(start_ns, end_ns, arrivals_ns);
  report.runtime_seconds = series.runtime_seconds;
  report.triples_over_time = series.series;

  if (manifest.config.crawl_delay_seconds > 0.0) {
    report.cdf =
        crawl_delay_fulfilment(logs, manifest.config.crawl_delay_seconds);
  }
  report.rdr = requested_disallowed_ratio(logs, manifest);
  report.seed = manifest.config.seed;
  report.config_echo = encode_config_json(manifest.config);
  return report;
}

std::string logs_to_tsv(const std::vector<std::vector<RequestRecord>>& logs) {
  std::string out;
  for (const auto& node_log : logs) {
    for (const auto& record : node_log) {
      out += std::to_string(record.node_id) + "\t" +
             std::to_string(record.arrival_ns) + "\t" +
             (record.disallowed_hit ? "1" : "0") + "\t" + record.path + "\n";
    }
  }
  return out;
}

std::vector<std::vector<RequestRecord>> logs_from_tsv(const std::string& text,
                                                      std::size_t node_count) {
  std::vector<std::vector<RequestRecord>> logs(node_count);
  std::stringstream stream(text);
  std::string line;
  while (std::getline(stream, line)) {
    if (line.empty()) continue;
    std::stringstream fields(line);
    std::string id_text, arrival_text, disallowed_text, path;
    if (!std::getline(fields, id_text, '\t') ||
        !std::getline(fields, arrival_text, '\t') ||
        !std::getline(fields, disallowed_text, '\t') ||
        !std::getline(fields, path)) {
      throw std::runtime_error("malformed logs.tsv line: " + line);
    }
    RequestRecord record;
    record.node_id = static_cast<std::uint32_t>(std::stoul(id_text));
    record.arrival_ns = std::stoll(arrival_text);
    record.disallowed_hit = disallowed_text == "1";
    record.path = path;
    if (record.node_id < node_count) {
      logs[record.node_id].push_back(std::move(record));
    }
  }
  return logs;
}

void write_run_artifacts(const std::filesystem::path& out_dir,
                         const CloudManifest& manifest,
                         const RunReport& report,
                         const SinkStore::Snapshot& snapshot,
                         const std::vector<std::vector<RequestRecord>>& logs,
                         std::int64_t start_ns, std::int64_t end_ns,
                         const std::string& sink_url) {
  std::string sink_nt;
  {
    std::vector<std::string> sorted = snapshot.lines;
    std::sort(sorted.begin(), sorted.end());
    for (const auto& line : sorted) {
      sink_nt += line;
      sink_nt += '\n';
    }
  }
  write_file(out_dir / "sink.nt", sink_nt);

  std::string arrivals;
  for (std::int64_t ns : snapshot.arrivals_ns) {
    arrivals += std::to_string(ns) + "\n";
  }
  write_file(out_dir / "arrivals.tsv", arrivals);
  write_file(out_dir / "logs.tsv", logs_to_tsv(logs));

  const json meta{{"start_ns", start_ns},
                  {"end_ns", end_ns},
                  {"started_at", report.started_at},
                  {"finished_at", report.finished_at},
                  {"crawler_exit_code", report.crawler_exit_code},
                  {"timed_out", report.timed_out},
                  {"sink_url", sink_url}};
  write_file(out_dir / "run-meta.json", meta.dump(2) + "\n");

  write_file(out_dir / "report.json", report_to_json(report));
  write_file(out_dir / "report.txt", report_to_text(report));
  write_file(out_dir / "cloud.dot", export_dot(manifest, report));
}

}  // namespace

RunningCloud::RunningCloud(const CloudManifest& manifest, int sink_port)
    : manifest_(manifest) {
  for (std::uint32_t id = 0; id < manifest_.web.nodes.size(); ++id) {
    int port = parse_host_port(manifest_.web.nodes[id].host);
    if (port == 0) port = manifest_.config.base_port + static_cast<int>(id);
    servers_.push_back(std::make_unique<NodeServer>(manifest_, id, port));
  }
  sink_ = std::make_unique<SinkServer>(sink_port);
}

RunningCloud::~RunningCloud() { stop(); }

bool RunningCloud::start(std::string& error) {
  for (auto& server : servers_) {
    if (!server->start()) {
      error = "cannot bind port " + std::to_string(server->port());
      stop();
      return false;
    }
  }
  if (!sink_->start()) {
    error = "cannot bind sink port " + std::to_string(sink_->port());
    stop();
    return false;
  }
  return true;
}

void RunningCloud::stop() {
  for (auto& server : servers_) server->stop();
  if (sink_) sink_->stop();
}

std::vector<std::vector<RequestRecord>> RunningCloud::drain_logs() const {
  std::vector<std::vector<RequestRecord>> logs;
  logs.reserve(servers_.size());
  for (const auto& server : servers_) {
    logs.push_back(server->drain_request_log());
  }
  return logs;
}

CloudManifest generate_only(const CloudConfig& config,
                            const ConnectivityMatrix& connectivity,
                            const std::filesystem::path& out_dir,
                            bool emit_trace) {
  std::filesystem::create_directories(out_dir);
  GenerationTrace trace;
  const CloudManifest manifest =
      generate_cloud(config, connectivity, emit_trace ? &trace : nullptr);
  write_manifest(manifest, out_dir / "manifest");
  if (emit_trace) write_file(out_dir / "trace.txt", trace.text());
  maybe_write_hosts_map(manifest, out_dir);
  return manifest;
}

ProcessResult run_command_with_timeout(const std::string& command,
                                       double timeout_seconds) {
  ProcessResult result;
  const pid_t pid = fork();
  if (pid < 0) throw std::runtime_error("fork failed");
  if (pid == 0) {
    setpgid(0, 0);
    execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
    _exit(127);
  }
  const auto deadline = std::chrono::steady_clock::now() +
                        std::chrono::duration<double>(timeout_seconds);
  int status = 0;
  while (true) {
    const pid_t done = waitpid(pid, &status, WNOHANG);
    if (done == pid) break;
    if (std::chrono::steady_clock::now() >= deadline) {
      result.timed_out = true;
      kill(-pid, SIGTERM);
      const auto grace = std::chrono::steady_clock::now() + std::chrono::seconds(5);
      while (waitpid(pid, &status, WNOHANG) == 0 &&
             std::chrono::steady_clock::now() < grace) {
        std::this_thread::sleep_for(std::chrono::milliseconds(50));
      }
      if (waitpid(pid, &status, WNOHANG) == 0) {
        kill(-pid, SIGKILL);
        waitpid(pid, &status, 0);
      }
      break;
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(50));
  }
  if (WIFEXITED(status)) result.exit_code = WEXITSTATUS(status);
  else if (WIFSIGNALED(status)) result.exit_code = 128 + WTERMSIG(status);
  return result;
}

std::string expand_crawler_command(const std::string& command_template,
                                   const std::string& seeds_file,
                                   const std::string& sink_url) {
  std::string command = command_template;
  const auto replace_all = [&command](const std::string& what,
                                      const std::string& with) {
    std::size_t pos = 0;
    while ((pos = command.find(what, pos)) != std::string::npos) {
      command.replace(pos, what.size(), with);
      pos += with.size();
    }
  };
  replace_all("{seeds-file}", seeds_file);
  replace_all("{sink-url}", sink_url);
  return command;
}

RunReport run_benchmark(const CloudConfig& config,
                        const ConnectivityMatrix& connectivity,
                        const CrawlerLaunch& crawler,
                        const std::filesystem::path& out_dir, bool emit_trace,
                        int sink_port) {
  const CloudManifest manifest =
      generate_only(config, connectivity, out_dir, emit_trace);

  if (sink_port == 0) {
    sink_port = config.base_port + static_cast<int>(config.node_count);
  }
  RunningCloud cloud(manifest, sink_port);
  std::string error;
  if (!cloud.start(error)) throw std::runtime_error(error);

  std::string seeds_content;
  const std::vector<std::string> seeds = manifest.seed_uris();
  for (const auto& uri : seeds) seeds_content += uri + "\n";
  const std::filesystem::path seeds_file = out_dir / "seeds.txt";
  write_file(seeds_file, seeds_content);
  const std::string sink_url = cloud.sink().url();

  RunReport report;
  report.started_at = iso_utc_now();
  const std::int64_t start_ns = monotonic_ns();

  if (crawler.mode == CrawlerLaunch::Mode::Reference) {
    RefCrawler ref(crawler.reference_options);
    std::atomic<bool> crawl_done{false};
    std::thread crawl_thread([&] {
      report.crawler_exit_code = ref.crawl(seeds, sink_url);
      crawl_done.store(true);
    });
    const auto deadline = std::chrono::steady_clock::now() +
                          std::chrono::duration<double>(crawler.timeout_seconds);
    std::thread watchdog([&] {
      while (!crawl_done.load()) {
        if (std::chrono::steady_clock::now() >= deadline) {
          report.timed_out = true;
          ref.request_stop();
          return;
        }
        std::this_thread::sleep_for(std::chrono::milliseconds(50));
      }
    });
    crawl_thread.join();
    watchdog.join();
  } else {
    const std::string command = expand_crawler_command(
        crawler.command_template, seeds_file.string(), sink_url);
    const ProcessResult result =
        run_command_with_timeout(command, crawler.timeout_seconds);
    report.crawler_exit_code = result.exit_code;
    report.timed_out = result.timed_out;
  }

  const std::int64_t end_ns = monotonic_ns();
  report.finished_at = iso_utc_now();

  cloud.sink().stop();
  const SinkStore::Snapshot snapshot = cloud.sink().store().snapshot();
  const auto logs = cloud.drain_logs();
  cloud.stop();

  std::unordered_set<std::string> sink_lines(snapshot.lines.begin(),
                                             snapshot.lines.end());
  RunReport assembled = assemble_report(manifest, sink_lines,
                                        snapshot.arrivals_ns, logs, start_ns,
                                        end_ns);
  assembled.started_at = report.started_at;
  assembled.finished_at = report.finished_at;
  assembled.timed_out = report.timed_out;
  assembled.crawler_exit_code = report.crawler_exit_code;

  write_run_artifacts(out_dir, manifest, assembled, snapshot, logs, start_ns,
                      end_ns, sink_url);
  return assembled;
}

RunReport evaluate_saved(const std::filesystem::path& manifest_dir,
                         const std::filesystem::path& run_dir) {
  const CloudManifest manifest = read_manifest(manifest_dir);

  std::unordered_set<std::string> sink_lines;
  {
    std::stringstream stream(read_file(run_dir / "sink.nt"));
    std::string line;
    while (std::getline(stream, line)) {
      if (!line.empty()) sink_lines.insert(line);
    }
  }
  std::vector<std::int64_t> arrivals;
  {
    std::stringstream stream(read_file(run_dir / "arrivals.tsv"));
    std::string line;
    while (std::getline(stream, line)) {
      if (!line.empty()) arrivals.push_back(std::stoll(line));
    }
  }
  const auto logs = logs_from_tsv(read_file(run_dir / "logs.tsv"),
                                  manifest.web.nodes.size());
  const json meta = json::parse(read_file(run_dir / "run-meta.json"));

  RunReport report = assemble_report(manifest, sink_lines, arrivals, logs,
                                     meta.at("start_ns").get<std::int64_t>(),
                                     meta.at("end_ns").get<std::int64_t>());
  report.started_at = meta.at("started_at").get<std::string>();
  report.finished_at = meta.at("finished_at").get<std::string>();
  report.timed_out = meta.at("timed_out").get<bool>();
  report.crawler_exit_code = meta.at("crawler_exit_code").get<int>();
  return report;
}

}  // namespace crawlbench
