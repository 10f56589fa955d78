// Copyright (C) 2026 crawlbench contributors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <map>
#include <set>

#include "crawlbench/cloud_gen.hpp"
#include "crawlbench/evaluator.hpp"
#include "crawlbench/harness.hpp"
#include "crawlbench/ref_crawler.hpp"

using namespace crawlbench;

namespace {

CloudConfig deref_cloud(std::uint64_t nodes, std::uint16_t base_port,
                        std::uint64_t seed) {
  CloudConfig config;
  config.node_count = nodes;
  config.type_weights[static_cast<int>(NodeType::Dereferencing)] = 1;
  config.avg_node_degree = 4;
  config.triples_per_graph = 25;
  config.avg_resource_degree = 3;
  config.seed = seed;
  config.base_port = base_port;
  return config;
}

}  // namespace

TEST_CASE("http url splitting") {
  std::string host, path, query;
  REQUIRE(split_http_url("http://127.0.0.1:18100/dataset-0/resource-1", host,
                         path, query));
  CHECK(host == "127.0.0.1:18100");
  CHECK(path == "/dataset-0/resource-1");
  CHECK(query.empty());

  REQUIRE(split_http_url("http://h/dumpFile.ttl.gz#dataset-0-resource-0", host,
                         path, query));
  CHECK(path == "/dumpFile.ttl.gz");  // fragment dropped

  REQUIRE(split_http_url("http://h/sparql?query=abc", host, path, query));
  CHECK(path == "/sparql");
  CHECK(query == "query=abc");

  REQUIRE(split_http_url("http://h", host, path, query));
  CHECK(path == "/");

  CHECK_FALSE(split_http_url("https://h/", host, path, query));
  CHECK_FALSE(split_http_url("ftp://h/", host, path, query));
  CHECK_FALSE(split_http_url("not a url", host, path, query));
}

TEST_CASE("robots parsing") {
  const RobotsRules rules = parse_robots_txt(
      "User-agent: other\nDisallow: /private/\n\n"
      "User-agent: *\nDisallow: /disallowed/\nCrawl-delay: 2.5\n");
  CHECK(rules.crawl_delay_seconds == 2.5);
  REQUIRE(rules.disallow.size() == 1);
  CHECK(rules.is_disallowed("/disallowed/dataset-0/resource-1"));
  CHECK_FALSE(rules.is_disallowed("/dataset-0/resource-1"));
  CHECK_FALSE(rules.is_disallowed("/private/x"));  // other agent's group

  const RobotsRules empty = parse_robots_txt("User-agent: *\nDisallow:\n");
  CHECK(empty.disallow.empty());
  CHECK_FALSE(empty.is_disallowed("/anything"));
}

TEST_CASE("rdfa extraction matches the emitted pattern") {
  const std::string html =
      "<!DOCTYPE html>\n<html><body>\n"
      "<div about=\"http://a/s\">\n"
      "  <a rel=\"http://a/p\" href=\"http://a/o\">o</a>\n"
      "  <a rel=\"http://a/q\" href=\"http://b/?x=1&amp;y=2\">ext</a>\n"
      "</div>\n"
      "<div about=\"http://a/t\"><a rel=\"http://a/p\" href=\"http://a/s\">s</a></div>\n"
      "<p>no triples here</p>\n"
      "</body></html>\n";
  const auto triples = extract_rdfa(html);
  REQUIRE(triples.size() == 3);
  CHECK(triples[0].subject == "http://a/s");
  CHECK(triples[0].predicate == "http://a/p");
  CHECK(triples[0].object == "http://a/o");
  CHECK(triples[1].object == "http://b/?x=1&y=2");  // entity-decoded
  CHECK(triples[2].subject == "http://a/t");
}

TEST_CASE("end-to-end: ten dereferencing nodes crawl to full recall") {
  const CloudConfig config = deref_cloud(10, 18500, 77);
  const CloudManifest manifest =
      generate_cloud(config, ConnectivityMatrix::defaults());
  RunningCloud cloud(manifest, 18500 + 10);
  std::string error;
  REQUIRE_MESSAGE(cloud.start(error), error);

  CrawlOptions options;
  options.workers = 4;
  RefCrawler crawler(options);
  const int status = crawler.crawl(manifest.seed_uris(), cloud.sink().url());
  CHECK(status == 0);

  const auto sink_lines = cloud.sink().store().line_set();
  const RecallResult result = recall(manifest, sink_lines);
  CHECK(result.micro == 1.0);
  CHECK(result.macro == 1.0);

  // The sink holds exactly the union of the expected sets: the crawler adds
  // nothing of its own and nothing beyond the served triples exists.
  std::set<std::string> expected_union;
  for (const auto& data : manifest.per_node) {
    expected_union.insert(data.expected_lines.begin(),
                          data.expected_lines.end());
  }
  CHECK(std::set<std::string>(sink_lines.begin(), sink_lines.end()) ==
        expected_union);

  // Frontier dedup: no path is fetched twice on any node.
  const auto logs = cloud.drain_logs();
  for (const auto& node_log : logs) {
    std::map<std::string, int> counts;
    for (const auto& record : node_log) ++counts[record.path];
    for (const auto& [path, count] : counts) {
      CAPTURE(path);
      CHECK(count == 1);
    }
  }
  // Politeness default: nothing disallowed was requested.
  for (const auto& node_log : logs) {
    for (const auto& record : node_log) CHECK_FALSE(record.disallowed_hit);
  }
  cloud.stop();
}

TEST_CASE("end-to-end: impolite crawler fetches every disallowed copy") {
  CloudConfig config = deref_cloud(4, 18530, 31);
  config.disallowed_ratio = 0.1;
  const CloudManifest manifest =
      generate_cloud(config, ConnectivityMatrix::defaults());
  RunningCloud cloud(manifest, 18530 + 4);
  std::string error;
  REQUIRE_MESSAGE(cloud.start(error), error);

  CrawlOptions options;
  options.workers = 2;
  options.obey_disallow = false;
  options.obey_delay = false;
  RefCrawler crawler(options);
  CHECK(crawler.crawl(manifest.seed_uris(), cloud.sink().url()) == 0);

  const auto logs = cloud.drain_logs();
  const auto rdr = requested_disallowed_ratio(logs, manifest);
  REQUIRE(rdr.has_value());
  CHECK(rdr->ratio == 1.0);

  // Polite crawler on the same cloud touches none of them. The node ports
  // are shared, so the first cloud has to be down first.
  CloudManifest manifest2 = manifest;
  RunningCloud cloud2(manifest2, 18530 + 5);
  cloud.stop();
  REQUIRE_MESSAGE(cloud2.start(error), error);
  CrawlOptions polite;
  polite.workers = 2;
  RefCrawler polite_crawler(polite);
  CHECK(polite_crawler.crawl(manifest2.seed_uris(), cloud2.sink().url()) == 0);
  const auto polite_rdr =
      requested_disallowed_ratio(cloud2.drain_logs(), manifest2);
  REQUIRE(polite_rdr.has_value());
  CHECK(polite_rdr->ratio == 0.0);
  // Recall stays perfect: the pointer triples are allowed content.
  CHECK(recall(manifest2, cloud2.sink().store().line_set()).micro == 1.0);
  cloud2.stop();
}

TEST_CASE("end-to-end: breadth-first strategy also drains the cloud") {
  const CloudConfig config = deref_cloud(6, 18540, 55);
  const CloudManifest manifest =
      generate_cloud(config, ConnectivityMatrix::defaults());
  RunningCloud cloud(manifest, 18540 + 6);
  std::string error;
  REQUIRE_MESSAGE(cloud.start(error), error);

  CrawlOptions options;
  options.workers = 3;
  options.strategy = CrawlOptions::Strategy::Bfs;
  RefCrawler crawler(options);
  CHECK(crawler.crawl(manifest.seed_uris(), cloud.sink().url()) == 0);
  CHECK(recall(manifest, cloud.sink().store().line_set()).micro == 1.0);
  cloud.stop();
}

TEST_CASE("end-to-end: serving fidelity across all five node types") {
  CloudConfig config;
  config.node_count = 15;
  config.type_weights[static_cast<int>(NodeType::Dereferencing)] = 3;
  config.type_weights[static_cast<int>(NodeType::DumpFile)] = 4;
  config.type_weights[static_cast<int>(NodeType::Sparql)] = 3;
  config.type_weights[static_cast<int>(NodeType::Ckan)] = 1;
  config.type_weights[static_cast<int>(NodeType::Rdfa)] = 1;
  config.avg_node_degree = 5;
  config.triples_per_graph = 40;
  config.avg_resource_degree = 4;
  config.dump_compression_ratio = 0.6;
  config.seed = 404;
  config.base_port = 18550;
  const CloudManifest manifest =
      generate_cloud(config, ConnectivityMatrix::defaults());
  RunningCloud cloud(manifest, 18550 + 15);
  std::string error;
  REQUIRE_MESSAGE(cloud.start(error), error);

  CrawlOptions options;
  options.workers = 4;
  options.sparql_page_size = 16;  // force multi-page endpoint draining
  RefCrawler crawler(options);
  CHECK(crawler.crawl(manifest.seed_uris(), cloud.sink().url()) == 0);

  const auto sink_lines = cloud.sink().store().line_set();
  std::set<std::string> expected_union;
  for (const auto& data : manifest.per_node) {
    expected_union.insert(data.expected_lines.begin(),
                          data.expected_lines.end());
  }
  CHECK(std::set<std::string>(sink_lines.begin(), sink_lines.end()) ==
        expected_union);
  cloud.stop();
}

TEST_CASE("crawler command template expansion") {
  CHECK(expand_crawler_command("mycrawler --seeds {seeds-file} --out {sink-url}",
                               "/tmp/seeds.txt", "http://127.0.0.1:9/sink") ==
        "mycrawler --seeds /tmp/seeds.txt --out http://127.0.0.1:9/sink");
}

TEST_CASE("external command timeout is enforced") {
  const ProcessResult quick = run_command_with_timeout("exit 3", 5.0);
  CHECK(quick.exit_code == 3);
  CHECK_FALSE(quick.timed_out);

  const ProcessResult slow = run_command_with_timeout("sleep 30", 0.2);
  CHECK(slow.timed_out);
}
