// Copyright 2026 The cacd Authors.
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "cacd/io.hpp"
#include "test_support.hpp"

namespace cacd {
namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TEST(IoTest, Table1CodeTableIsGolden) {
  Placement pl(testing::table1(), UnitPoint{});
  EXPECT_EQ(code_table_csv(pl), slurp(std::string(CACD_TEST_DATA_DIR) + "/table1_code_table.csv"));
}

TEST(IoTest, ProductDemandFile) {
  auto r = demand_from_json(read_json_file(std::string(CACD_TEST_DATA_DIR) + "/table1_product.json"));
  auto [ps, pd] = r.marginals();
  auto t1 = testing::table1();
  EXPECT_EQ(ps, t1);
  EXPECT_EQ(pd, t1);
}

TEST(IoTest, MatrixDemand) {
  auto r = demand_from_json(json::parse(R"({"matrix": [["0.25", 0.25], [0.25, "0.25"]]})"));
  EXPECT_DOUBLE_EQ(r(1, 0), 0.25);
  EXPECT_EQ(r.marginals().first, Distribution::uniform(2));
  EXPECT_THROW(demand_from_json(json::parse(R"({"matrix": [[0.5, 0.5]]})")), Error);
}

TEST(IoTest, ZipfDemand) {
  auto a = demand_from_json(json::parse(R"({"zipf": {"n": 50, "s_source": 1.0, "s_dest": 0.5, "perm_seed": 3}})"));
  auto b = demand_from_json(json::parse(R"({"zipf": {"n": 50, "s_source": 1.0, "s_dest": 0.5, "perm_seed": 3}})"));
  EXPECT_EQ(a.marginals(), b.marginals());
  EXPECT_NEAR(entropy(a.marginals().first), entropy(zipf(50, 1.0)), 1e-12);
}

TEST(IoTest, ResidualGoesToLargestEntry) {
  auto d = distribution_from_json(json::parse("[0.3333333, 0.3333333, 0.3333334]"));
  u128 total = 0;
  for (const auto& p : d.probs()) total += p.units();
  EXPECT_EQ(total, kOne);
}

TEST(IoTest, MalformedInputs) {
  EXPECT_THROW(demand_from_json(json::parse(R"({"nothing": 1})")), Error);
  EXPECT_THROW(demand_from_json(json::parse(R"({"product": {"p_s": [0.5, 0.5]}})")), Error);
  EXPECT_THROW(distribution_from_json(json::parse("[]")), Error);
  EXPECT_THROW(fraction_from_json(json::parse("true")), Error);
  EXPECT_THROW(read_json_file("/nonexistent/file.json"), Error);
}

TEST(IoTest, NetworkRoundTrip) {
  std::mt19937_64 rng(15);
  auto net = build_network(testing::random_distribution(rng, 40), random_shift(rng));
  json j = network_to_json(net.placement, net.graph);
  auto back = network_from_json(json::parse(j.dump()));
  EXPECT_EQ(back.placement.shift(), net.placement.shift());
  EXPECT_EQ(back.placement.distribution(), net.placement.distribution());
  EXPECT_EQ(back.graph.edges(), net.graph.edges());
  j["nodes"][0]["cw"] = "0";
  EXPECT_THROW(network_from_json(j), Error);
}

TEST(IoTest, EdgeCsv) {
  auto net = build_network(Distribution::uniform(2), UnitPoint{});
  // Each left image stays home; each right image lands on the other node.
  EXPECT_EQ(edges_csv(net.graph), "src,dst,type\n0,1,right\n0,1,ring\n1,0,left\n1,0,ring\n");
}

TEST(IoTest, TraceJson) {
  auto net = build_network(testing::table1(), UnitPoint{});
  json j = trace_to_json(route_forward(net.graph, net.placement, 5, 3));
  EXPECT_EQ(j["hops"], json({5, 2, 1, 3}));
  EXPECT_EQ(j["hop_count"], 3);
  EXPECT_EQ(j["mode"], "forward");
  EXPECT_EQ(j["outcome"], "delivered");
}

TEST(IoTest, ConfigRoundTrip) {
  auto c = config_from_json(json::parse(R"({"n": 64, "trials": 3, "exponents": [0.5], "seed": 9})"), default_config("epl"));
  EXPECT_EQ(c.n, 64u);
  EXPECT_EQ(c.trials, 3u);
  EXPECT_EQ(c.seed, 9u);
  auto again = config_from_json(config_to_json(c), ExperimentConfig{});
  EXPECT_EQ(config_to_json(again), config_to_json(c));
  EXPECT_THROW(config_from_json(json::parse(R"({"n": 1})"), ExperimentConfig{}), Error);
  EXPECT_THROW(config_from_json(json::parse(R"({"n": "many"})"), ExperimentConfig{}), Error);
}

}  // namespace
}  // namespace cacd
