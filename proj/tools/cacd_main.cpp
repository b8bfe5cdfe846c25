// Copyright 2026 The cacd Authors.
// SPDX-License-Identifier: Apache-2.0

// Command-line front end: build a network from a demand file, route a single
// message over a saved network, or run one of the experiment sweeps.

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "cacd/cacd.hpp"
#include "cacd/io.hpp"

namespace fs = std::filesystem;
using namespace cacd;

namespace {

struct BuildArgs {
  std::string demand;
  std::string shift = "0";
  std::optional<std::uint64_t> seed;
  std::string out;
  bool baseline = false;
};

struct RouteArgs {
  std::string net;
  NodeId src = 0;
  NodeId dst = 0;
  std::string mode = "auto";
  double fail_prob = 0.0;
  double ttl_mult = 3.0;
  std::uint64_t seed = 1;
};

struct ExperimentArgs {
  std::string kind;
  std::string config;
  std::string out = ".";
  std::optional<std::uint64_t> seed;
};

int run_build(const BuildArgs& a) {
  DemandMatrix r = demand_from_json(read_json_file(a.demand));
  auto [ps, pd] = r.marginals();
  UnitPoint shift;
  if (a.seed) {
    Rng rng(*a.seed);
    shift = random_shift(rng);
  } else {
    shift = UnitPoint(parse_fraction(a.shift));
  }
  Marginal tag = Marginal::Source;
  Network net;
  if (a.baseline) {
    net = build_baseline(r.size(), shift);
  } else {
    auto picked = select_build_distribution(ps, pd);
    tag = picked.second;
    net = build_network(picked.first, shift);
  }
  json doc = network_to_json(net.placement, net.graph);
  doc["built_from"] = a.baseline ? "uniform" : marginal_name(tag);
  doc["entropy"] = entropy(net.placement.distribution());
  if (a.out.empty()) {
    std::cout << doc.dump(2) << '\n';
    return 0;
  }
  fs::create_directories(a.out);
  write_text_file((fs::path(a.out) / "network.json").string(), doc.dump(2) + "\n");
  write_text_file((fs::path(a.out) / "edges.csv").string(), edges_csv(net.graph));
  write_text_file((fs::path(a.out) / "code_table.csv").string(), code_table_csv(net.placement));
  std::cout << "wrote " << net.placement.size() << " nodes, " << net.graph.edges().size() << " edges to " << a.out << '\n';
  return 0;
}

int run_route(const RouteArgs& a) {
  Network net = network_from_json(read_json_file(a.net));
  const auto& pl = net.placement;
  if (a.src >= pl.size() || a.dst >= pl.size()) throw Error(Errc::InvalidArgument, "node index out of range");
  Algorithm algo = Algorithm::Improved;
  if (a.mode == "fwd") algo = Algorithm::Forward;
  else if (a.mode == "bwd") algo = Algorithm::Backward;
  else if (a.mode != "auto") throw Error(Errc::InvalidArgument, "mode must be fwd, bwd or auto");

  RouteTrace plain = route(net.graph, pl, a.src, a.dst, algo);
  json out;
  out["src"] = a.src;
  out["dst"] = a.dst;
  out["src_cw"] = pl.cw(a.src).str();
  out["dst_cw"] = pl.cw(a.dst).str();
  if (a.fail_prob <= 0.0) {
    out["trace"] = trace_to_json(plain);
  } else {
    if (algo != Algorithm::Improved) throw Error(Errc::InvalidArgument, "routing under failures always uses --mode auto");
    if (a.fail_prob >= 1.0) throw Error(Errc::InvalidArgument, "--fail-prob must be below 1");
    Rng fail_rng(mix_seed(a.seed, {0}));
    Rng route_rng(mix_seed(a.seed, {1}));
    FailureOverlay overlay = FailureOverlay::random(net.graph, a.fail_prob, fail_rng);
    std::size_t ttl = ttl_for(plain.hop_count(), a.ttl_mult);
    out["ttl"] = ttl;
    out["failed_pairs"] = overlay.failed_count();
    out["trace"] = trace_to_json(route_with_failures(overlay, pl, a.src, a.dst, ttl, route_rng));
  }
  std::cout << out.dump(2) << '\n';
  return 0;
}

int run_experiment_cmd(const ExperimentArgs& a) {
  ExperimentConfig cfg = default_config(a.kind);
  if (!a.config.empty()) cfg = config_from_json(read_json_file(a.config), cfg);
  if (a.seed) cfg.seed = *a.seed;
  cfg.validate();
  ExperimentResult res = run_experiment(a.kind, cfg);
  fs::create_directories(a.out);
  std::string rows = a.kind + ".csv";
  std::string summary = a.kind + "_summary.csv";
  write_text_file((fs::path(a.out) / rows).string(), res.rows.csv());
  write_text_file((fs::path(a.out) / summary).string(), res.summary.csv());
  json manifest = {{"experiment", a.kind},
                   {"seed", cfg.seed},
                   {"config", config_to_json(cfg)},
                   {"git_describe", CACD_GIT_DESCRIBE},
                   {"files", {rows, summary}}};
  write_text_file((fs::path(a.out) / "manifest.json").string(), manifest.dump(2) + "\n");
  std::cout << res.summary.csv();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Demand-aware overlay construction and routing"};
  app.require_subcommand(1);

  BuildArgs build_args;
  auto* build_cmd = app.add_subcommand("build", "Build a network and write its graph and code table");
  build_cmd->add_option("--demand", build_args.demand, "Demand JSON (matrix, product or zipf)")->required()->check(CLI::ExistingFile);
  build_cmd->add_option("--shift", build_args.shift, "Placement shift in [0,1)");
  build_cmd->add_option("--seed", build_args.seed, "Draw a random shift from this seed instead");
  build_cmd->add_option("--out", build_args.out, "Output directory; prints the network JSON when omitted");
  build_cmd->add_flag("--baseline", build_args.baseline, "Build the uniform baseline of the same size");

  RouteArgs route_args;
  auto* route_cmd = app.add_subcommand("route", "Route one message and print its trace as JSON");
  route_cmd->add_option("--net", route_args.net, "network.json written by 'build'")->required()->check(CLI::ExistingFile);
  route_cmd->add_option("--src", route_args.src, "Source node (0-based)")->required();
  route_cmd->add_option("--dst", route_args.dst, "Destination node (0-based)")->required();
  route_cmd->add_option("--mode", route_args.mode, "fwd, bwd or auto")->check(CLI::IsMember({"fwd", "bwd", "auto"}));
  route_cmd->add_option("--fail-prob", route_args.fail_prob, "Independent failure probability per edge");
  route_cmd->add_option("--ttl-mult", route_args.ttl_mult, "TTL as a multiple of the failure-free hop count");
  route_cmd->add_option("--seed", route_args.seed, "Seed for failures and recovery");

  ExperimentArgs exp_args;
  auto* exp_cmd = app.add_subcommand("experiment", "Run an experiment sweep and write CSVs plus a manifest");
  exp_cmd->add_option("kind", exp_args.kind, "epl, degree, load, failures, scaling or cuts")
      ->required()
      ->check(CLI::IsMember({"epl", "degree", "load", "failures", "scaling", "cuts"}));
  exp_cmd->add_option("--config", exp_args.config, "JSON config overriding the defaults")->check(CLI::ExistingFile);
  exp_cmd->add_option("--out", exp_args.out, "Output directory");
  exp_cmd->add_option("--seed", exp_args.seed, "Master seed (overrides the config)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (build_cmd->parsed()) return run_build(build_args);
    if (route_cmd->parsed()) return run_route(route_args);
    if (exp_cmd->parsed()) return run_experiment_cmd(exp_args);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 1;
}
