// Copyright 2026 The cacd Authors.
// SPDX-License-Identifier: Apache-2.0

/// \file
/// File formats: demand JSON, network JSON / edge-list CSV, code-table CSV,
/// route traces and experiment configs. Fractions are written as decimal
/// strings; network files carry exact expansions so they reload bit-for-bit.

#ifndef CACD_IO_HPP
#define CACD_IO_HPP

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "cacd/coding.hpp"
#include "cacd/demand.hpp"
#include "cacd/error.hpp"
#include "cacd/experiment.hpp"
#include "cacd/routing.hpp"
#include "cacd/topology.hpp"

namespace cacd {

using json = nlohmann::json;

/// A fraction from a JSON string ("0.15") or number (0.15).
inline u128 fraction_from_json(const json& j) {
  if (j.is_string()) return parse_fraction(j.get<std::string>());
  if (j.is_number()) {
    if (j.is_number_integer() || j.is_number_unsigned()) return parse_fraction(std::to_string(j.get<long long>()));
    return quantize(j.get<double>());
  }
  throw Error(Errc::Parse, "expected a fraction, got " + j.dump());
}

/// Entries are quantized individually; any rounding residual is moved onto
/// the largest entry so the total is exactly one.
inline Distribution distribution_from_json(const json& arr) {
  if (!arr.is_array() || arr.empty()) throw Error(Errc::Parse, "expected a non-empty array of probabilities");
  std::vector<u128> units;
  for (const auto& e : arr) units.push_back(fraction_from_json(e));
  absorb_residual(units);
  return Distribution::from_units(std::move(units));
}

/// {"matrix": [[...]]}, {"product": {"p_s": [...], "p_d": [...]}} or
/// {"zipf": {"n", "s_source", "s_dest", "perm_seed"}}.
inline DemandMatrix demand_from_json(const json& j) {
  try {
    if (j.contains("matrix")) {
      const json& m = j.at("matrix");
      if (!m.is_array()) throw Error(Errc::Parse, "matrix must be an array of rows");
      std::size_t n = m.size();
      std::vector<u128> flat;
      for (const auto& row : m) {
        if (!row.is_array() || row.size() != n) throw Error(Errc::LengthMismatch, "matrix is not square");
        for (const auto& e : row) flat.push_back(fraction_from_json(e));
      }
      absorb_residual(flat);
      std::vector<std::vector<u128>> entries(n, std::vector<u128>(n));
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) entries[i][k] = flat[i * n + k];
      return DemandMatrix::explicit_matrix(std::move(entries));
    }
    if (j.contains("product")) {
      const json& p = j.at("product");
      return product_demand(distribution_from_json(p.at("p_s")), distribution_from_json(p.at("p_d")));
    }
    if (j.contains("zipf")) {
      const json& z = j.at("zipf");
      auto n = z.at("n").get<std::size_t>();
      double s_src = z.at("s_source").get<double>();
      double s_dst = z.value("s_dest", s_src);
      Rng rng(z.value("perm_seed", std::uint64_t{0}));
      auto ps = zipf(n, s_src);
      auto pd = zipf(n, s_dst);
      auto perm_s = random_permutation(n, rng);
      auto perm_d = random_permutation(n, rng);
      return product_demand(ps.permuted(perm_s), pd.permuted(perm_d));
    }
  } catch (const json::exception& e) {
    throw Error(Errc::Parse, e.what());
  }
  throw Error(Errc::Parse, "demand file needs one of 'matrix', 'product' or 'zipf'");
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::InvalidArgument, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(Errc::Parse, path + ": " + e.what());
  }
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::InvalidArgument, "cannot write " + path);
  out << text;
}

/// i, p_i, F_i, Fbar_i, binary(Fbar_i), l_i, cw_i, x_i. Indices are 1-based.
inline std::string code_table_csv(const Placement& pl) {
  std::ostringstream os;
  os << "i,p_i,F_i,Fbar_i,Fbar_i_binary,l_i,cw_i,x_i\n";
  const CodeTable& t = pl.code_table();
  for (std::size_t i = 0; i < t.size(); ++i) {
    const CodeEntry& e = t[i];
    os << (i + 1) << ',' << to_decimal(e.p.units()) << ',' << to_decimal(e.cumulative) << ',' << to_decimal(e.midpoint.units()) << ','
       << to_binary(e.midpoint.units(), 10) << ',' << e.length << ',' << e.cw.str() << ',' << to_decimal(pl.point(i).units()) << '\n';
  }
  return os.str();
}

/// {n, shift, nodes: [{id, p, cw, x}], edges: [{src, dst, type}]}, with
/// edges ordered by (src, dst, type).
inline json network_to_json(const Placement& pl, const DiscreteGraph& g) {
  json nodes = json::array();
  for (std::size_t i = 0; i < pl.size(); ++i)
    nodes.push_back({{"id", i},
                     {"p", to_decimal_exact(pl.distribution()[i].units())},
                     {"cw", pl.cw(i).str()},
                     {"x", to_decimal_exact(pl.point(i).units())}});
  json edges = json::array();
  for (const Edge& e : g.edges()) edges.push_back({{"src", e.src}, {"dst", e.dst}, {"type", edge_type_name(e.type)}});
  return {{"n", pl.size()}, {"shift", to_decimal_exact(pl.shift().units())}, {"nodes", nodes}, {"edges", edges}};
}

inline std::string edges_csv(const DiscreteGraph& g) {
  std::ostringstream os;
  os << "src,dst,type\n";
  for (const Edge& e : g.edges()) os << e.src << ',' << e.dst << ',' << edge_type_name(e.type) << '\n';
  return os.str();
}

/// Rebuilds a network from its JSON export and checks that codewords and
/// edges match what was written.
inline Network network_from_json(const json& j) {
  try {
    const json& nodes = j.at("nodes");
    std::vector<u128> units;
    for (const auto& node : nodes) units.push_back(fraction_from_json(node.at("p")));
    UnitPoint shift(fraction_from_json(j.at("shift")));
    Network net = build_network(Distribution::from_units(std::move(units)), shift);
    for (std::size_t i = 0; i < nodes.size(); ++i)
      if (nodes[i].at("cw").get<std::string>() != net.placement.cw(i).str())
        throw Error(Errc::Parse, "codeword mismatch for node " + std::to_string(i));
    if (j.contains("edges") && j.at("edges").size() != net.graph.edges().size()) throw Error(Errc::Parse, "edge list does not match the rebuilt network");
    return net;
  } catch (const json::exception& e) {
    throw Error(Errc::Parse, e.what());
  }
}

inline json trace_to_json(const RouteTrace& tr) {
  return {{"hops", tr.hops},
          {"hop_count", tr.hop_count()},
          {"mode", mode_name(tr.mode)},
          {"recoveries", tr.recoveries},
          {"outcome", outcome_name(tr.outcome)}};
}

inline ExperimentConfig config_from_json(const json& j, ExperimentConfig c) {
  try {
    if (j.contains("n")) c.n = j.at("n").get<std::size_t>();
    if (j.contains("exponents")) c.exponents = j.at("exponents").get<std::vector<double>>();
    if (j.contains("trials")) c.trials = j.at("trials").get<std::size_t>();
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("failure_probs")) c.failure_probs = j.at("failure_probs").get<std::vector<double>>();
    if (j.contains("ttl_multipliers")) c.ttl_multipliers = j.at("ttl_multipliers").get<std::vector<double>>();
    if (j.contains("sizes")) c.sizes = j.at("sizes").get<std::vector<std::size_t>>();
    if (j.contains("cut_mass")) c.cut_mass = j.at("cut_mass").get<double>();
    if (j.contains("output")) c.output = j.at("output").get<std::string>();
  } catch (const json::exception& e) {
    throw Error(Errc::Parse, e.what());
  }
  c.validate();
  return c;
}

inline json config_to_json(const ExperimentConfig& c) {
  return {{"n", c.n},
          {"exponents", c.exponents},
          {"trials", c.trials},
          {"seed", c.seed},
          {"failure_probs", c.failure_probs},
          {"ttl_multipliers", c.ttl_multipliers},
          {"sizes", c.sizes},
          {"cut_mass", c.cut_mass},
          {"output", c.output}};
}

}  // namespace cacd

#endif  // CACD_IO_HPP
