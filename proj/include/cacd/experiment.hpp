// Copyright 2026 The cacd Authors.
// SPDX-License-Identifier: Apache-2.0

/// \file
/// Experiment harness: Zipf product-demand trials comparing the
/// demand-aware construction against the uniform baseline.
///
/// Every trial draws its own permutations, shifts and failures from a
/// stream seeded by mix_seed(master, ...), so trials can run in any order
/// (or concurrently) and still produce identical tables.

#ifndef CACD_EXPERIMENT_HPP
#define CACD_EXPERIMENT_HPP

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "cacd/demand.hpp"
#include "cacd/error.hpp"
#include "cacd/metrics.hpp"
#include "cacd/routing.hpp"
#include "cacd/topology.hpp"

namespace cacd {

inline std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t mix_seed(std::uint64_t master, std::initializer_list<std::uint64_t> keys) noexcept {
  std::uint64_t h = splitmix64(master);
  for (std::uint64_t k : keys) h = splitmix64(h ^ splitmix64(k + 0x632be59bd9b4e019ULL));
  return h;
}

using Rng = std::mt19937_64;

/// Runs body(i) for i in [0, count) on the available hardware threads.
inline void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
  std::size_t workers = std::min<std::size_t>(count, std::max(1u, std::thread::hardware_concurrency()));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = next++; i < count; i = next++) body(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

struct ExperimentConfig {
  std::size_t n = 300;
  std::vector<double> exponents{0.0, 0.25, 0.5, 0.75, 1.0, 1.25, 1.5, 1.75, 2.0};
  std::size_t trials = 50;
  std::uint64_t seed = 1;
  std::vector<double> failure_probs{0.0, 0.05, 0.1, 0.15, 0.2, 0.25, 0.3, 0.35, 0.4, 0.45, 0.5};
  std::vector<double> ttl_multipliers{1.0, 1.5, 2.0, 2.5, 3.0, 4.0, 5.0};
  std::vector<std::size_t> sizes{100, 200, 300, 400, 500, 600, 700, 800, 900, 1000};
  double cut_mass = 0.3;
  std::string output;

  void validate() const {
    if (trials < 1) throw Error(Errc::InvalidArgument, "trials must be >= 1");
    if (n < 2) throw Error(Errc::InvalidArgument, "n must be >= 2");
    for (double s : exponents)
      if (!(s >= 0.0)) throw Error(Errc::InvalidArgument, "exponents must be >= 0");
    for (double f : failure_probs)
      if (!(f >= 0.0 && f < 1.0)) throw Error(Errc::InvalidArgument, "failure probabilities must lie in [0,1)");
    for (double m : ttl_multipliers)
      if (!(m > 0.0)) throw Error(Errc::InvalidArgument, "ttl multipliers must be > 0");
    for (std::size_t s : sizes)
      if (s < 2) throw Error(Errc::InvalidArgument, "sizes must be >= 2");
    if (!(cut_mass > 0.0 && cut_mass <= 0.5)) throw Error(Errc::InvalidArgument, "cut_mass must lie in (0, 0.5]");
  }
};

/// Defaults per experiment kind (epl, degree, load, failures, scaling, cuts).
inline ExperimentConfig default_config(const std::string& kind) {
  ExperimentConfig c;
  if (kind == "degree" || kind == "load") {
    c.exponents = {0.5, 1.0};
  } else if (kind == "failures") {
    c.exponents = {1.0};
  } else if (kind == "scaling") {
    c.exponents = {1.0};
    c.trials = 10;
  } else if (kind == "cuts") {
    c.exponents = {1.0};
    c.sizes = {100, 200, 400};
    c.trials = 100;
  } else if (kind != "epl") {
    throw Error(Errc::InvalidArgument, "unknown experiment '" + kind + "'");
  }
  return c;
}

/// One demand instance with both topologies built on it.
struct Trial {
  Distribution source;
  Distribution dest;
  DemandMatrix demand;
  Marginal built_from = Marginal::Source;
  double entropy_source = 0.0;
  double entropy_dest = 0.0;
  Network cacd;
  Network baseline;

  double entropy_min() const noexcept { return std::min(entropy_source, entropy_dest); }
};

/// Zipf(n, s_src) and Zipf(n, s_dst) under independent random node
/// permutations, their product demand, the construction on the lower
/// entropy marginal and the baseline, each with its own random shift.
inline Trial make_trial(std::size_t n, double s_src, double s_dst, std::uint64_t seed, bool with_baseline = true) {
  Rng rng(seed);
  auto ps = zipf(n, s_src);
  auto pd = zipf(n, s_dst);
  auto perm_s = random_permutation(n, rng);
  auto perm_d = random_permutation(n, rng);
  ps = ps.permuted(perm_s);
  pd = pd.permuted(perm_d);
  UnitPoint shift_cacd = random_shift(rng);
  UnitPoint shift_base = random_shift(rng);
  auto [build_dist, tag] = select_build_distribution(ps, pd);
  Trial t{ps, pd, product_demand(ps, pd), tag, entropy(ps), entropy(pd), build_network(build_dist, shift_cacd), {}};
  if (with_baseline) t.baseline = build_baseline(n, shift_base);
  return t;
}

/// Rank of each node by descending probability (0 = most active).
inline std::vector<std::size_t> activity_rank(const Distribution& p) {
  std::vector<std::size_t> idx(p.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::stable_sort(idx.begin(), idx.end(), [&p](std::size_t a, std::size_t b) { return p[a].units() > p[b].units(); });
  std::vector<std::size_t> rank(p.size());
  for (std::size_t r = 0; r < idx.size(); ++r) rank[idx[r]] = r;
  return rank;
}

/// A plain results table; cells are preformatted.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  std::string csv() const {
    std::ostringstream os;
    for (std::size_t c = 0; c < columns.size(); ++c) os << (c ? "," : "") << columns[c];
    os << '\n';
    for (const auto& r : rows) {
      for (std::size_t c = 0; c < r.size(); ++c) os << (c ? "," : "") << r[c];
      os << '\n';
    }
    return os.str();
  }

  std::size_t column(const std::string& name) const {
    for (std::size_t c = 0; c < columns.size(); ++c)
      if (columns[c] == name) return c;
    throw Error(Errc::InvalidArgument, "no column '" + name + "'");
  }
};

inline std::string fmt(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

inline std::string fmt(std::size_t v) { return std::to_string(v); }

struct ExperimentResult {
  Table rows;
  Table summary;
};

namespace detail {

// Groups rows by key columns and reports mean/std of the value columns.
inline Table summarize(const Table& t, const std::vector<std::string>& keys, const std::vector<std::string>& values) {
  Table s;
  s.columns = keys;
  s.columns.push_back("count");
  for (const auto& v : values) {
    s.columns.push_back(v + "_mean");
    s.columns.push_back(v + "_std");
  }
  std::vector<std::size_t> kc, vc;
  for (const auto& k : keys) kc.push_back(t.column(k));
  for (const auto& v : values) vc.push_back(t.column(v));
  std::map<std::vector<std::string>, std::vector<std::vector<double>>> groups;
  std::vector<std::vector<std::string>> order;
  for (const auto& r : t.rows) {
    std::vector<std::string> key;
    for (std::size_t c : kc) key.push_back(r[c]);
    auto [it, fresh] = groups.try_emplace(key, std::vector<std::vector<double>>(vc.size()));
    if (fresh) order.push_back(key);
    for (std::size_t i = 0; i < vc.size(); ++i) it->second[i].push_back(std::stod(r[vc[i]]));
  }
  for (const auto& key : order) {
    auto row = key;
    const auto& cols = groups[key];
    row.push_back(fmt(cols.empty() ? std::size_t{0} : cols[0].size()));
    for (const auto& col : cols) {
      MeanStd m = mean_std(col);
      row.push_back(fmt(m.mean));
      row.push_back(fmt(m.std));
    }
    s.rows.push_back(std::move(row));
  }
  return s;
}

template <class Row>
std::vector<std::vector<std::string>> flatten(std::vector<std::vector<Row>>& per_trial) {
  std::vector<std::vector<std::string>> out;
  for (auto& rows : per_trial)
    for (auto& r : rows) out.push_back(std::move(r));
  return out;
}

}  // namespace detail

/// EPL of improved, forward and backward routing against the baseline,
/// per Zipf exponent and trial.
inline ExperimentResult epl_sweep(const ExperimentConfig& cfg) {
  cfg.validate();
  ExperimentResult res;
  res.rows.columns = {"s", "trial", "n", "entropy_source", "entropy_dest", "entropy_min", "built_from",
                      "epl_improved", "epl_forward", "epl_backward", "epl_baseline", "l_sfe"};
  std::size_t cells = cfg.exponents.size() * cfg.trials;
  std::vector<std::vector<std::vector<std::string>>> out(cells);
  parallel_for(cells, [&](std::size_t c) {
    std::size_t si = c / cfg.trials, trial = c % cfg.trials;
    double s = cfg.exponents[si];
    Trial t = make_trial(cfg.n, s, s, mix_seed(cfg.seed, {0, si, trial}));
    const auto& [pl, g] = t.cacd;
    double fwd = epl(t.demand, g, pl, Algorithm::Forward);
    double bwd = epl(t.demand, g, pl, Algorithm::Backward);
    double imp = epl(t.demand, g, pl, Algorithm::Improved);
    double base = epl(t.demand, t.baseline.graph, t.baseline.placement, Algorithm::Forward);
    out[c].push_back({fmt(s), fmt(trial), fmt(cfg.n), fmt(t.entropy_source), fmt(t.entropy_dest), fmt(t.entropy_min()),
                      marginal_name(t.built_from), fmt(imp), fmt(fwd), fmt(bwd), fmt(base), fmt(expected_code_length(pl.distribution()))});
  });
  res.rows.rows = detail::flatten(out);
  res.summary = detail::summarize(res.rows, {"s"}, {"entropy_min", "epl_improved", "epl_forward", "epl_backward", "epl_baseline"});
  return res;
}

/// Per-node non-ring degrees against the build probability.
inline ExperimentResult degree_sweep(const ExperimentConfig& cfg) {
  cfg.validate();
  ExperimentResult res;
  res.rows.columns = {"s", "trial", "topology", "node", "rank", "p", "out_degree", "in_degree", "expected_out", "expected_in",
                      "lemma_out", "lemma_in"};
  std::size_t cells = cfg.exponents.size() * cfg.trials;
  std::vector<std::vector<std::vector<std::string>>> out(cells);
  parallel_for(cells, [&](std::size_t c) {
    std::size_t si = c / cfg.trials, trial = c % cfg.trials;
    double s = cfg.exponents[si];
    Trial t = make_trial(cfg.n, s, s, mix_seed(cfg.seed, {1, si, trial}));
    auto emit = [&](const char* name, const Network& net) {
      auto rank = activity_rank(net.placement.distribution());
      auto deg = degree_vs_activity(net.graph, net.placement);
      for (std::size_t i = 0; i < deg.size(); ++i)
        out[c].push_back({fmt(s), fmt(trial), name, fmt(i), fmt(rank[i]), fmt(deg[i].p), fmt(deg[i].out_degree), fmt(deg[i].in_degree),
                          fmt(expected_out_degree(cfg.n, deg[i].p)), fmt(expected_in_degree(cfg.n, deg[i].p)),
                          fmt(lemma_out_degree(cfg.n, deg[i].p)), fmt(lemma_in_degree(cfg.n, deg[i].p))});
    };
    emit("cacd", t.cacd);
    emit("baseline", t.baseline);
  });
  res.rows.rows = detail::flatten(out);
  res.summary = detail::summarize(res.rows, {"s", "topology", "rank"}, {"p", "out_degree", "in_degree"});
  return res;
}

/// Relay load per node. Nodes are reported with their activity a = p_s + p_d.
inline ExperimentResult load_sweep(const ExperimentConfig& cfg) {
  cfg.validate();
  ExperimentResult res;
  res.rows.columns = {"s", "trial", "topology", "node", "p", "activity", "load"};
  std::size_t cells = cfg.exponents.size() * cfg.trials;
  std::vector<std::vector<std::vector<std::string>>> out(cells);
  parallel_for(cells, [&](std::size_t c) {
    std::size_t si = c / cfg.trials, trial = c % cfg.trials;
    double s = cfg.exponents[si];
    Trial t = make_trial(cfg.n, s, s, mix_seed(cfg.seed, {2, si, trial}));
    auto act = activity(t.demand);
    auto emit = [&](const char* name, const Network& net) {
      auto load = relay_load(t.demand, net.graph, net.placement, Algorithm::Improved);
      for (std::size_t i = 0; i < load.size(); ++i)
        out[c].push_back({fmt(s), fmt(trial), name, fmt(i), fmt(net.placement.distribution()[i].value()), fmt(act[i]), fmt(load[i])});
    };
    emit("cacd", t.cacd);
    emit("baseline", t.baseline);
  });
  res.rows.rows = detail::flatten(out);
  res.summary = detail::summarize(res.rows, {"s", "topology"}, {"load"});
  return res;
}

/// Weighted delivery under independent edge failures, for every failure
/// probability and TTL multiplier. The failure pattern of a (trial, f) cell
/// is shared by all multipliers and both topologies draw their own.
inline ExperimentResult failure_sweep(const ExperimentConfig& cfg) {
  cfg.validate();
  ExperimentResult res;
  res.rows.columns = {"s", "trial", "f", "ttl_mult", "topology", "success"};
  std::size_t cells = cfg.exponents.size() * cfg.trials;
  std::vector<std::vector<std::vector<std::string>>> out(cells);
  parallel_for(cells, [&](std::size_t c) {
    std::size_t si = c / cfg.trials, trial = c % cfg.trials;
    double s = cfg.exponents[si];
    Trial t = make_trial(cfg.n, s, s, mix_seed(cfg.seed, {3, si, trial}));
    auto cacd_hops = hop_matrix(t.cacd.graph, t.cacd.placement, Algorithm::Improved);
    auto base_hops = hop_matrix(t.baseline.graph, t.baseline.placement, Algorithm::Improved);
    for (std::size_t fi = 0; fi < cfg.failure_probs.size(); ++fi) {
      double f = cfg.failure_probs[fi];
      auto run = [&](const char* name, const Network& net, const std::vector<std::uint16_t>& hops, std::uint64_t topo) {
        Rng fail_rng(mix_seed(cfg.seed, {4, si, trial, fi, topo}));
        FailureOverlay overlay = FailureOverlay::random(net.graph, f, fail_rng);
        for (std::size_t mi = 0; mi < cfg.ttl_multipliers.size(); ++mi) {
          Rng route_rng(mix_seed(cfg.seed, {5, si, trial, fi, topo, mi}));
          double ok = weighted_success(t.demand, overlay, net.placement, hops, cfg.ttl_multipliers[mi], route_rng);
          out[c].push_back({fmt(s), fmt(trial), fmt(f), fmt(cfg.ttl_multipliers[mi]), name, fmt(ok)});
        }
      };
      run("cacd", t.cacd, cacd_hops, 0);
      run("baseline", t.baseline, base_hops, 1);
    }
  });
  res.rows.rows = detail::flatten(out);
  res.summary = detail::summarize(res.rows, {"s", "f", "ttl_mult", "topology"}, {"success"});
  return res;
}

/// EPL against network size for the first configured exponent.
inline ExperimentResult scaling_sweep(const ExperimentConfig& cfg) {
  cfg.validate();
  ExperimentResult res;
  res.rows.columns = {"n", "s", "trial", "entropy_min", "log2_n", "epl_improved", "epl_baseline"};
  double s = cfg.exponents.empty() ? 1.0 : cfg.exponents.front();
  std::size_t cells = cfg.sizes.size() * cfg.trials;
  std::vector<std::vector<std::vector<std::string>>> out(cells);
  parallel_for(cells, [&](std::size_t c) {
    std::size_t ni = c / cfg.trials, trial = c % cfg.trials;
    std::size_t n = cfg.sizes[ni];
    Trial t = make_trial(n, s, s, mix_seed(cfg.seed, {6, ni, trial}));
    double imp = epl(t.demand, t.cacd.graph, t.cacd.placement, Algorithm::Improved);
    double base = epl(t.demand, t.baseline.graph, t.baseline.placement, Algorithm::Forward);
    out[c].push_back({fmt(n), fmt(s), fmt(trial), fmt(t.entropy_min()), fmt(std::log2(static_cast<double>(n))), fmt(imp), fmt(base)});
  });
  res.rows.rows = detail::flatten(out);
  res.summary = detail::summarize(res.rows, {"n"}, {"entropy_min", "epl_improved", "epl_baseline"});
  return res;
}

/// Nodes taken in `order` until their build mass reaches `target`; nodes
/// that would push the mass over 1/2 are skipped.
inline std::vector<NodeId> mass_set(const Distribution& p, const std::vector<std::size_t>& order, double target) {
  std::vector<NodeId> set;
  u128 goal = quantize(target);
  u128 mass = 0;
  for (std::size_t v : order) {
    if (mass >= goal) break;
    if (mass + p[v].units() > kOne / 2) continue;
    mass += p[v].units();
    set.push_back(static_cast<NodeId>(v));
  }
  return set;
}

/// Cut sizes of top-activity and random node sets of fixed mass.
inline ExperimentResult cut_sweep(const ExperimentConfig& cfg) {
  cfg.validate();
  ExperimentResult res;
  res.rows.columns = {"n", "s", "trial", "set", "set_size", "p_S", "cut_cacd", "cut_baseline"};
  double s = cfg.exponents.empty() ? 1.0 : cfg.exponents.front();
  std::size_t cells = cfg.sizes.size() * cfg.trials;
  std::vector<std::vector<std::vector<std::string>>> out(cells);
  parallel_for(cells, [&](std::size_t c) {
    std::size_t ni = c / cfg.trials, trial = c % cfg.trials;
    std::size_t n = cfg.sizes[ni];
    std::uint64_t seed = mix_seed(cfg.seed, {7, ni, trial});
    Trial t = make_trial(n, s, s, seed);
    const Distribution& p = t.cacd.placement.distribution();
    Rng rng(mix_seed(seed, {1}));
    std::vector<std::size_t> by_mass(n);
    for (std::size_t i = 0; i < n; ++i) by_mass[i] = i;
    std::stable_sort(by_mass.begin(), by_mass.end(), [&p](std::size_t a, std::size_t b) { return p[a].units() > p[b].units(); });
    auto random_order = random_permutation(n, rng);
    auto emit = [&](const char* kind, const std::vector<NodeId>& set) {
      u128 mass = 0;
      for (NodeId v : set) mass += p[v].units();
      // The baseline is probed with the same node set. Its masses are uniform,
      // so the set may exceed 1/2 there; the complement has the same cut.
      const Distribution& q = t.baseline.placement.distribution();
      u128 base_mass = 0;
      for (NodeId v : set) base_mass += q[v].units();
      std::vector<NodeId> base_set = set;
      if (base_mass > kOne / 2) {
        std::vector<std::uint8_t> in(n, 0);
        for (NodeId v : set) in[v] = 1;
        base_set.clear();
        for (std::size_t v = 0; v < n; ++v)
          if (!in[v]) base_set.push_back(static_cast<NodeId>(v));
      }
      std::size_t base_cut = cut_probe(t.baseline.graph, t.baseline.placement, base_set);
      out[c].push_back({fmt(n), fmt(s), fmt(trial), kind, fmt(set.size()), fmt(to_double(mass)),
                        fmt(cut_probe(t.cacd.graph, t.cacd.placement, set)), fmt(base_cut)});
    };
    emit("top", mass_set(p, by_mass, cfg.cut_mass));
    emit("random", mass_set(p, random_order, cfg.cut_mass));
  });
  res.rows.rows = detail::flatten(out);
  res.summary = detail::summarize(res.rows, {"n", "set"}, {"set_size", "p_S", "cut_cacd", "cut_baseline"});
  return res;
}

inline ExperimentResult run_experiment(const std::string& kind, const ExperimentConfig& cfg) {
  if (kind == "epl") return epl_sweep(cfg);
  if (kind == "degree") return degree_sweep(cfg);
  if (kind == "load") return load_sweep(cfg);
  if (kind == "failures") return failure_sweep(cfg);
  if (kind == "scaling") return scaling_sweep(cfg);
  if (kind == "cuts") return cut_sweep(cfg);
  throw Error(Errc::InvalidArgument, "unknown experiment '" + kind + "'");
}

}  // namespace cacd

#endif  // CACD_EXPERIMENT_HPP
