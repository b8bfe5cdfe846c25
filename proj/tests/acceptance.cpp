// Copyright 2026 The cacd Authors.
// SPDX-License-Identifier: Apache-2.0

// Acceptance run. Each check prints one PASS/FAIL line with its measured
// values and wall time; the exit status is nonzero if any check fails.
// Pass a list of check numbers to run a subset, e.g. `cacd_acceptance 1 2 11`.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <mutex>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cacd/cacd.hpp"

using namespace cacd;

namespace {

struct Check {
  bool pass = true;
  std::string detail;
};

std::string fixed(double v, int places = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", places, v);
  return buf;
}

Distribution table1() {
  std::vector<u128> u;
  for (const char* p : {"0.1", "0.15", "0.2", "0.25", "0.1", "0.2"}) u.push_back(parse_fraction(p));
  absorb_residual(u);
  return Distribution::from_units(std::move(u));
}

template <class Rng>
Distribution random_distribution(Rng& rng, std::size_t n, double decades) {
  std::uniform_real_distribution<double> u(0.0, decades);
  std::vector<double> w(n);
  for (auto& x : w) x = std::pow(10.0, -u(rng));
  return Distribution::from_weights(w);
}

// Summary column by group key, parsed back to numbers.
std::map<std::vector<std::string>, double> summary_column(const Table& t, const std::vector<std::string>& keys, const std::string& col) {
  std::vector<std::size_t> kc;
  for (const auto& k : keys) kc.push_back(t.column(k));
  std::size_t c = t.column(col);
  std::map<std::vector<std::string>, double> out;
  for (const auto& row : t.rows) {
    std::vector<std::string> key;
    for (std::size_t k : kc) key.push_back(row[k]);
    out[key] = std::stod(row[c]);
  }
  return out;
}

Check table1_golden() {
  Placement pl(table1(), UnitPoint{});
  const char* f[] = {"0.1", "0.25", "0.45", "0.7", "0.8", "1.0"};
  const char* fbar[] = {"0.05", "0.175", "0.35", "0.575", "0.75", "0.9"};
  const char* fbar_bits[] = {"000011", "001011", "010110", "100100", "110000", "111001"};
  const int len[] = {5, 4, 4, 3, 5, 4};
  const char* cw[] = {"00001", "0010", "0101", "100", "11000", "1110"};
  const char* x[] = {"0.0", "0.1", "0.25", "0.45", "0.7", "0.8"};
  Check o;
  for (std::size_t i = 0; i < 6; ++i) {
    const CodeEntry& e = pl.code_table()[i];
    bool row = to_decimal(e.cumulative) == f[i] && to_decimal(e.midpoint.units()) == fbar[i] &&
               to_binary(e.midpoint.units(), 6) == std::string("0.") + fbar_bits[i] && e.length == len[i] && e.cw.str() == cw[i] &&
               to_decimal(pl.point(i).units()) == x[i];
    if (!row) {
      o.pass = false;
      o.detail += "row " + std::to_string(i + 1) + " differs; ";
    }
  }
  if (o.pass) o.detail = "6 rows match";
  return o;
}

Check routing_example() {
  Network net = build_network(table1(), UnitPoint{});
  RouteTrace tr = route_forward(net.graph, net.placement, 5, 3);
  std::string hops;
  for (NodeId v : tr.hops) hops += " u" + std::to_string(v + 1);
  return {tr.hops == std::vector<NodeId>{5, 2, 1, 3}, "route" + hops};
}

Check lemma_bounds() {
  std::mt19937_64 rng(20260101);
  std::size_t routes = 0, violations = 0;
  for (int k = 0; k < 200; ++k) {
    std::size_t n = 2 + rng() % 63;
    Network net = build_network(random_distribution(rng, n, 3.0), random_shift(rng));
    const auto& [pl, g] = net;
    for (NodeId i = 0; i < n; ++i)
      for (NodeId j = 0; j < n; ++j) {
        auto f = route_forward(g, pl, i, j);
        auto b = route_backward(g, pl, i, j);
        auto m = route_improved(g, pl, i, j);
        std::size_t li = static_cast<std::size_t>(pl.code_length(i)), lj = static_cast<std::size_t>(pl.code_length(j));
        bool ok = f.hops.back() == j && b.hops.back() == j && m.hops.back() == j && f.hop_count() <= lj && b.hop_count() <= li &&
                  m.hop_count() <= std::min(li, lj) && check_trace(g, f).empty() && check_trace(g, b).empty();
        routes += 3;
        if (!ok) ++violations;
      }
  }
  return {violations == 0, std::to_string(routes) + " routes, " + std::to_string(violations) + " violations"};
}

Check epl_entropy_band() {
  ExperimentConfig cfg = default_config("epl");
  cfg.seed = 4;
  ExperimentResult r = epl_sweep(cfg);
  auto h = summary_column(r.summary, {"s"}, "entropy_min_mean");
  auto e = summary_column(r.summary, {"s"}, "epl_improved_mean");
  Check o;
  std::ostringstream os;
  for (const auto& [key, hv] : h) {
    double ev = e[key];
    bool ok = ev < hv + 2 && ev >= hv - 0.5;
    o.pass = o.pass && ok;
    os << "s=" << key[0] << ":" << fixed(ev - hv, 3) << (ok ? "" : "!") << ' ';
  }
  o.detail = "EPL-H per s: " + os.str();
  return o;
}

Check sfe_bounds() {
  std::mt19937_64 rng(5);
  double worst_low = 1e9, worst_high = -1e9;
  bool pass = true;
  for (int k = 0; k < 1000; ++k) {
    std::size_t n = 1 + rng() % 500;
    Distribution p = k % 4 == 0 ? (n >= 2 ? zipf(n, 0.25 * static_cast<double>(rng() % 13)) : Distribution::uniform(1))
                                : random_distribution(rng, n, 1.0 + static_cast<double>(rng() % 6));
    double h = entropy(p), l = expected_code_length(p);
    worst_low = std::min(worst_low, l - h);
    worst_high = std::max(worst_high, l - h);
    if (!(l >= h + 1 - 1e-9 && l < h + 2 + 1e-9)) pass = false;
  }
  return {pass, "L-H in [" + fixed(worst_low, 6) + ", " + fixed(worst_high, 6) + "]"};
}

Check sparsity_degrees() {
  std::mt19937_64 rng(6);
  std::size_t instances = 0, bad = 0;
  double max_edge_ratio = 0;
  for (int k = 0; k < 300; ++k) {
    std::size_t n = 2 + rng() % 400;
    Distribution p = k % 2 ? random_distribution(rng, n, 4.0) : zipf(n, 0.25 * static_cast<double>(rng() % 9));
    Placement pl(p, random_shift(rng));
    DiscreteGraph g = build(pl);
    ++instances;
    max_edge_ratio = std::max(max_edge_ratio, static_cast<double>(g.non_ring_edge_count()) / static_cast<double>(3 * n - 1));
    bool ok = g.non_ring_edge_count() <= 3 * n - 1;
    auto rho = smoothness(pl);
    for (NodeId v = 0; v < n; ++v) {
      ok = ok && static_cast<double>(g.out_degree(v)) <= rho.rho_i[v] + 4 + 1e-9;
      ok = ok && static_cast<double>(g.in_degree(v)) <= std::ceil(2 * rho.rho_i[v] - 1e-9) + 1;
    }
    if (!ok) ++bad;
  }
  return {bad == 0, std::to_string(instances) + " instances, " + std::to_string(bad) + " violating; max edges/(3n-1) = " + fixed(max_edge_ratio, 3)};
}

Check expected_degree() {
  const std::size_t n = 300;
  const int shifts = 2000;
  Distribution p = zipf(n, 1.0);
  std::vector<double> out(n, 0.0);
  std::mutex mu;
  parallel_for(shifts, [&](std::size_t k) {
    Rng rng(mix_seed(7, {k}));
    DiscreteGraph g = build(Placement(p, random_shift(rng)));
    std::lock_guard<std::mutex> lock(mu);
    for (NodeId v = 0; v < n; ++v) out[v] += static_cast<double>(g.out_degree(v));
  });
  double worst = 0, worst_corrected = 0;
  std::size_t checked = 0;
  for (NodeId v = 0; v < n; ++v) {
    double pv = p[v].value();
    if (pv < 0.01) continue;
    double mean = out[v] / shifts;
    worst = std::max(worst, std::abs(mean - lemma_out_degree(n, pv)) / lemma_out_degree(n, pv));
    worst_corrected = std::max(worst_corrected, std::abs(mean - expected_out_degree(n, pv)) / expected_out_degree(n, pv));
    ++checked;
  }
  return {worst <= 0.05, std::to_string(checked) + " nodes with p >= 0.01, worst relative error vs 1+(n-3)p/2 " + fixed(100 * worst, 2) +
                             "% (vs 2+(n-3)p: " + fixed(100 * worst_corrected, 2) + "%)"};
}

Check robustness() {
  Check o;
  std::size_t with_bridges = 0;
  for (std::uint64_t k = 0; k < 100; ++k) {
    Trial t = make_trial(300, 1.0, 1.0, mix_seed(8, {k}), false);
    if (!bridges(t.cacd.graph).empty()) ++with_bridges;
  }
  ExperimentConfig cfg = default_config("failures");
  cfg.seed = 8;
  cfg.ttl_multipliers = {3.0};
  ExperimentResult r = failure_sweep(cfg);
  auto mean = summary_column(r.summary, {"f", "topology"}, "success_mean");
  auto at = [&](const std::string& f, const char* topo) { return mean.at({f, topo}); };
  double s10 = at("0.1", "cacd"), s15 = at("0.15", "cacd");
  bool beats = true;
  std::ostringstream os;
  for (double f : cfg.failure_probs) {
    if (f == 0.0) continue;
    std::string key = fmt(f);
    double c = at(key, "cacd"), b = at(key, "baseline");
    if (!(c > b)) beats = false;
    os << key << ":" << fixed(c, 3) << "/" << fixed(b, 3) << (c > b ? "" : "!") << ' ';
  }
  o.pass = with_bridges == 0 && s10 > 0.8 - 0.05 && s15 > 0.7 - 0.05 && beats;
  o.detail = std::to_string(with_bridges) + "/100 with bridges; success f=0.10 " + fixed(s10, 3) + " (>0.75), f=0.15 " + fixed(s15, 3) +
             " (>0.65); cacd/baseline " + os.str();
  return o;
}

Check scaling_trend() {
  ExperimentConfig cfg = default_config("scaling");
  cfg.seed = 9;
  cfg.sizes = {100, 200, 400, 800};
  ExperimentResult r = scaling_sweep(cfg);
  auto h = summary_column(r.summary, {"n"}, "entropy_min_mean");
  auto e = summary_column(r.summary, {"n"}, "epl_improved_mean");
  auto b = summary_column(r.summary, {"n"}, "epl_baseline_mean");
  Check o;
  std::ostringstream os;
  double prev = -1;
  for (std::size_t n : cfg.sizes) {
    std::vector<std::string> key{fmt(n)};
    double gap = e[key] - h[key];
    bool gap_ok = gap >= 1 && gap <= 2, grows = b[key] > prev;
    prev = b[key];
    o.pass = o.pass && gap_ok && grows;
    os << "n=" << n << ": EPL-H " << fixed(gap, 3) << (gap_ok ? "" : "!") << ", baseline " << fixed(b[key], 3) << (grows ? "" : "!") << "; ";
  }
  o.detail = os.str();
  return o;
}

Check cut_trend() {
  ExperimentConfig cfg = default_config("cuts");
  cfg.seed = 10;
  cfg.sizes = {100, 200, 400};
  ExperimentResult r = cut_sweep(cfg);
  auto cut = summary_column(r.summary, {"n", "set"}, "cut_cacd_mean");
  auto mass = summary_column(r.summary, {"n", "set"}, "p_S_mean");
  Check o;
  std::ostringstream os;
  double prev = 0;
  std::size_t prev_n = 0;
  for (std::size_t n : cfg.sizes) {
    std::vector<std::string> key{fmt(n), "random"};
    double c = cut[key];
    os << "n=" << n << ": cut " << fixed(c, 1) << " (p_S " << fixed(mass[key], 3) << ")";
    if (prev_n) {
      double ratio = c / prev;
      double need = 0.8 * static_cast<double>(n) / static_cast<double>(prev_n);
      o.pass = o.pass && ratio >= need;
      os << " ratio " << fixed(ratio, 3) << (ratio >= need ? "" : "!");
    }
    os << "; ";
    prev = c;
    prev_n = n;
  }
  o.detail = os.str();
  return o;
}

unsigned reverse3(unsigned x) { return ((x & 1) << 2) | (x & 2) | ((x >> 2) & 1); }

Check de_bruijn() {
  DiscreteGraph g = build(Placement(Distribution::uniform(8), UnitPoint{}), false);
  // Nodes relabelled by bit reversal; loops of the de Bruijn graph have no counterpart.
  std::set<std::pair<unsigned, unsigned>> got, want;
  for (const Edge& e : g.edges()) got.emplace(reverse3(e.src), reverse3(e.dst));
  for (unsigned v = 0; v < 8; ++v)
    for (unsigned b = 0; b < 2; ++b) {
      unsigned w = ((v << 1) | b) & 7;
      if (w != v) want.emplace(v, w);
    }
  return {got == want && g.edges().size() == 14, std::to_string(got.size()) + " distinct arcs, de Bruijn(2,3) has " + std::to_string(want.size()) + " non-loop arcs"};
}

struct Criterion {
  int id;
  const char* name;
  double limit_seconds;  // 0 = no hard limit
  std::function<Check()> run;
};

}  // namespace

int main(int argc, char** argv) {
  std::vector<Criterion> all = {
      {1, "code table golden", 0.001, table1_golden},
      {2, "forward routing example", 0.001, routing_example},
      {3, "hop bounds, exhaustive", 10.0, lemma_bounds},
      {4, "EPL within entropy band", 0, epl_entropy_band},
      {5, "SFE length bounds", 5.0, sfe_bounds},
      {6, "sparsity and degree bounds", 0, sparsity_degrees},
      {7, "expected out-degree", 0, expected_degree},
      {8, "robustness", 0, robustness},
      {9, "scaling trend", 0, scaling_trend},
      {10, "cut trend", 0, cut_trend},
      {11, "de Bruijn isomorphism", 1.0, de_bruijn},
  };
  std::set<int> only;
  for (int a = 1; a < argc; ++a) only.insert(std::stoi(argv[a]));

  int failed = 0;
  for (const auto& c : all) {
    if (!only.empty() && !only.count(c.id)) continue;
    auto t0 = std::chrono::steady_clock::now();
    Check o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool in_time = c.limit_seconds == 0 || secs < c.limit_seconds;
    bool pass = o.pass && in_time;
    if (!pass) ++failed;
    std::printf("[%s] %2d %-28s %9.3fs  %s%s\n", pass ? "PASS" : "FAIL", c.id, c.name, secs, o.detail.c_str(),
                in_time ? "" : " (over time limit)");
    std::fflush(stdout);
  }
  std::printf("%d criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}
