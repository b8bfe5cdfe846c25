// Copyright 2026 The cacd Authors.
// SPDX-License-Identifier: Apache-2.0

/// \file
/// Network and routing metrics: expected path length, degree tabulation,
/// relay load, cut sizes, bridges and weighted delivery under failures.

#ifndef CACD_METRICS_HPP
#define CACD_METRICS_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "cacd/demand.hpp"
#include "cacd/error.hpp"
#include "cacd/routing.hpp"
#include "cacd/topology.hpp"

namespace cacd {

/// hops[i*n + j] for every ordered pair.
inline std::vector<std::uint16_t> hop_matrix(const DiscreteGraph& g, const Placement& pl, Algorithm algo) {
  std::size_t n = pl.size();
  std::vector<std::uint16_t> hops(n * n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) hops[i * n + j] = static_cast<std::uint16_t>(route(g, pl, static_cast<NodeId>(i), static_cast<NodeId>(j), algo).hop_count());
  return hops;
}

/// EPL = sum R_ij * hops(i,j) from a precomputed hop matrix.
inline double epl(const DemandMatrix& r, std::span<const std::uint16_t> hops) {
  std::size_t n = r.size();
  if (hops.size() != n * n) throw Error(Errc::LengthMismatch, "hop matrix size");
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (hops[i * n + j] != 0) total += r(i, j) * hops[i * n + j];
  return total;
}

/// Exact expectation of the route length over every pair with R_ij > 0.
inline double epl(const DemandMatrix& r, const DiscreteGraph& g, const Placement& pl, Algorithm algo) {
  if (r.size() != pl.size()) throw Error(Errc::LengthMismatch, "demand and placement sizes differ");
  return epl(r, hop_matrix(g, pl, algo));
}

struct NodeDegree {
  double p = 0.0;
  std::size_t out_degree = 0;
  std::size_t in_degree = 0;
};

inline std::vector<NodeDegree> degree_vs_activity(const DiscreteGraph& g, const Placement& pl) {
  std::vector<NodeDegree> out(pl.size());
  for (std::size_t i = 0; i < pl.size(); ++i) {
    auto v = static_cast<NodeId>(i);
    out[i] = {pl.distribution()[i].value(), g.out_degree(v), g.in_degree(v)};
  }
  return out;
}

/// Published closed form for the mean non-ring out-degree over a uniform
/// shift, 1 + (n-3) p_i / 2. Measured degrees run at about twice this value;
/// see expected_out_degree.
inline double lemma_out_degree(std::size_t n, double p) { return 1.0 + 0.5 * (static_cast<double>(n) - 3.0) * p; }
/// Published closed form for the mean non-ring in-degree, 1/2 + (n - 3/2) p_i.
inline double lemma_in_degree(std::size_t n, double p) { return 0.5 + (static_cast<double>(n) - 1.5) * p; }

/// Mean non-ring out-degree over a uniform shift, 2 + (n-3) p_i. The left
/// and right images each meet s_j for a set of shifts of measure
/// 2 |J ∩ half|, with |J| = p_j + p_i/2, so the pair contributes about
/// 2 p_j + p_i rather than p_j + p_i/2.
inline double expected_out_degree(std::size_t n, double p) { return 2.0 * lemma_out_degree(n, p); }
/// Mean non-ring in-degree over a uniform shift, 1 + (2n - 3) p_i.
inline double expected_in_degree(std::size_t n, double p) { return 2.0 * lemma_in_degree(n, p); }

/// Sum of R_ij over routes i -> j (i, j != k) that pass through relay k.
inline std::vector<double> relay_load(const DemandMatrix& r, const DiscreteGraph& g, const Placement& pl, Algorithm algo) {
  std::size_t n = pl.size();
  if (r.size() != n) throw Error(Errc::LengthMismatch, "demand and placement sizes differ");
  std::vector<double> load(n, 0.0);
  std::vector<std::uint32_t> seen(n, 0);
  std::uint32_t stamp = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      double w = r(i, j);
      if (w <= 0.0) continue;
      RouteTrace tr = route(g, pl, static_cast<NodeId>(i), static_cast<NodeId>(j), algo);
      ++stamp;
      for (std::size_t k = 1; k + 1 < tr.hops.size(); ++k) {
        NodeId v = tr.hops[k];
        if (v == i || v == j || seen[v] == stamp) continue;
        seen[v] = stamp;
        load[v] += w;
      }
    }
  return load;
}

/// Number of live undirected pairs with exactly one endpoint in S. The mass
/// of S under the build distribution must not exceed 1/2.
inline std::size_t cut_probe(const FailureOverlay& net, const Placement& pl, std::span<const NodeId> set) {
  const DiscreteGraph& g = net.graph();
  std::vector<std::uint8_t> in(g.size(), 0);
  u128 mass = 0;
  for (NodeId v : set) {
    if (v >= g.size()) throw Error(Errc::InvalidArgument, "node index out of range");
    if (in[v]) continue;
    in[v] = 1;
    mass += pl.distribution()[v].units();
  }
  if (mass > kOne / 2) throw Error(Errc::InvalidSet, "p_S exceeds 1/2");
  std::size_t cut = 0;
  for (std::size_t u = 0; u < g.size(); ++u) {
    if (!in[u]) continue;
    for (NodeId v : g.neighbors(static_cast<NodeId>(u)))
      if (!in[v] && net.alive(static_cast<NodeId>(u), v)) ++cut;
  }
  return cut;
}

inline std::size_t cut_probe(const DiscreteGraph& g, const Placement& pl, std::span<const NodeId> set) {
  return cut_probe(FailureOverlay(g), pl, set);
}

/// Bridges of the undirected simple graph (pairs {u,v}, u < v), iterative DFS.
inline std::vector<std::pair<NodeId, NodeId>> bridges(const DiscreteGraph& g) {
  std::size_t n = g.size();
  std::vector<std::uint32_t> disc(n, 0), low(n, 0);
  std::vector<std::pair<NodeId, NodeId>> out;
  std::uint32_t timer = 0;
  struct Frame {
    NodeId v;
    NodeId parent;
    std::size_t next;
  };
  std::vector<Frame> stack;
  for (std::size_t root = 0; root < n; ++root) {
    if (disc[root]) continue;
    stack.push_back({static_cast<NodeId>(root), static_cast<NodeId>(root), 0});
    disc[root] = low[root] = ++timer;
    while (!stack.empty()) {
      Frame& f = stack.back();
      const auto& nb = g.neighbors(f.v);
      if (f.next < nb.size()) {
        NodeId w = nb[f.next++];
        if (w == f.parent && f.v != f.parent) continue;
        if (disc[w]) {
          low[f.v] = std::min(low[f.v], disc[w]);
        } else {
          disc[w] = low[w] = ++timer;
          stack.push_back({w, f.v, 0});
        }
      } else {
        Frame done = f;
        stack.pop_back();
        if (!stack.empty()) {
          NodeId p = stack.back().v;
          low[p] = std::min(low[p], low[done.v]);
          if (low[done.v] > disc[p]) out.emplace_back(std::min(p, done.v), std::max(p, done.v));
        }
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Failure-free hop count to TTL: max(1, ceil(multiplier * hops)).
inline std::size_t ttl_for(std::size_t hops, double multiplier) {
  double t = std::ceil(multiplier * static_cast<double>(hops) - 1e-9);
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::max(0.0, t)));
}

/// 1 - sum of R_ij over undelivered pairs. `base_hops` is the failure-free
/// improved hop matrix used to set each pair's TTL.
template <class Rng>
double weighted_success(const DemandMatrix& r, const FailureOverlay& net, const Placement& pl, std::span<const std::uint16_t> base_hops,
                        double ttl_multiplier, Rng& rng) {
  std::size_t n = pl.size();
  double lost = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      double w = r(i, j);
      if (w <= 0.0) continue;
      std::size_t ttl = ttl_for(base_hops[i * n + j], ttl_multiplier);
      RouteTrace tr = route_with_failures(net, pl, static_cast<NodeId>(i), static_cast<NodeId>(j), ttl, rng);
      if (!tr.delivered()) lost += w;
    }
  return std::clamp(1.0 - lost, 0.0, 1.0);
}

struct MeanStd {
  double mean = 0.0;
  double std = 0.0;
};

/// Mean and sample standard deviation.
inline MeanStd mean_std(std::span<const double> xs) {
  MeanStd m;
  if (xs.empty()) return m;
  for (double x : xs) m.mean += x;
  m.mean /= static_cast<double>(xs.size());
  if (xs.size() > 1) {
    double ss = 0.0;
    for (double x : xs) ss += (x - m.mean) * (x - m.mean);
    m.std = std::sqrt(ss / static_cast<double>(xs.size() - 1));
  }
  return m;
}

/// Pearson correlation; 0 when either side is constant.
inline double correlation(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size() || a.empty()) return 0.0;
  double ma = mean_std(a).mean, mb = mean_std(b).mean;
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  if (saa <= 0.0 || sbb <= 0.0) return 0.0;
  return sab / std::sqrt(saa * sbb);
}

}  // namespace cacd

#endif  // CACD_METRICS_HPP
