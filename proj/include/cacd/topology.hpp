// Copyright 2026 The cacd Authors.
// SPDX-License-Identifier: Apache-2.0

/// \file
/// Discretization of the continuous graph: node placement by CDF with a
/// random shift, segment ownership, edge derivation and the uniform baseline.

#ifndef CACD_TOPOLOGY_HPP
#define CACD_TOPOLOGY_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <random>
#include <tuple>
#include <utility>
#include <vector>

#include "cacd/coding.hpp"
#include "cacd/continuum.hpp"
#include "cacd/demand.hpp"
#include "cacd/error.hpp"
#include "cacd/unit_interval.hpp"

namespace cacd {

using NodeId = std::uint32_t;

/// Uniformly random shift on the quantization grid.
template <class Rng>
UnitPoint random_shift(Rng& rng) {
  std::uniform_int_distribution<std::uint64_t> word;
  u128 bits = (static_cast<u128>(word(rng)) << 64) | word(rng);
  return UnitPoint(bits & kMask & ~(kGridUnit - 1));
}

/// Node i owns the arc [shift + F_{i-1}, shift + F_i).
class Placement {
 public:
  Placement() = default;

  Placement(Distribution p, UnitPoint shift) : dist_(std::move(p)), shift_(shift) {
    if (dist_.min().units() < (kOne >> (kMaxCodeLength - 1)))
      throw Error(Errc::PrecisionExceeded, "p_min below 2^-62");
    table_ = CodeTable(dist_, shift_);
    segments_.reserve(dist_.size());
    u128 before = 0;
    for (const Prob& q : dist_.probs()) {
      segments_.push_back(Segment{shift_.advanced(before), q.units()});
      before += q.units();
    }
    order_.resize(dist_.size());
    for (std::size_t i = 0; i < order_.size(); ++i) order_[i] = static_cast<NodeId>(i);
    std::sort(order_.begin(), order_.end(), [this](NodeId a, NodeId b) { return segments_[a].start < segments_[b].start; });
    sorted_starts_.reserve(order_.size());
    for (NodeId v : order_) sorted_starts_.push_back(segments_[v].start.units());
  }

  std::size_t size() const noexcept { return segments_.size(); }
  const Distribution& distribution() const noexcept { return dist_; }
  UnitPoint shift() const noexcept { return shift_; }
  const CodeTable& code_table() const noexcept { return table_; }
  const Segment& segment(std::size_t i) const { return segments_[i]; }
  UnitPoint point(std::size_t i) const { return segments_[i].start; }
  const BitString& cw(std::size_t i) const { return table_[i].cw; }
  int code_length(std::size_t i) const { return table_[i].length; }

  /// The unique node whose half-open segment contains y.
  NodeId covers(UnitPoint y) const noexcept {
    auto it = std::upper_bound(sorted_starts_.begin(), sorted_starts_.end(), y.units());
    if (it == sorted_starts_.begin()) return order_.back();
    return order_[static_cast<std::size_t>(it - sorted_starts_.begin()) - 1];
  }

  /// Nodes whose segments intersect the arc, in cyclic order from its start.
  template <class F>
  void for_each_intersecting(const Segment& arc, F&& f) const {
    if (arc.length == 0) return;
    std::size_t k = position(covers(arc.start));
    for (std::size_t step = 0; step < order_.size(); ++step) {
      NodeId v = order_[(k + step) % order_.size()];
      if (step > 0 && !arc.contains(segments_[v].start)) break;
      f(v);
    }
  }

 private:
  std::size_t position(NodeId v) const noexcept {
    auto it = std::lower_bound(sorted_starts_.begin(), sorted_starts_.end(), segments_[v].start.units());
    return static_cast<std::size_t>(it - sorted_starts_.begin());
  }

  Distribution dist_;
  UnitPoint shift_;
  CodeTable table_;
  std::vector<Segment> segments_;
  std::vector<NodeId> order_;          // nodes sorted by segment start
  std::vector<u128> sorted_starts_;
};

inline Placement place(Distribution p, UnitPoint shift) { return Placement(std::move(p), shift); }

enum class EdgeType : std::uint8_t { Left, Right, Ring };

constexpr const char* edge_type_name(EdgeType t) noexcept {
  switch (t) {
    case EdgeType::Left: return "left";
    case EdgeType::Right: return "right";
    case EdgeType::Ring: return "ring";
  }
  return "?";
}

struct Edge {
  NodeId src;
  NodeId dst;
  EdgeType type;

  auto operator<=>(const Edge&) const = default;
};

/// Directed typed edges plus the undirected neighbourhood used for routing
/// and failures. Immutable after construction.
class DiscreteGraph {
 public:
  DiscreteGraph() = default;

  DiscreteGraph(std::size_t n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
    std::sort(edges_.begin(), edges_.end());
    edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
    out_.resize(n_);
    in_.resize(n_);
    neighbors_.resize(n_);
    for (std::size_t e = 0; e < edges_.size(); ++e) {
      const Edge& ed = edges_[e];
      if (ed.src >= n_ || ed.dst >= n_) throw Error(Errc::InvalidArgument, "edge endpoint out of range");
      if (ed.src == ed.dst) throw Error(Errc::InvalidArgument, "self-loop");
      out_[ed.src].push_back(e);
      in_[ed.dst].push_back(e);
      neighbors_[ed.src].push_back(ed.dst);
      neighbors_[ed.dst].push_back(ed.src);
    }
    for (auto& nb : neighbors_) {
      std::sort(nb.begin(), nb.end());
      nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
    }
    // Undirected pair ids: pair (u,v) with u < v, numbered in order.
    pair_offset_.resize(n_ + 1, 0);
    for (std::size_t u = 0; u < n_; ++u) {
      std::size_t higher = 0;
      for (NodeId v : neighbors_[u])
        if (v > u) ++higher;
      pair_offset_[u + 1] = pair_offset_[u] + higher;
    }
  }

  std::size_t size() const noexcept { return n_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const Edge& edge(std::size_t e) const { return edges_[e]; }
  const std::vector<std::size_t>& out_edges(NodeId v) const { return out_[v]; }
  const std::vector<std::size_t>& in_edges(NodeId v) const { return in_[v]; }

  /// Distinct nodes joined to v by an edge of any type or direction, sorted.
  const std::vector<NodeId>& neighbors(NodeId v) const { return neighbors_[v]; }

  bool adjacent(NodeId u, NodeId v) const {
    const auto& nb = neighbors_[u];
    return std::binary_search(nb.begin(), nb.end(), v);
  }

  std::size_t pair_count() const noexcept { return pair_offset_.back(); }

  /// Index of the undirected pair {u,v}; requires adjacent(u, v).
  std::size_t pair_id(NodeId u, NodeId v) const {
    if (u > v) std::swap(u, v);
    const auto& nb = neighbors_[u];
    auto first_higher = std::upper_bound(nb.begin(), nb.end(), u);
    auto it = std::lower_bound(first_higher, nb.end(), v);
    return pair_offset_[u] + static_cast<std::size_t>(it - first_higher);
  }

  bool has_edge(NodeId src, NodeId dst, EdgeType type) const {
    return std::binary_search(edges_.begin(), edges_.end(), Edge{src, dst, type});
  }

  std::size_t count(EdgeType type) const {
    return static_cast<std::size_t>(std::count_if(edges_.begin(), edges_.end(), [type](const Edge& e) { return e.type == type; }));
  }

  /// Ordered pairs (src, dst) joined by a Left or Right edge. A pair that
  /// carries both types counts once.
  std::size_t non_ring_edge_count() const {
    std::size_t pairs = 0;
    for (std::size_t v = 0; v < n_; ++v) pairs += out_degree(static_cast<NodeId>(v));
    return pairs;
  }

  /// Distinct non-ring out-neighbours (union of Left and Right targets).
  std::size_t out_degree(NodeId v) const { return distinct_non_ring(out_[v], true); }
  /// Distinct non-ring in-neighbours.
  std::size_t in_degree(NodeId v) const { return distinct_non_ring(in_[v], false); }

 private:
  std::size_t distinct_non_ring(const std::vector<std::size_t>& list, bool use_dst) const {
    std::vector<NodeId> ids;
    for (std::size_t e : list) {
      if (edges_[e].type == EdgeType::Ring) continue;
      ids.push_back(use_dst ? edges_[e].dst : edges_[e].src);
    }
    std::sort(ids.begin(), ids.end());
    return static_cast<std::size_t>(std::unique(ids.begin(), ids.end()) - ids.begin());
  }

  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::size_t>> out_;
  std::vector<std::vector<std::size_t>> in_;
  std::vector<std::vector<NodeId>> neighbors_;
  std::vector<std::size_t> pair_offset_;
};

/// Left and Right edges from every segment to the segments its images
/// meet, plus the ring (i, i+1 mod n). Self-loops are dropped.
inline DiscreteGraph build(const Placement& pl, bool with_ring = true) {
  std::vector<Edge> edges;
  std::size_t n = pl.size();
  for (std::size_t i = 0; i < n; ++i) {
    auto src = static_cast<NodeId>(i);
    auto add = [&](EdgeType type) {
      return [&edges, src, type](NodeId dst) {
        if (dst != src) edges.push_back(Edge{src, dst, type});
      };
    };
    for (const Segment& arc : image_left(pl.segment(i))) pl.for_each_intersecting(arc, add(EdgeType::Left));
    for (const Segment& arc : image_right(pl.segment(i))) pl.for_each_intersecting(arc, add(EdgeType::Right));
  }
  if (with_ring && n >= 2)
    for (std::size_t i = 0; i < n; ++i) edges.push_back(Edge{static_cast<NodeId>(i), static_cast<NodeId>((i + 1) % n), EdgeType::Ring});
  return DiscreteGraph(n, std::move(edges));
}

struct Network {
  Placement placement;
  DiscreteGraph graph;
};

/// The same pipeline over the uniform distribution.
inline Network build_baseline(std::size_t n, UnitPoint shift) {
  if (n < 2) throw Error(Errc::InvalidArgument, "baseline needs n >= 2");
  Placement pl(Distribution::uniform(n), shift);
  DiscreteGraph g = build(pl);
  return {std::move(pl), std::move(g)};
}

inline Network build_network(Distribution p, UnitPoint shift) {
  Placement pl(std::move(p), shift);
  DiscreteGraph g = build(pl);
  return {std::move(pl), std::move(g)};
}

struct SmoothnessReport {
  double rho = 1.0;
  std::vector<double> rho_i;
};

namespace detail {

inline double ratio(u128 a, u128 b) {
  return static_cast<double>(static_cast<long double>(a) / static_cast<long double>(b));
}

}  // namespace detail

inline SmoothnessReport smoothness(const Placement& pl) {
  u128 lo = pl.distribution().min().units();
  SmoothnessReport r;
  r.rho_i.reserve(pl.size());
  for (std::size_t i = 0; i < pl.size(); ++i) r.rho_i.push_back(detail::ratio(pl.segment(i).length, lo));
  r.rho = detail::ratio(pl.distribution().max().units(), lo);
  return r;
}

/// Per-trial failure state over undirected pairs; the graph stays shared.
/// Sorted live adjacency is kept alongside so routing never rescans dead links.
class FailureOverlay {
 public:
  explicit FailureOverlay(const DiscreteGraph& g) : graph_(&g), dead_(g.pair_count(), 0) {
    live_.reserve(g.size());
    for (std::size_t v = 0; v < g.size(); ++v) live_.push_back(g.neighbors(static_cast<NodeId>(v)));
  }

  template <class Rng>
  static FailureOverlay random(const DiscreteGraph& g, double f, Rng& rng) {
    FailureOverlay o(g);
    std::bernoulli_distribution fail(f);
    for (auto& d : o.dead_) d = fail(rng) ? 1 : 0;
    for (std::size_t u = 0; u < g.size(); ++u) {
      auto& nb = o.live_[u];
      std::erase_if(nb, [&](NodeId v) { return o.dead_[g.pair_id(static_cast<NodeId>(u), v)] != 0; });
    }
    return o;
  }

  const DiscreteGraph& graph() const noexcept { return *graph_; }

  void fail(NodeId u, NodeId v) {
    auto& d = dead_[graph_->pair_id(u, v)];
    if (d) return;
    d = 1;
    drop(u, v);
    drop(v, u);
  }
  void fail_all_of(NodeId v) {
    for (NodeId u : graph_->neighbors(v)) fail(u, v);
  }

  bool alive(NodeId u, NodeId v) const { return std::binary_search(live_[u].begin(), live_[u].end(), v); }
  const std::vector<NodeId>& live_neighbors(NodeId v) const { return live_[v]; }

  std::size_t failed_count() const noexcept { return static_cast<std::size_t>(std::count(dead_.begin(), dead_.end(), 1)); }

 private:
  void drop(NodeId u, NodeId v) {
    auto& nb = live_[u];
    auto it = std::lower_bound(nb.begin(), nb.end(), v);
    if (it != nb.end() && *it == v) nb.erase(it);
  }

  const DiscreteGraph* graph_;
  std::vector<std::uint8_t> dead_;
  std::vector<std::vector<NodeId>> live_;
};

}  // namespace cacd

#endif  // CACD_TOPOLOGY_HPP
