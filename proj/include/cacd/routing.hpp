// Copyright 2026 The cacd Authors.
// SPDX-License-Identifier: Apache-2.0

/// \file
/// Greedy routing over a discretized network.
///
/// Forward routing starts at the source codeword and prepends destination
/// bits, least significant first; after l_dst steps the point begins with
/// cw_dst and lies in the destination's code segment. Backward routing
/// starts at cw_src ⊕ cw_dst and strips source bits from the front; after
/// l_src steps only cw_dst remains. Each step moves to the node covering the
/// new point, which is always a neighbour of the node covering the old one.

#ifndef CACD_ROUTING_HPP
#define CACD_ROUTING_HPP

#include <cstddef>
#include <random>
#include <string>
#include <vector>

#include "cacd/continuum.hpp"
#include "cacd/error.hpp"
#include "cacd/topology.hpp"

namespace cacd {

enum class RouteMode : std::uint8_t { Forward, Backward };

constexpr const char* mode_name(RouteMode m) noexcept { return m == RouteMode::Forward ? "forward" : "backward"; }

enum class Algorithm : std::uint8_t { Forward, Backward, Improved };

enum class Outcome : std::uint8_t { Delivered, DroppedTtl, DroppedIsolated };

constexpr const char* outcome_name(Outcome o) noexcept {
  switch (o) {
    case Outcome::Delivered: return "delivered";
    case Outcome::DroppedTtl: return "dropped_ttl";
    case Outcome::DroppedIsolated: return "dropped_isolated";
  }
  return "?";
}

struct MessageHeader {
  BitString src_cw;
  BitString dst_cw;
  int t = 0;
  RouteMode mode = RouteMode::Forward;

  /// The point the message must reach after step t+1.
  UnitPoint next_target() const {
    if (mode == RouteMode::Forward) return walk(dst_cw.suffix(t + 1), src_cw.as_point());
    return concat(src_cw.suffix(src_cw.size() - t - 1), dst_cw);
  }

  int step_bound() const noexcept { return mode == RouteMode::Forward ? dst_cw.size() : src_cw.size(); }
};

struct RouteTrace {
  std::vector<NodeId> hops;
  RouteMode mode = RouteMode::Forward;
  std::size_t recoveries = 0;
  Outcome outcome = Outcome::Delivered;

  std::size_t hop_count() const noexcept { return hops.empty() ? 0 : hops.size() - 1; }
  bool delivered() const noexcept { return outcome == Outcome::Delivered; }
};

/// Forward iff the destination codeword is not longer than the source's.
inline RouteMode improved_mode(const Placement& pl, NodeId src, NodeId dst) {
  return pl.code_length(dst) <= pl.code_length(src) ? RouteMode::Forward : RouteMode::Backward;
}

namespace detail {

inline void check_nodes(const Placement& pl, NodeId src, NodeId dst) {
  if (src >= pl.size() || dst >= pl.size()) throw Error(Errc::InvalidArgument, "node index out of range");
}

// Failure-free greedy route; the graph is only consulted by trace checks.
inline RouteTrace route_plain(const Placement& pl, NodeId src, NodeId dst, RouteMode mode) {
  check_nodes(pl, src, dst);
  RouteTrace tr;
  tr.mode = mode;
  tr.hops.push_back(src);
  NodeId cur = src;
  MessageHeader h{pl.cw(src), pl.cw(dst), 0, mode};
  int bound = h.step_bound();
  while (cur != dst && h.t < bound) {
    NodeId next = pl.covers(h.next_target());
    ++h.t;
    if (next != cur) {
      tr.hops.push_back(next);
      cur = next;
    }
  }
  return tr;
}

}  // namespace detail

inline RouteTrace route_forward(const DiscreteGraph&, const Placement& pl, NodeId src, NodeId dst) {
  return detail::route_plain(pl, src, dst, RouteMode::Forward);
}

inline RouteTrace route_backward(const DiscreteGraph&, const Placement& pl, NodeId src, NodeId dst) {
  return detail::route_plain(pl, src, dst, RouteMode::Backward);
}

inline RouteTrace route_improved(const DiscreteGraph&, const Placement& pl, NodeId src, NodeId dst) {
  detail::check_nodes(pl, src, dst);
  return detail::route_plain(pl, src, dst, improved_mode(pl, src, dst));
}

inline RouteTrace route(const DiscreteGraph& g, const Placement& pl, NodeId src, NodeId dst, Algorithm algo) {
  switch (algo) {
    case Algorithm::Forward: return route_forward(g, pl, src, dst);
    case Algorithm::Backward: return route_backward(g, pl, src, dst);
    case Algorithm::Improved: break;
  }
  return route_improved(g, pl, src, dst);
}

/// Improved routing with random recovery. When the next-hop pair is dead the
/// message jumps to a uniformly random live neighbour and starts over from
/// there with a fresh header. Every traversal costs one unit of TTL.
template <class Rng>
RouteTrace route_with_failures(const FailureOverlay& net, const Placement& pl, NodeId src, NodeId dst, std::size_t ttl, Rng& rng) {
  if (ttl < 1) throw Error(Errc::InvalidArgument, "ttl must be >= 1");
  detail::check_nodes(pl, src, dst);
  RouteTrace tr;
  tr.hops.push_back(src);
  NodeId cur = src;
  MessageHeader h{pl.cw(src), pl.cw(dst), 0, improved_mode(pl, src, dst)};
  tr.mode = h.mode;
  while (cur != dst) {
    if (ttl == 0) {
      tr.outcome = Outcome::DroppedTtl;
      return tr;
    }
    if (h.t >= h.step_bound()) throw Error(Errc::InvalidArgument, "greedy route overran its codeword bound");
    NodeId next = pl.covers(h.next_target());
    if (next == cur) {
      ++h.t;
      continue;
    }
    if (net.alive(cur, next)) {
      ++h.t;
    } else {
      const auto& live = net.live_neighbors(cur);
      if (live.empty()) {
        tr.outcome = Outcome::DroppedIsolated;
        return tr;
      }
      std::uniform_int_distribution<std::size_t> pick(0, live.size() - 1);
      next = live[pick(rng)];
      ++tr.recoveries;
      h = MessageHeader{pl.cw(next), pl.cw(dst), 0, improved_mode(pl, next, dst)};
    }
    tr.hops.push_back(next);
    cur = next;
    --ttl;
  }
  tr.outcome = Outcome::Delivered;
  return tr;
}

/// Empty string when every consecutive hop pair is a live edge of the graph.
inline std::string check_trace(const FailureOverlay& net, const RouteTrace& tr) {
  for (std::size_t k = 1; k < tr.hops.size(); ++k) {
    NodeId a = tr.hops[k - 1];
    NodeId b = tr.hops[k];
    if (!net.alive(a, b)) return "hop " + std::to_string(k) + " (" + std::to_string(a) + "->" + std::to_string(b) + ") is not a live edge";
  }
  return {};
}

inline std::string check_trace(const DiscreteGraph& g, const RouteTrace& tr) { return check_trace(FailureOverlay(g), tr); }

}  // namespace cacd

#endif  // CACD_ROUTING_HPP
