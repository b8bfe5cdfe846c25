// Copyright 2026 The cacd Authors.
// SPDX-License-Identifier: Apache-2.0

// Builds the six-node example network, prints its code table and edges, and
// routes u6 -> u4 with forward routing and u4 -> u6 with backward routing.

#include <iostream>
#include <vector>

#include "cacd/cacd.hpp"
#include "cacd/io.hpp"

int main() {
  using namespace cacd;
  json probs = json::array({"0.1", "0.15", "0.2", "0.25", "0.1", "0.2"});
  Network net = build_network(distribution_from_json(probs), UnitPoint{});

  std::cout << code_table_csv(net.placement) << '\n' << edges_csv(net.graph) << '\n';

  auto show = [](const char* label, const RouteTrace& tr) {
    std::cout << label << ':';
    for (NodeId v : tr.hops) std::cout << " u" << v + 1;
    std::cout << "  (" << tr.hop_count() << " hops)\n";
  };
  show("forward u6->u4", route_forward(net.graph, net.placement, 5, 3));
  show("backward u4->u6", route_backward(net.graph, net.placement, 3, 5));
  show("improved u1->u4", route_improved(net.graph, net.placement, 0, 3));
}
