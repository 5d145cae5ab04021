#pragma once

#include <utility>
#include <vector>

#include "qcbm/distribution.hpp"
#include "qcbm/gates.hpp"

namespace qcbm {

// Routed circuit plus the final wire assignment: layout[logical] is the
// physical wire holding logical qubit `logical` at measurement. Routing
// never swaps back, so the relabeling is undone on measured distributions
// instead.
struct RoutedCircuit {
  Circuit circuit;
  std::vector<int> layout;

  bool is_identity_layout() const;
};

// Greedy shortest-path router: SWAPs walk one endpoint of each
// non-conformant two-qubit gate along a BFS path until the pair is
// coupled. A circuit that already fits the coupling is returned unchanged.
RoutedCircuit route(const Circuit& circuit,
                    const std::vector<std::pair<int, int>>& coupling);

// Map a measured physical-wire distribution back to logical qubit order.
ProbabilityDistribution undo_layout(const ProbabilityDistribution& physical,
                                    const std::vector<int>& layout);
CountVector undo_layout(const CountVector& physical,
                        const std::vector<int>& layout);

// CNOT gates plus 3 per SWAP.
int cnot_count(const Circuit& circuit);

}  // namespace qcbm
