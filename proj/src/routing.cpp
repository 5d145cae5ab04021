#include "qcbm/routing.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

#include "qcbm/basis.hpp"
#include "qcbm/device.hpp"

namespace qcbm {

namespace {

int coupling_qubit_count(const std::vector<std::pair<int, int>>& coupling,
                         int circuit_qubits) {
  int n = circuit_qubits;
  for (const auto& [a, b] : coupling) n = std::max({n, a + 1, b + 1});
  return n;
}

std::vector<int> bfs_path(const std::vector<std::pair<int, int>>& coupling,
                          int n_qubits, int from, int to) {
  std::vector<int> parent(static_cast<std::size_t>(n_qubits), -1);
  std::deque<int> queue = {from};
  parent[static_cast<std::size_t>(from)] = from;
  while (!queue.empty()) {
    const int q = queue.front();
    queue.pop_front();
    if (q == to) break;
    for (const auto& [a, b] : coupling) {
      const int other = a == q ? b : (b == q ? a : -1);
      if (other >= 0 && parent[static_cast<std::size_t>(other)] < 0) {
        parent[static_cast<std::size_t>(other)] = q;
        queue.push_back(other);
      }
    }
  }
  if (parent[static_cast<std::size_t>(to)] < 0) {
    throw RoutingError("routing: qubits not connected in coupling graph");
  }
  std::vector<int> path = {to};
  while (path.back() != from) {
    path.push_back(parent[static_cast<std::size_t>(path.back())]);
  }
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace

bool RoutedCircuit::is_identity_layout() const {
  for (std::size_t q = 0; q < layout.size(); ++q) {
    if (layout[q] != static_cast<int>(q)) return false;
  }
  return true;
}

RoutedCircuit route(const Circuit& circuit,
                    const std::vector<std::pair<int, int>>& coupling) {
  const int n = coupling_qubit_count(coupling, circuit.n_qubits);
  if (!coupling_connected(coupling, n)) {
    throw RoutingError("routing: coupling graph disconnected");
  }

  std::vector<int> phys(static_cast<std::size_t>(n));  // logical -> physical
  std::iota(phys.begin(), phys.end(), 0);
  std::vector<int> logical = phys;  // physical -> logical

  auto swap_physical = [&](int pa, int pb) {
    const int la = logical[static_cast<std::size_t>(pa)];
    const int lb = logical[static_cast<std::size_t>(pb)];
    std::swap(logical[static_cast<std::size_t>(pa)],
              logical[static_cast<std::size_t>(pb)]);
    phys[static_cast<std::size_t>(la)] = pb;
    phys[static_cast<std::size_t>(lb)] = pa;
  };

  Circuit out;
  out.n_qubits = n;
  bool touched = false;
  for (const Gate& g : circuit.gates) {
    if (!g.is_two_qubit()) {
      Gate mapped = g;
      mapped.q0 = phys[static_cast<std::size_t>(g.q0)];
      touched |= mapped.q0 != g.q0;
      out.push(mapped);
      continue;
    }
    int pa = phys[static_cast<std::size_t>(g.q0)];
    int pb = phys[static_cast<std::size_t>(g.q1)];
    if (!has_edge(coupling, pa, pb)) {
      touched = true;
      const auto path = bfs_path(coupling, n, pa, pb);
      // walk the control end of the gate down the path until adjacent
      for (std::size_t i = 0; i + 2 < path.size(); ++i) {
        out.push(Gate::swap(path[i], path[i + 1]));
        swap_physical(path[i], path[i + 1]);
      }
      pa = phys[static_cast<std::size_t>(g.q0)];
      pb = phys[static_cast<std::size_t>(g.q1)];
    }
    Gate mapped = g;
    mapped.q0 = pa;
    mapped.q1 = pb;
    touched |= pa != g.q0 || pb != g.q1;
    out.push(mapped);
  }

  if (!touched && n == circuit.n_qubits) {
    return {circuit, std::vector<int>(phys.begin(),
                                      phys.begin() + circuit.n_qubits)};
  }
  return {std::move(out),
          std::vector<int>(phys.begin(), phys.begin() + circuit.n_qubits)};
}

namespace {

// measured physical index -> logical index under layout[logical]=physical;
// wires not named by the layout are marginalized out
RealVector unpermute(const RealVector& physical,
                     const std::vector<int>& layout) {
  const int n = static_cast<int>(layout.size());
  if (physical.size() < state_count(n)) {
    throw std::invalid_argument("undo_layout: size mismatch");
  }
  RealVector logical = RealVector::Zero(state_count(n));
  for (Index y = 0; y < physical.size(); ++y) {
    Index x = 0;
    for (int q = 0; q < n; ++q) {
      if ((y >> layout[static_cast<std::size_t>(q)]) & 1) x |= Index(1) << q;
    }
    logical(x) += physical(y);
  }
  return logical;
}

}  // namespace

ProbabilityDistribution undo_layout(const ProbabilityDistribution& physical,
                                    const std::vector<int>& layout) {
  return ProbabilityDistribution(unpermute(physical.probs(), layout));
}

CountVector undo_layout(const CountVector& physical,
                        const std::vector<int>& layout) {
  return CountVector(unpermute(physical.counts(), layout));
}

int cnot_count(const Circuit& circuit) {
  int count = 0;
  for (const Gate& g : circuit.gates) {
    if (g.kind == GateKind::CNOT) count += 1;
    if (g.kind == GateKind::SWAP) count += 3;
  }
  return count;
}

}  // namespace qcbm
