#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qcbm/simulator.hpp"

namespace qcbm {

// Named stand-in for a hardware qubit subset: coupling graph plus noise.
struct DeviceProfile {
  std::string name;
  int n_qubits = 4;
  std::vector<std::pair<int, int>> coupling;  // undirected edges
  NoiseModel noise;

  void validate() const;  // coupling must be connected
};

bool coupling_connected(const std::vector<std::pair<int, int>>& coupling,
                        int n_qubits);
bool has_edge(const std::vector<std::pair<int, int>>& coupling, int a, int b);

// Presets P_A, P_B (line coupling) and T_0, T_1, valencia (degree-3 star).
// P_B readout flips are ~1.64%/qubit so that the exact hardware-class
// calibration matrix has diagonal 0.936 at |0000>.
DeviceProfile device_preset(const std::string& name);
std::vector<std::string> device_preset_names();

}  // namespace qcbm
