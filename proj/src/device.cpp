#include "qcbm/device.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace qcbm {

namespace {

NoiseModel uniform_noise(int n_qubits, Real p01, Real p10, Real d1, Real d2) {
  NoiseModel m;
  m.readout.assign(static_cast<std::size_t>(n_qubits), {p01, p10});
  m.depol_1q = d1;
  m.depol_2q = d2;
  return m;
}

const std::vector<std::pair<int, int>> kLine = {{0, 1}, {1, 2}, {2, 3}};
const std::vector<std::pair<int, int>> kStar = {{0, 1}, {0, 2}, {0, 3}};

}  // namespace

bool has_edge(const std::vector<std::pair<int, int>>& coupling, int a, int b) {
  return std::any_of(coupling.begin(), coupling.end(), [&](const auto& e) {
    return (e.first == a && e.second == b) || (e.first == b && e.second == a);
  });
}

bool coupling_connected(const std::vector<std::pair<int, int>>& coupling,
                        int n_qubits) {
  if (n_qubits <= 1) return true;
  std::vector<int> stack = {0};
  std::vector<bool> seen(static_cast<std::size_t>(n_qubits), false);
  seen[0] = true;
  int reached = 1;
  while (!stack.empty()) {
    const int q = stack.back();
    stack.pop_back();
    for (const auto& [a, b] : coupling) {
      const int other = a == q ? b : (b == q ? a : -1);
      if (other >= 0 && other < n_qubits && !seen[static_cast<std::size_t>(other)]) {
        seen[static_cast<std::size_t>(other)] = true;
        ++reached;
        stack.push_back(other);
      }
    }
  }
  return reached == n_qubits;
}

void DeviceProfile::validate() const {
  if (n_qubits < 1) throw std::domain_error("DeviceProfile: no qubits");
  for (const auto& [a, b] : coupling) {
    if (a == b || a < 0 || b < 0 || a >= n_qubits || b >= n_qubits) {
      throw std::invalid_argument("DeviceProfile: bad coupling edge");
    }
  }
  if (!coupling_connected(coupling, n_qubits)) {
    throw std::invalid_argument("DeviceProfile: coupling graph disconnected");
  }
  noise.validate(n_qubits);
}

DeviceProfile device_preset(const std::string& name) {
  DeviceProfile d;
  d.name = name;
  d.n_qubits = 4;
  // 0->1 flips at P_B chosen so the exact hardware-AEM diagonal at |0000>
  // is (1 - p01)^4 = 0.936; 1->0 flips run about twice as hot.
  if (name == "P_A") {
    d.coupling = kLine;
    d.noise = uniform_noise(4, 0.022, 0.040, 0.0015, 0.012);
  } else if (name == "P_B") {
    d.coupling = kLine;
    d.noise = uniform_noise(4, 0.0164, 0.0328, 0.001, 0.01);
  } else if (name == "T_0") {
    d.coupling = kStar;
    d.noise = uniform_noise(4, 0.013, 0.026, 0.001, 0.009);
  } else if (name == "T_1") {
    d.coupling = kStar;
    d.noise = uniform_noise(4, 0.018, 0.035, 0.0012, 0.011);
  } else if (name == "valencia") {
    d.coupling = kStar;
    d.noise = uniform_noise(4, 0.015, 0.030, 0.001, 0.008);
  } else if (name == "noiseless") {
    d.coupling = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
    d.noise = NoiseModel::none(4);
  } else {
    throw std::invalid_argument("unknown device preset: " + name);
  }
  d.validate();
  return d;
}

std::vector<std::string> device_preset_names() {
  return {"P_A", "P_B", "T_0", "T_1", "valencia", "noiseless"};
}

}  // namespace qcbm
