#pragma once

#include <string>
#include <vector>

namespace qcbm {

// Entry point behind the qcbm binary: calibrate, train, evaluate, report,
// targets. Returns the process exit status.
int run_cli(const std::vector<std::string>& args);
int run_cli(int argc, char** argv);

}  // namespace qcbm
