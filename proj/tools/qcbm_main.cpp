#include "qcbm/harness/cli.hpp"

int main(int argc, char** argv) { return qcbm::run_cli(argc, argv); }
