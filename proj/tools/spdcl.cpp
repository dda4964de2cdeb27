#include "spdcl/cli.hpp"

int main(int argc, char** argv) { return spdcl::run_cli(argc, argv); }
