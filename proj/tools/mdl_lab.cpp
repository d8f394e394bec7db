#include "mdl/experiments/cli.hpp"

int main(int argc, char** argv) { return mdl::cli_main(argc, argv); }
