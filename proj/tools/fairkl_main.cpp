#include "fairkl/cli.hpp"

int main(int argc, char** argv) { return fairkl::run_cli(argc, argv); }
