#include "qetsim/cli.hpp"

int main(int argc, char** argv) { return qetsim::run_cli(argc, argv); }
