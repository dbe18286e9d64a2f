#include "escdim/cli.hpp"

int main(int argc, char** argv) { return escdim::run_cli(argc, argv); }
