#include "cobarlab/cli.hpp"

int main(int argc, char** argv) { return cobarlab::run_cli(argc, argv); }
