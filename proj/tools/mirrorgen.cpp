#include "mirrorgen/cli.hpp"

int main(int argc, char **argv) { return mirrorgen::cli::run(argc, argv); }
