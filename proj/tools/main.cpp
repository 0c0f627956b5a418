#include "burgers1d/cli.hpp"

int main(int argc, char** argv) { return burgers1d::cli::cli_main(argc, argv); }
