#include "twostar/cli.hpp"

int main(int argc, char** argv) { return twostar::cli::run_cli(argc, argv); }
