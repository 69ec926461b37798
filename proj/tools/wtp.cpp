#include "wtp/cli.hpp"

int main(int argc, char** argv) { return wtp::run_cli(argc, argv); }
