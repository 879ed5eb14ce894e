#include "b2/cli.hpp"

int main(int argc, char** argv) { return b2::run_cli(argc, argv); }
