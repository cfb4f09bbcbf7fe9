#include "dynemb/cli.hpp"

int main(int argc, char** argv) { return dynemb::run_cli(argc, argv); }
