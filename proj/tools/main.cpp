#include "otdp/cli.hpp"

int main(int argc, char** argv) { return otdp::run_cli(argc, argv); }
