#include "sumprodlab/cli.hpp"

int main(int argc, char** argv) { return sumprodlab::run_cli(argc, argv); }
