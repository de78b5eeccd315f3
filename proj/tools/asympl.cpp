#include "asympl/cli.hpp"

int main(int argc, char** argv) { return asympl::run_cli(argc, argv); }
