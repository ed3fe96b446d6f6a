#include "cli.hpp"

int main(int argc, char** argv) { return predt::run_cli(argc, argv); }
