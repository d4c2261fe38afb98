#include "kinval/cli.hpp"

int main(int argc, char** argv) { return kinval::run_cli(argc, argv); }
