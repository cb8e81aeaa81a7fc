#include "balanced/cli.hpp"

int main(int argc, char** argv) { return balanced::cli_main(argc, argv); }
