#include "dtregge/cli.hpp"

int main(int argc, char** argv) { return dtregge::run_cli(argc, argv); }
