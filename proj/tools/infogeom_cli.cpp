#include "infogeom/cli.hpp"

int main(int argc, char** argv) { return infogeom::run_cli(argc, argv); }
