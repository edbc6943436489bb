#pragma once

namespace infogeom {

// Entry point shared by the binary and the CLI tests.
int run_cli(int argc, const char* const* argv);

}  // namespace infogeom
