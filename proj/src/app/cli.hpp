#pragma once

#include <ostream>

namespace irgrowth::app {

// Parses arguments, runs the selected subcommand and returns the exit status.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace irgrowth::app
