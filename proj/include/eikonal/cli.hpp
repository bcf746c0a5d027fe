#ifndef EIKONAL_CLI_HPP
#define EIKONAL_CLI_HPP

#include <iosfwd>
#include <vector>

#include "eikonal/io.hpp"

namespace eik {

enum ExitCode { kExitOk = 0, kExitInput = 1, kExitInvariant = 2 };

/** Runs one configured subcommand; fills the envelope and returns the exit code. */
int run(const RunConfig& config, ResultEnvelope& envelope, std::ostream& out);

/** Parses argv, runs, writes --json/--svg outputs. Never throws. */
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace eik

#endif
