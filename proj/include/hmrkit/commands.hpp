#pragma once

#include "hmrkit/error.hpp"
#include "hmrkit/json_io.hpp"

#include <string>
#include <vector>

namespace hmrkit {

// HMRKIT_FIXTURES if set, else the directory shipped with the sources.
std::string fixture_dir();

std::vector<std::string> command_names();

// Report for one subcommand; module failures propagate as hmrkit::Error.
Json run_command(const std::string& command, const Json& params);

Json error_object(ErrorCode code, const std::string& message);

// Runs every case of <dir>/reference_examples.json and compares the selected report fields.
Json fixtures_selftest(const std::string& dir);

}
