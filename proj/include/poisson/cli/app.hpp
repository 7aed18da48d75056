#pragma once

#include <string>
#include <vector>

namespace poisson::cli {

enum ExitCode : int {
    kPass = 0,
    kFail = 1,        ///< mathematical failure, witnesses in the report
    kInputError = 2,  ///< unreadable file, parse error, invalid arguments
    kInternal = 3,    ///< two constructions that must agree did not
};

struct CommandResult {
    int code = kPass;
    std::string out;
    std::string err;
};

/// Runs one command line (without the program name), e.g.
/// {"reduce", "problem.txt", "--seed", "3", "--machine"}.
CommandResult run_command(const std::vector<std::string>& args);

}  // namespace poisson::cli
