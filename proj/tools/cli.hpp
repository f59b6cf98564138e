#pragma once

#include <ostream>

namespace icc::cli {

enum ExitCode : int {
    kOk = 0,
    kUsage = 1,
    kIo = 2,
    kData = 3,
    kDegenerate = 4,
};

/// Entry point of the `icc` tool; all output goes to the given streams.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace icc::cli
