#pragma once

#include <stdexcept>
#include <string>

namespace newstraject {

// Bad invocation: unknown flags or subcommands.          Exit code 1.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Invalid data: malformed records, constraint violations. Exit code 2.
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Filesystem trouble: missing or unwritable paths.        Exit code 3.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace newstraject
