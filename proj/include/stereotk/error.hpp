#pragma once

#include <stdexcept>
#include <string>

namespace stereotk {

// File could not be opened, read or written.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// File opened fine but its contents are malformed or unsupported.
struct FormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An operation was called with invalid parameters.
struct ParamError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

} // namespace stereotk
