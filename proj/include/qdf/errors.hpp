#pragma once

#include <stdexcept>
#include <string>

namespace qdf {

// Malformed input files. Maps to exit code 1.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Numerical failures (indefinite ERI matrix, eigensolver, failed checks). Exit code 2.
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotPositiveSemidefinite : NumericError {
    using NumericError::NumericError;
};

// Bad arguments or configuration. Exit code 3.
struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

} // namespace qdf
