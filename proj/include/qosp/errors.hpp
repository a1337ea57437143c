#pragma once

#include <stdexcept>
#include <string>

namespace qosp {

// Bad argument values (dimension mismatches, out-of-range indices, ...).
struct InvalidParameter : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A computation failed to meet its numerical contract (residuals, definiteness).
struct NumericalFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Request exceeds a hard size guard (qubit counts, subset counts).
struct ResourceLimit : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Caller broke a documented precondition that is a logic error, not a data error.
struct ContractViolation : std::logic_error {
    using std::logic_error::logic_error;
};

struct IoError : std::runtime_error {
    IoError(const std::string& what, const std::string& path)
        : std::runtime_error(what + ": " + path), path(path) {}
    std::string path;
};

}  // namespace qosp
