#pragma once

#include <stdexcept>
#include <string>

namespace ribbonlim {

// Bad user-supplied data: config keys, malformed files, violated preconditions.
// The CLI maps this to exit code 1.
struct InputError : std::runtime_error {
    explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

// Failure inside an algorithm (non-convergence, degenerate intermediate data).
// Messages are module-qualified ("module.operation: ..."). CLI exit code 2.
struct NumericalError : std::runtime_error {
    explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace ribbonlim
